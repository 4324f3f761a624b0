"""Randomized and grid verifiers for the geometric facts behind the bounds.

Three families of checks live here:

* horoball chains: constructively sampled concatenations of horospherical
  geodesics (length > 2.5) and connecting geodesics meeting consecutive
  horospheres orthogonally.  The checker confirms the shadow-containment
  invariant (every later ideal point projects within 1/2 of the first exit
  point) and that the concatenation never closes up.
* half-space facts: shadows of disjoint horoballs are intrinsic disks of
  radius at most 1/2, and geodesics whose projections are at intrinsic
  distance at least 2 must cross the horosphere.
* flat facts: the minimal area among flat tori of injectivity radius r is
  2 sqrt(3) r^2 (reduced-domain grid scan), and a hyperbolic surface cusp
  has area equal to its boundary length.

All randomness flows from a single master seed through a splitmix64
derivation, so every campaign is a pure function of (trials, seed); trials
are independent and reports combine through sums and minima only.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

import numpy as np

from .cusp import CuspShape, injectivity_radius, torus_area
from .errors import NonPositiveInput, SamplingExhausted
from .halfspace import (
    INFINITY,
    Geodesic,
    Horosphere,
    IdealPoint,
    Isometry,
    Point3,
    _max_height_on_segment,
    apply_isometry,
    geodesic_meets_horosphere,
    horo_distance,
    horo_project,
    horoballs_disjoint,
    hyp_distance,
    normalize_to_plane,
    shadow,
)

__all__ = [
    "ChainConfig",
    "TrialReport",
    "sample_chain",
    "check_chain",
    "validate_chain",
    "lemma_campaign",
    "fact1_sweep",
    "fact2_sweep",
    "run_campaign",
    "min_torus_area_scan",
    "torus_area_suite",
    "surface_cusp_check",
    "cusp_area_suite",
]

MASK64 = (1 << 64) - 1

# Check tolerances: shadow containment and the inductive distance-2 gate
# allow 1e-9 slack; the no-loop check demands separation beyond 1e-6.
CHECK_TOL = 1e-9
SEPARATION_TOL = 1e-6

ALPHA_THRESHOLD = 2.5
MAX_STEP_REJECTIONS = 1000

TWO_SQRT3 = 2.0 * math.sqrt(3.0)


def _splitmix64(master: int, count: int) -> Iterator[int]:
    """Deterministic 64-bit seed stream (splitmix64 mix of a golden-ratio
    counter), used to hand every trial its own rng seed."""
    x = master & MASK64
    for _ in range(count):
        x = (x + 0x9E3779B97F4A7C15) & MASK64
        z = x
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        yield (z ^ (z >> 31)) & MASK64


@dataclass(frozen=True, slots=True)
class TrialReport:
    """Outcome of a verification campaign.

    wall_ms is serialization metadata only; it never participates in
    equality, so determinism contracts compare everything else.
    """

    trials: int
    failures: int
    worst_margin: float
    seed: int
    wall_ms: float = field(default=0.0, compare=False)

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "failures": self.failures,
            "worst_margin": self.worst_margin,
            "seed": self.seed,
            "wall_ms": self.wall_ms,
        }


@dataclass(frozen=True, slots=True)
class ChainConfig:
    """A horoball chain H_0..H_m with its marked points.

    entries[i] is the point x_i where the connecting geodesic lands on H_i
    (x_0 is the start of the first horospherical geodesic); exits[i] is the
    point y_i where the horospherical geodesic on H_i ends, i < m.  The
    connecting geodesic beta_i runs from y_i to x_{i+1} along the geodesic
    joining the ideal points p_i, p_{i+1}, hence meets both horospheres
    orthogonally.
    """

    horospheres: tuple[Horosphere, ...]
    ideal_points: tuple[IdealPoint, ...]
    entries: tuple[Point3, ...]
    exits: tuple[Point3, ...]
    alpha_lengths: tuple[float, ...]

    @property
    def segments(self) -> int:
        return len(self.exits)

    @property
    def betas(self) -> tuple[Geodesic, ...]:
        return tuple(
            Geodesic(self.ideal_points[i], self.ideal_points[i + 1])
            for i in range(self.segments)
        )


def _build_chain(
    start: complex, steps: Iterable[tuple[float, float, float]]
) -> ChainConfig:
    """Assemble a chain from explicit per-step draws, without rejection.

    Each step is (direction, alpha_length, next_diameter), interpreted in
    the chart where the current horosphere is the height-1 plane.  Useful
    for constructing chains by hand, including ones that violate the
    length hypothesis on purpose.
    """
    chain = ChainConfig(
        (Horosphere(INFINITY, 1.0),), (INFINITY,), (Point3(start, 1.0),), (), ()
    )
    for theta, alpha_len, diameter in steps:
        chain = _extend_chain(chain, theta, alpha_len, diameter)
    return chain


def sample_chain(segments: int, min_alpha: float = ALPHA_THRESHOLD, seed: int = 0) -> ChainConfig:
    """Sample a valid chain with the given number of alpha/beta segments.

    Construction is chart-local: on each horosphere, pick a direction and a
    horospherical length in (min_alpha, min_alpha + 5), drop a vertical to
    the next ideal point and hang a sphere of diameter in (0.05, 1) there.
    Diameters below 1 make consecutive horoballs disjoint by construction;
    a step is rejected and redrawn when the new horoball fails to stay
    clear of the two reference horoballs H_0 and H_1 that the checker
    projects onto.  SamplingExhausted signals 1000 rejections at one step.
    """
    if segments < 1:
        raise NonPositiveInput(f"segments must be >= 1, got {segments}")
    if min_alpha <= 0.0:
        raise NonPositiveInput("min_alpha must be positive")
    rng = np.random.default_rng(seed & MASK64)
    start = complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))

    chain = _build_chain(start, [])
    for _ in range(segments):
        for _attempt in range(MAX_STEP_REJECTIONS):
            theta = rng.uniform(0.0, 2.0 * math.pi)
            alpha_len = rng.uniform(min_alpha, min_alpha + 5.0)
            diameter = rng.uniform(0.05, 1.0)
            candidate = _extend_chain(chain, theta, alpha_len, diameter)
            new_ball = candidate.horospheres[-1]
            references = candidate.horospheres[:2]
            if all(
                horoballs_disjoint(ref, new_ball)
                for ref in references
                if ref is not new_ball
            ):
                chain = candidate
                break
        else:
            raise SamplingExhausted(
                f"no disjoint continuation found after {MAX_STEP_REJECTIONS} draws"
            )
    return chain


def _extend_chain(chain: ChainConfig, theta: float, alpha_len: float, diameter: float) -> ChainConfig:
    current = chain.horospheres[-1]
    to_chart = normalize_to_plane(current)
    from_chart = to_chart.inverse()
    x_chart = apply_isometry(to_chart, chain.entries[-1])
    y_chart = Point3(x_chart.z + alpha_len * complex(math.cos(theta), math.sin(theta)), 1.0)
    foot = IdealPoint(y_chart.z)
    return ChainConfig(
        chain.horospheres + (apply_isometry(from_chart, Horosphere(foot, diameter)),),
        chain.ideal_points + (apply_isometry(from_chart, foot),),
        chain.entries + (apply_isometry(from_chart, Point3(y_chart.z, diameter)),),
        chain.exits + (apply_isometry(from_chart, y_chart),),
        chain.alpha_lengths + (alpha_len,),
    )


def validate_chain(chain: ChainConfig, min_alpha: float = ALPHA_THRESHOLD) -> list[str]:
    """Re-check the chain invariants with the kernel predicates; returns a
    list of violation messages (empty when the chain is valid)."""
    problems = []
    m = chain.segments
    for i in range(m):
        h_here, h_next = chain.horospheres[i], chain.horospheres[i + 1]
        if not horoballs_disjoint(h_here, h_next):
            problems.append(f"horoballs {i} and {i + 1} are not disjoint")
        length = horo_distance(h_here, chain.entries[i], chain.exits[i])
        if not (length > min_alpha):
            problems.append(f"alpha_{i} has length {length} <= {min_alpha}")
        if abs(length - chain.alpha_lengths[i]) > 1e-6:
            problems.append(f"alpha_{i} stored length differs: {length}")
        # Orthogonality of beta_i at both ends: the marked points must be
        # the entry points of the geodesic joining the ideal points.
        y_expected = horo_project(chain.ideal_points[i + 1], h_here)
        if hyp_distance(y_expected, chain.exits[i]) > 1e-6:
            problems.append(f"beta_{i} does not leave H_{i} orthogonally at y_{i}")
        x_expected = horo_project(chain.ideal_points[i], h_next)
        if hyp_distance(x_expected, chain.entries[i + 1]) > 1e-6:
            problems.append(f"beta_{i} does not meet H_{i + 1} orthogonally at x_{i + 1}")
    return problems


def check_chain(chain: ChainConfig, seed: int = 0) -> TrialReport:
    """Verify the shadow-containment and no-loop conclusions on one chain.

    Checks, for every i >= 1, that the ideal point p_i projects onto H_0
    within 1/2 of y_0; for chains with at least two segments, that the
    projections of p_0 and p_{i+1} onto H_1 stay at distance >= 2 (the
    quantity the induction feeds to the crossing criterion); and that the
    concatenation's endpoint is separated from its start.  Failures are
    counted, never raised; worst_margin is the minimal slack seen.
    """
    started = time.perf_counter()
    h0, y0 = chain.horospheres[0], chain.exits[0]
    m = chain.segments
    failures = 0
    margins = []
    for i in range(1, m + 1):
        dist = horo_distance(h0, horo_project(chain.ideal_points[i], h0), y0)
        margins.append(0.5 + CHECK_TOL - dist)
        if dist > 0.5 + CHECK_TOL:
            failures += 1
    if m >= 2:
        h1 = chain.horospheres[1]
        anchor = horo_project(chain.ideal_points[0], h1)
        for i in range(2, m + 1):
            dist = horo_distance(h1, anchor, horo_project(chain.ideal_points[i], h1))
            margins.append(dist - (2.0 - CHECK_TOL))
            if dist < 2.0 - CHECK_TOL:
                failures += 1
    separation = hyp_distance(chain.entries[0], chain.entries[-1])
    margins.append(separation - SEPARATION_TOL)
    if separation <= SEPARATION_TOL:
        failures += 1
    return TrialReport(
        trials=1,
        failures=failures,
        worst_margin=min(margins),
        seed=seed & MASK64,
        wall_ms=(time.perf_counter() - started) * 1e3,
    )


def lemma_campaign(
    trials: int,
    seed: int = 0,
    min_alpha: float = ALPHA_THRESHOLD,
    max_segments: int = 10,
) -> TrialReport:
    """Sample-and-check campaign over chains with 1..max_segments segments.

    Besides the chain checks, every chain must satisfy the base-case
    identity exactly: p_1 projects onto H_0 at y_0 (within 1e-9), because
    y_0 lies on the geodesic joining p_0 and p_1.
    """
    if trials < 1:
        raise NonPositiveInput(f"trials must be >= 1, got {trials}")
    started = time.perf_counter()
    failures = 0
    worst = math.inf
    for sub in _splitmix64(seed, trials):
        segments = 1 + sub % max_segments
        chain = sample_chain(segments, min_alpha, seed=sub)
        base = horo_distance(
            chain.horospheres[0],
            horo_project(chain.ideal_points[1], chain.horospheres[0]),
            chain.exits[0],
        )
        if base > CHECK_TOL:
            failures += 1
        report = check_chain(chain, seed=sub)
        failures += report.failures
        worst = min(worst, report.worst_margin)
    return TrialReport(
        trials=trials,
        failures=failures,
        worst_margin=worst,
        seed=seed & MASK64,
        wall_ms=(time.perf_counter() - started) * 1e3,
    )


def _random_reference(rng: np.random.Generator) -> Horosphere:
    if rng.uniform() < 0.5:
        return Horosphere(INFINITY, rng.uniform(0.5, 2.0))
    base = complex(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))
    return Horosphere(IdealPoint(base), rng.uniform(0.5, 2.0))


def fact1_sweep(trials: int, seed: int = 0, points_per_pair: int = 36) -> TrialReport:
    """Shadow sweep: disjoint pairs (reference horosphere, horoball).

    For each pair the reported shadow must be an intrinsic disk of radius
    at most 1/2 containing the projection of every sampled point of the
    horoball, and some sampled point must project within 1e-6 of the disk
    boundary.  The sample always includes points on the horoball's widest
    circle, which realizes the boundary.
    """
    if trials < 1:
        raise NonPositiveInput(f"trials must be >= 1, got {trials}")
    started = time.perf_counter()
    failures = 0
    worst = math.inf
    equator_points = max(2, points_per_pair // 8)
    for sub in _splitmix64(seed, trials):
        rng = np.random.default_rng(sub)
        reference = _random_reference(rng)
        from_chart = normalize_to_plane(reference).inverse()
        base = complex(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0))
        diameter = rng.uniform(0.05, 1.0)
        ball = apply_isometry(from_chart, Horosphere(IdealPoint(base), diameter))

        center, radius = shadow(reference, ball)
        if radius > 0.5 + CHECK_TOL:
            failures += 1
        worst = min(worst, 0.5 + CHECK_TOL - radius)

        reach = 0.0
        for k in range(points_per_pair):
            if k < equator_points:
                psi = math.pi / 2.0  # widest circle, realizes the boundary
            else:
                psi = rng.uniform(0.05, math.pi - 0.05)
            phi = rng.uniform(0.0, 2.0 * math.pi)
            offset = 0.5 * diameter * math.sin(psi)
            height = 0.5 * diameter * (1.0 + math.cos(psi))
            chart_pt = Point3(base + offset * complex(math.cos(phi), math.sin(phi)), height)
            sample = apply_isometry(from_chart, chart_pt)
            dist = horo_distance(reference, horo_project(sample, reference), center)
            if dist > radius + CHECK_TOL:
                failures += 1
            worst = min(worst, radius + CHECK_TOL - dist)
            reach = max(reach, dist)
        if radius - reach > 1e-6:
            failures += 1
        worst = min(worst, 1e-6 - (radius - reach))
    return TrialReport(
        trials=trials,
        failures=failures,
        worst_margin=worst,
        seed=seed & MASK64,
        wall_ms=(time.perf_counter() - started) * 1e3,
    )


def fact2_sweep(trials: int, seed: int = 0) -> TrialReport:
    """Crossing sweep: pairs outside a horosphere whose projections are at
    intrinsic distance >= 2 must span a geodesic meeting the horosphere."""
    if trials < 1:
        raise NonPositiveInput(f"trials must be >= 1, got {trials}")
    started = time.perf_counter()
    failures = 0
    worst = math.inf
    for sub in _splitmix64(seed, trials):
        rng = np.random.default_rng(sub)
        reference = _random_reference(rng)
        from_chart = normalize_to_plane(reference).inverse()
        z_x = complex(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0))
        t_x = rng.uniform(0.05, 1.0)
        gap = rng.uniform(2.0, 6.0)
        phi = rng.uniform(0.0, 2.0 * math.pi)
        z_y = z_x + gap * complex(math.cos(phi), math.sin(phi))
        make_ideal = rng.uniform() < 0.1
        t_y = 0.0 if make_ideal else rng.uniform(0.05, 1.0)

        x = apply_isometry(from_chart, Point3(z_x, t_x))
        y = apply_isometry(
            from_chart, IdealPoint(z_y) if make_ideal else Point3(z_y, t_y)
        )
        if not geodesic_meets_horosphere(x, y, reference):
            failures += 1
        worst = min(
            worst, _max_height_on_segment(z_x, t_x, z_y, t_y) - (1.0 - CHECK_TOL)
        )
    return TrialReport(
        trials=trials,
        failures=failures,
        worst_margin=worst,
        seed=seed & MASK64,
        wall_ms=(time.perf_counter() - started) * 1e3,
    )


def run_campaign(trials: int, seed: int = 0) -> TrialReport:
    """Chain campaign plus both half-space fact sweeps, one joint report.

    Identical (trials, seed) yield identical reports; wall_ms is the only
    field that varies between reruns.
    """
    if trials < 1:
        raise NonPositiveInput(f"trials must be >= 1, got {trials}")
    started = time.perf_counter()
    lemma_seed, f1_seed, f2_seed = _splitmix64(seed ^ 0xC0FFEE, 3)
    parts = [
        lemma_campaign(trials, lemma_seed),
        fact1_sweep(trials, f1_seed),
        fact2_sweep(trials, f2_seed),
    ]
    return TrialReport(
        trials=trials,
        failures=sum(p.failures for p in parts),
        worst_margin=min(p.worst_margin for p in parts),
        seed=seed & MASK64,
        wall_ms=(time.perf_counter() - started) * 1e3,
    )


def min_torus_area_scan(r: float, grid: int = 300) -> float:
    """Minimal flat-torus area over the reduced moduli domain, at
    injectivity radius exactly r.

    Bases tau_alpha = 2r, tau_beta = 2r (x + i y) with x in [-1/2, 1/2] and
    |x + i y| >= 1 cover every flat torus once; each column of the mesh
    starts on the unit circle, so the hexagonal point (+-1/2, sqrt(3)/2),
    where the minimum 2 sqrt(3) r^2 is attained, is a mesh point.
    """
    if r <= 0.0:
        raise NonPositiveInput(f"radius must be positive, got {r}")
    if grid < 100:
        raise ValueError(f"grid must be at least 100, got {grid}")
    side = 2.0 * r
    best = math.inf
    for x in np.linspace(-0.5, 0.5, grid):
        x = float(x)
        floor = math.sqrt(1.0 - x * x)
        for y in np.linspace(floor, 2.0, grid):
            shape = CuspShape(side, side * complex(x, float(y)), 1.0)
            scale = r / injectivity_radius(shape)
            area = torus_area(shape) * scale * scale
            if area < best:
                best = area
    return best


def torus_area_suite(
    grid: int = 300, radii: tuple[float, ...] = (0.25, 0.5, 1.0), seed: int = 0
) -> TrialReport:
    """Scan every radius and check the 2 sqrt(3) r^2 floor and the
    hexagonal equality (within 1e-6 and 1e-4 respectively)."""
    started = time.perf_counter()
    failures = 0
    worst = math.inf
    for r in radii:
        smallest = min_torus_area_scan(r, grid)
        target = TWO_SQRT3 * r * r
        if smallest < target - 1e-6:
            failures += 1
        if abs(smallest - target) > 1e-4:
            failures += 1
        worst = min(worst, smallest - target + 1e-6, 1e-4 - abs(smallest - target))
    return TrialReport(
        trials=len(radii),
        failures=failures,
        worst_margin=worst,
        seed=seed & MASK64,
        wall_ms=(time.perf_counter() - started) * 1e3,
    )


def surface_cusp_check(boundary_length: float, height: float = 1.0) -> tuple[float, float]:
    """Cusp area versus boundary length on a hyperbolic surface.

    Models the cusp as {Im w >= h} / (w -> w + c) with c/h equal to the
    requested boundary length.  The area integral of dx dy / y^2 evaluates
    to c * (1/h) through the antiderivative -1/y; the horocyclic boundary
    at height h has flat length c/h.  The two routes must agree to 1e-12.
    """
    if boundary_length <= 0.0:
        raise NonPositiveInput("boundary length must be positive")
    if height <= 0.0:
        raise NonPositiveInput("height must be positive")
    width = boundary_length * height
    area = width * (1.0 / height)
    length = width / height
    return area, length


def cusp_area_suite(trials: int, seed: int = 0) -> TrialReport:
    """Random-input sweep of the cusp area/boundary-length identity."""
    if trials < 1:
        raise NonPositiveInput(f"trials must be >= 1, got {trials}")
    started = time.perf_counter()
    rng = np.random.default_rng(seed & MASK64)
    failures = 0
    worst = math.inf
    for _ in range(trials):
        boundary = rng.uniform(0.0, 100.0)
        while boundary <= 0.0:
            boundary = rng.uniform(0.0, 100.0)
        height = rng.uniform(0.5, 2.0)
        area, length = surface_cusp_check(boundary, height)
        gap = abs(area - length)
        if gap > 1e-12:
            failures += 1
        worst = min(worst, 1e-12 - gap)
    return TrialReport(
        trials=trials,
        failures=failures,
        worst_margin=worst,
        seed=seed & MASK64,
        wall_ms=(time.perf_counter() - started) * 1e3,
    )
