"""Length windows for the core geodesic after high-power twist filling.

The quantitative chain goes: a Margulis constant pick fixes a floor r_eps
for the cusp-torus injectivity radius; flat-length caps on the two basis
curves squeeze the normalized length L of the filling slope n*alpha + beta
into an explicit window; once L clears the universal Dehn-filling gate
L >= 7.823 (Hodgson-Kerckhoff, with the Futer-Purcell-Schleimer constants
16.17 and 28.78), the filled metric exists and the core geodesic length
lies in (2 pi / (L^2 + 16.17), 2 pi / (L^2 - 28.78)).

Intervals are evaluated in round-to-nearest double arithmetic and are not
certified enclosures; ``BoundInterval.widened`` pads each endpoint by a few
ulps for conservative reporting.  The filling-gate constants are stored
exactly as published decimals and never re-derived.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .cusp import CuspShape, injectivity_radius, normalized_length, twist_slope
from .errors import (
    GenusTooSmall,
    InvalidShape,
    NormalizedLengthTooShort,
    OutOfSimplifiedRange,
    TwistPowerTooSmall,
)

__all__ = [
    "GATE_NORMALIZED_LENGTH",
    "MargulisChoice",
    "BoundInterval",
    "TheoremInput",
    "Report",
    "margulis",
    "hk_window",
    "min_admissible_twist",
    "worst_case_l_squared",
    "theorem_bounds",
    "intro_bounds",
    "proposition_caps",
    "pipeline",
]

# Filling-theorem constants, as published.
GATE_NORMALIZED_LENGTH = 7.823
LOWER_SHIFT = 16.17
UPPER_SHIFT = 28.78

# Simplified-interval coefficients (genus >= 3, n >= 14 only).
INTRO_LOWER_COEFF = 0.7
INTRO_UPPER_COEFF = 34.3

TWO_PI = 2.0 * math.pi
TWO_SQRT3 = 2.0 * math.sqrt(3.0)


@dataclass(frozen=True, slots=True)
class MargulisChoice:
    """Margulis constant and the induced injectivity-radius floor.

    r_eps = 2 sinh(epsilon / 2) always; epsilon is ln 3 for genus >= 3 and
    2 asinh(2^(1/4) / 4) for genus 2.
    """

    genus: int
    epsilon: float
    r_eps: float

    def __post_init__(self):
        if self.genus < 2:
            raise GenusTooSmall(f"genus must be >= 2, got {self.genus}")
        if abs(self.r_eps - 2.0 * math.sinh(self.epsilon / 2.0)) > 1e-12:
            raise ValueError("r_eps must equal 2 sinh(epsilon / 2)")


@dataclass(frozen=True, slots=True)
class BoundInterval:
    """Open interval (lo, hi) certifying a geodesic-length window."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (0.0 < self.lo < self.hi):
            raise ValueError(f"invalid bound interval ({self.lo}, {self.hi})")

    def widened(self, ulps: int = 8) -> "BoundInterval":
        """Outward-rounded copy: each endpoint moved `ulps` steps away.

        The gate constants carry 4 significant digits, so this padding is
        cosmetic, but it makes double-rounding concerns moot."""
        lo, hi = self.lo, self.hi
        for _ in range(ulps):
            lo = math.nextafter(lo, -math.inf)
            hi = math.nextafter(hi, math.inf)
        return BoundInterval(lo, hi)


@dataclass(frozen=True, slots=True)
class TheoremInput:
    """Genus of the handlebody and power of the twist."""

    genus: int
    twist_power: int

    def __post_init__(self):
        if self.genus < 2:
            raise GenusTooSmall(f"genus must be >= 2, got {self.genus}")


def margulis(g: int) -> MargulisChoice:
    """Margulis constant choice for the given genus.

    For g >= 3 the first homology rank allows epsilon = ln 3, whence
    r_eps = 2 sinh(ln(3)/2) = 2/sqrt(3); for g = 2 the rank may drop and
    the safe pick gives r_eps = 2^(1/4) / 2.
    """
    if g < 2:
        raise GenusTooSmall(f"genus must be >= 2, got {g}")
    if g >= 3:
        eps = math.log(3.0)
        return MargulisChoice(g, eps, 2.0 * math.sinh(eps / 2.0))
    r = 2.0 ** 0.25 / 2.0
    return MargulisChoice(g, 2.0 * math.asinh(r / 2.0), r)


def _window_from_l_squared(l_sq_lo: float, l_sq_hi: float) -> BoundInterval:
    # Short normalized length -> long core geodesic, so the upper length
    # bound comes from l_sq_lo and the lower one from l_sq_hi.
    return BoundInterval(
        TWO_PI / (l_sq_hi + LOWER_SHIFT), TWO_PI / (l_sq_lo - UPPER_SHIFT)
    )


def hk_window(length: float) -> BoundInterval:
    """Core-length window of the universal filling theorem at normalized
    length L >= 7.823; raises NormalizedLengthTooShort below the gate."""
    if length < GATE_NORMALIZED_LENGTH:
        raise NormalizedLengthTooShort(
            f"normalized length {length} is below the filling gate "
            f"{GATE_NORMALIZED_LENGTH}; the theorem gives no conclusion"
        )
    l_sq = length * length
    return _window_from_l_squared(l_sq, l_sq)


def worst_case_l_squared(g: int, n: int) -> float:
    """Shape-free lower bound n^2 r/2.5 - 2n + 2.5/r for L(mu_n)^2.

    Monotone increasing in n past n = 5, since r/2.5 exceeds 1/n there for
    both genus classes."""
    r = margulis(g).r_eps
    return n * n * (r / 2.5) - 2.0 * n + 2.5 / r


def min_admissible_twist(g: int) -> int:
    """Least n >= 5 whose worst-case L^2 clears the filling gate.

    Evaluates to 14 for every g >= 3 and to 21 for g = 2."""
    gate_sq = GATE_NORMALIZED_LENGTH**2
    n = 5
    while worst_case_l_squared(g, n) <= gate_sq:
        n += 1
    return n


def proposition_caps(g: int) -> tuple[float, float]:
    """Flat-length caps (2 pi (g-1), 5) for the basis curves alpha, beta."""
    if g < 2:
        raise GenusTooSmall(f"genus must be >= 2, got {g}")
    return TWO_PI * (g - 1), 5.0


def _worst_case_l_squared_high(g: int, n: int) -> float:
    a_cap, b_cap = proposition_caps(g)
    r = margulis(g).r_eps
    return (n * a_cap + b_cap) ** 2 / (TWO_SQRT3 * r * r)


def theorem_bounds(inp: TheoremInput) -> BoundInterval:
    """Length window for the core geodesic from the shape-free estimates.

    lo = 2 pi / ((2 pi n (g-1) + 5)^2 / (2 sqrt(3) r^2) + 16.17)
    hi = 2 pi / (n^2 r / 2.5 - 2 n + 2.5 / r - 28.78)

    with r = r_eps(g).  Requires n >= min_admissible_twist(g), i.e. n >= 14
    for g >= 3 and n >= 21 for g = 2.
    """
    g, n = inp.genus, inp.twist_power
    min_n = min_admissible_twist(g)
    if n < min_n:
        raise TwistPowerTooSmall(
            f"twist power {n} below the least admissible {min_n} for genus {g}",
            min_n=min_n,
            report=_worst_case_report(inp),
        )
    return _window_from_l_squared(
        worst_case_l_squared(g, n), _worst_case_l_squared_high(g, n)
    )


def intro_bounds(inp: TheoremInput) -> BoundInterval:
    """Simplified window (0.7/(g^2 n^2), 34.3/n^2), valid for g >= 3 and
    n >= 14; the shape-free window is strictly inside it."""
    g, n = inp.genus, inp.twist_power
    if g < 3 or n < 14:
        raise OutOfSimplifiedRange(
            f"simplified interval needs genus >= 3 and n >= 14, got ({g}, {n})"
        )
    return BoundInterval(
        INTRO_LOWER_COEFF / (g * g * n * n), INTRO_UPPER_COEFF / (n * n)
    )


@dataclass(frozen=True, slots=True)
class Report:
    """Pipeline result; serializes to the stable JSON schema."""

    genus: int
    n: int
    epsilon: float
    r_eps: float
    mode: str  # "worst-case" | "shape"
    l_squared_lo: float
    l_squared_hi: float
    length_lo: Optional[float]
    length_hi: Optional[float]
    admissible: bool
    min_n: int

    def to_dict(self) -> dict:
        return {
            "genus": self.genus,
            "n": self.n,
            "epsilon": self.epsilon,
            "r_eps": self.r_eps,
            "mode": self.mode,
            "L_squared_lo": self.l_squared_lo,
            "L_squared_hi": self.l_squared_hi,
            "length_lo": self.length_lo,
            "length_hi": self.length_hi,
            "admissible": self.admissible,
            "min_n": self.min_n,
        }


def _worst_case_report(
    inp: TheoremInput, interval: Optional[BoundInterval] = None
) -> Report:
    choice = margulis(inp.genus)
    return Report(
        genus=inp.genus,
        n=inp.twist_power,
        epsilon=choice.epsilon,
        r_eps=choice.r_eps,
        mode="worst-case",
        l_squared_lo=worst_case_l_squared(inp.genus, inp.twist_power),
        l_squared_hi=_worst_case_l_squared_high(inp.genus, inp.twist_power),
        length_lo=interval.lo if interval else None,
        length_hi=interval.hi if interval else None,
        admissible=interval is not None,
        min_n=min_admissible_twist(inp.genus),
    )


def _shape_report(
    inp: TheoremInput, l_sq: float, interval: Optional[BoundInterval]
) -> Report:
    choice = margulis(inp.genus)
    return Report(
        genus=inp.genus,
        n=inp.twist_power,
        epsilon=choice.epsilon,
        r_eps=choice.r_eps,
        mode="shape",
        l_squared_lo=l_sq,
        l_squared_hi=l_sq,
        length_lo=interval.lo if interval else None,
        length_hi=interval.hi if interval else None,
        admissible=interval is not None,
        min_n=min_admissible_twist(inp.genus),
    )


def pipeline(
    inp: TheoremInput,
    shape: Optional[CuspShape] = None,
    outward: bool = False,
) -> Report:
    """Run the full gate-then-window pipeline.

    Without a shape, uses the shape-free worst-case window (requires
    n >= min_admissible_twist).  With a shape, computes the exact
    normalized length of the slope n*alpha + beta, enforces the thick-part
    constraint 2*injectivity_radius >= r_eps, and gates on L >= 7.823.
    Gate failures raise with the inadmissible report attached.
    """
    choice = margulis(inp.genus)
    if shape is None:
        interval = theorem_bounds(inp)  # raises TwistPowerTooSmall below gate
        if outward:
            interval = interval.widened()
        return _worst_case_report(inp, interval)

    if 2.0 * injectivity_radius(shape) < choice.r_eps:
        raise InvalidShape(
            f"shape violates the thick-part constraint: systole "
            f"{2.0 * injectivity_radius(shape)} < r_eps {choice.r_eps}",
            report=_shape_report(
                inp, normalized_length(shape, twist_slope(inp.twist_power)) ** 2, None
            ),
        )
    length = normalized_length(shape, twist_slope(inp.twist_power))
    if length < GATE_NORMALIZED_LENGTH:
        raise NormalizedLengthTooShort(
            f"normalized length {length} of the slope is below the filling "
            f"gate {GATE_NORMALIZED_LENGTH}",
            report=_shape_report(inp, length * length, None),
        )
    interval = hk_window(length)
    if outward:
        interval = interval.widened()
    return _shape_report(inp, length * length, interval)
