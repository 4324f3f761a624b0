"""Kernel tests: frozen example values, brute-force oracles, invariants."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuspfill.errors import (
    CoincidentEndpoints,
    CoincidesWithCenter,
    InsideHoroball,
    NotDisjoint,
    NotOnHorosphere,
)
from cuspfill.halfspace import (
    GEOM_TOL,
    INFINITY,
    Horosphere,
    IdealPoint,
    Isometry,
    Point3,
    apply_isometry,
    geodesic_between,
    geodesic_meets_horosphere,
    horo_distance,
    horo_project,
    horoballs_disjoint,
    hyp_distance,
    normalize_to_plane,
    shadow,
)

PLANE1 = Horosphere(INFINITY, 1.0)


# --- small strategies -------------------------------------------------

finite_coord = st.floats(-5.0, 5.0, allow_nan=False, allow_infinity=False)
heights = st.floats(0.05, 5.0, allow_nan=False, allow_infinity=False)

points = st.builds(
    lambda x, y, t: Point3(complex(x, y), t), finite_coord, finite_coord, heights
)


def random_isometry(rng):
    while True:
        entries = rng.standard_normal(8)
        a, b, c, d = (complex(entries[i], entries[i + 1]) for i in range(0, 8, 2))
        if abs(a * d - b * c) > 1e-3:
            return Isometry(a, b, c, d)


def random_point(rng):
    return Point3(complex(rng.uniform(-3, 3), rng.uniform(-3, 3)), rng.uniform(0.1, 4))


# --- geodesics --------------------------------------------------------

def test_geodesic_vertical():
    g = geodesic_between(IdealPoint(0), INFINITY)
    assert g.is_vertical
    assert g.foot == 0


def test_geodesic_symmetric_halfcircle():
    g = geodesic_between(IdealPoint(-1), IdealPoint(1))
    assert not g.is_vertical
    assert g.center == 0
    assert g.radius == 1.0


def test_geodesic_apex_matches_half_endpoint_distance():
    g = geodesic_between(IdealPoint(0), IdealPoint(2))
    assert g.center == 1
    assert g.radius == 1.0
    assert g.apex == Point3(1, 1.0)


def test_geodesic_coincident_endpoints_rejected():
    with pytest.raises(CoincidentEndpoints):
        geodesic_between(IdealPoint(1 + 2j), IdealPoint(1 + 2j))


def test_apex_law_random():
    # Maximal height equals half the Euclidean endpoint distance.
    rng = np.random.default_rng(5)
    for _ in range(200):
        a = complex(rng.uniform(-9, 9), rng.uniform(-9, 9))
        b = complex(rng.uniform(-9, 9), rng.uniform(-9, 9))
        if a == b:
            continue
        g = geodesic_between(IdealPoint(a), IdealPoint(b))
        assert abs(g.apex.t - abs(a - b) / 2.0) <= 1e-12 * max(1.0, abs(a - b))


# --- isometries -------------------------------------------------------

def test_identity_fixes_everything():
    ident = Isometry.identity()
    p = Point3(1 + 2j, 3.0)
    assert apply_isometry(ident, p) == p
    assert apply_isometry(ident, IdealPoint(5)) == IdealPoint(5)
    assert apply_isometry(ident, INFINITY) == INFINITY
    h = Horosphere(IdealPoint(2), 0.7)
    img = apply_isometry(ident, h)
    assert img.ideal_point == h.ideal_point and abs(img.size - 0.7) < 1e-15


def test_parabolic_translates_at_constant_height():
    m = Isometry.translation(2 - 1j)
    p = apply_isometry(m, Point3(1 + 1j, 0.5))
    assert p.z == 3 + 0j
    assert p.t == 0.5


def test_inversion_sends_height_one_plane_to_unit_diameter_sphere():
    m = Isometry.inversion()
    img = apply_isometry(m, Horosphere(INFINITY, 1.0))
    assert not img.ideal_point.is_infinity
    assert abs(img.ideal_point.z) <= 1e-12
    assert abs(img.size - 1.0) <= 1e-12


def test_inversion_preserves_distances_on_sampled_pairs():
    m = Isometry.inversion()
    rng = np.random.default_rng(11)
    for _ in range(100):
        x, y = random_point(rng), random_point(rng)
        d = hyp_distance(x, y)
        d_img = hyp_distance(apply_isometry(m, x), apply_isometry(m, y))
        assert abs(d_img - d) <= 1e-9 * (1.0 + d)


def test_isometry_invariance_random():
    rng = np.random.default_rng(23)
    for _ in range(300):
        m = random_isometry(rng)
        x, y = random_point(rng), random_point(rng)
        d = hyp_distance(x, y)
        d_img = hyp_distance(apply_isometry(m, x), apply_isometry(m, y))
        assert abs(d_img - d) <= 1e-9 * (1.0 + d)


def test_compose_then_invert_is_identity_on_points():
    rng = np.random.default_rng(3)
    for _ in range(50):
        m = random_isometry(rng) @ random_isometry(rng)
        back = m.inverse()
        p = random_point(rng)
        q = apply_isometry(back, apply_isometry(m, p))
        assert hyp_distance(p, q) <= 1e-9


def test_determinant_normalized_after_composition():
    # chart-depth compositions, the pattern the chain sampler produces
    rng = np.random.default_rng(17)
    m = random_isometry(rng)
    for _ in range(10):
        m = m @ random_isometry(rng)
        det = m.a * m.d - m.b * m.c
        assert abs(det - 1.0) <= 1e-12


# --- distance ---------------------------------------------------------

def test_distance_zero_on_equal_points():
    assert hyp_distance(Point3(0, 1.0), Point3(0, 1.0)) == 0.0


def test_vertical_distance_is_log_height_ratio():
    assert abs(hyp_distance(Point3(0, 1.0), Point3(0, math.e)) - 1.0) <= 1e-12


def _segment_length_quadrature(x: Point3, y: Point3, panels: int = 200000) -> float:
    """Independent oracle: numeric arc-length integral along the circular
    geodesic through two points at equal or differing heights."""
    dz = abs(y.z - x.z)
    if dz == 0.0:
        return abs(math.log(y.t / x.t))
    # circle through both points in the vertical plane containing them
    uc = (dz * dz + y.t**2 - x.t**2) / (2.0 * dz)
    radius = math.hypot(uc, x.t)
    phi1 = math.atan2(x.t, -uc)
    phi2 = math.atan2(y.t, dz - uc)
    lo, hi = min(phi1, phi2), max(phi1, phi2)
    # ds = d(phi) / sin(phi) on a circle of any radius
    mids = (np.arange(panels) + 0.5) / panels * (hi - lo) + lo
    return float(np.sum(1.0 / np.sin(mids)) * (hi - lo) / panels)


def test_horizontal_distance_matches_quadrature_oracle():
    x, y = Point3(0, 1.0), Point3(2, 1.0)
    expected = 2.0 * math.asinh(1.0)
    assert abs(hyp_distance(x, y) - expected) <= 1e-12
    assert abs(_segment_length_quadrature(x, y) - expected) <= 1e-7


def test_distance_matches_quadrature_on_uneven_heights():
    x, y = Point3(-1 + 0j, 0.7), Point3(2 + 0j, 1.9)
    assert abs(hyp_distance(x, y) - _segment_length_quadrature(x, y)) <= 1e-7


@given(points, points)
def test_distance_symmetric(x, y):
    assert hyp_distance(x, y) == hyp_distance(y, x)
    assert hyp_distance(x, y) >= 0.0


@given(points, points, points)
@settings(max_examples=60)
def test_distance_triangle_inequality(x, y, z):
    assert hyp_distance(x, z) <= hyp_distance(x, y) + hyp_distance(y, z) + 1e-12


# --- projection -------------------------------------------------------

def test_project_vertical_onto_plane():
    p = horo_project(Point3(2 + 1j, 0.25), PLANE1)
    assert p == Point3(2 + 1j, 1.0)


def test_project_finite_ideal_point_onto_plane():
    assert horo_project(IdealPoint(5), PLANE1) == Point3(5, 1.0)


def test_project_infinity_onto_sphere_hits_top():
    sphere = Horosphere(IdealPoint(0), 1.0)
    top = horo_project(INFINITY, sphere)
    assert abs(top.z) <= 1e-12
    assert abs(top.t - 1.0) <= 1e-12


def test_project_rejects_interior_point():
    with pytest.raises(InsideHoroball):
        horo_project(Point3(0, 2.0), PLANE1)


def test_project_rejects_center():
    with pytest.raises(CoincidesWithCenter):
        horo_project(INFINITY, PLANE1)
    with pytest.raises(CoincidesWithCenter):
        horo_project(IdealPoint(1), Horosphere(IdealPoint(1), 0.5))


def test_projection_idempotent_random():
    rng = np.random.default_rng(29)
    for _ in range(200):
        if rng.uniform() < 0.5:
            h = Horosphere(INFINITY, rng.uniform(0.5, 2.0))
        else:
            h = Horosphere(
                IdealPoint(complex(rng.uniform(-2, 2), rng.uniform(-2, 2))),
                rng.uniform(0.5, 2.0),
            )
        x = random_point(rng)
        try:
            once = horo_project(x, h)
        except InsideHoroball:
            continue
        twice = horo_project(once, h)
        assert hyp_distance(once, twice) <= 1e-9


# --- intrinsic distance ----------------------------------------------

def test_flat_distance_at_height_one():
    assert horo_distance(PLANE1, Point3(0, 1.0), Point3(3, 1.0)) == 3.0


def test_flat_distance_rescaled_by_height():
    plane2 = Horosphere(INFINITY, 2.0)
    assert horo_distance(plane2, Point3(0, 2.0), Point3(3, 2.0)) == 1.5


def test_flat_distance_rejects_off_sphere_points():
    with pytest.raises(NotOnHorosphere):
        horo_distance(PLANE1, Point3(0, 1.5), Point3(1, 1.0))


def test_sphere_distance_agrees_with_chord_formula():
    # On any horosphere, intrinsic distance l and hyperbolic distance d of
    # two of its points satisfy l = 2 sinh(d / 2): an oracle that never
    # touches the chart normalization.
    rng = np.random.default_rng(31)
    for _ in range(100):
        h = Horosphere(
            IdealPoint(complex(rng.uniform(-2, 2), rng.uniform(-2, 2))),
            rng.uniform(0.3, 2.0),
        )
        m_inv = normalize_to_plane(h).inverse()
        u = apply_isometry(m_inv, Point3(complex(rng.uniform(-2, 2), rng.uniform(-2, 2)), 1.0))
        v = apply_isometry(m_inv, Point3(complex(rng.uniform(-2, 2), rng.uniform(-2, 2)), 1.0))
        flat = horo_distance(h, u, v)
        chord = 2.0 * math.sinh(hyp_distance(u, v) / 2.0)
        assert abs(flat - chord) <= 1e-9 * (1.0 + flat)


# --- shadows ----------------------------------------------------------

def test_shadow_of_tangent_unit_ball_is_half_disk():
    center, radius = shadow(PLANE1, Horosphere(IdealPoint(0), 1.0))
    assert center == Point3(0, 1.0)
    assert radius == 0.5


def test_shadow_radius_equals_euclidean_radius():
    center, radius = shadow(PLANE1, Horosphere(IdealPoint(3), 0.2))
    assert center == Point3(3, 1.0)
    assert abs(radius - 0.1) <= 1e-15


def test_shadow_brute_force_oracle():
    # Project 10^4 sampled points of the horoball and compare the farthest
    # intrinsic distance with the reported radius.
    ball = Horosphere(IdealPoint(3), 0.2)
    center, radius = shadow(PLANE1, ball)
    rng = np.random.default_rng(7)
    reach = 0.0
    for _ in range(10_000):
        psi = rng.uniform(0.0, math.pi - 1e-6)
        phi = rng.uniform(0.0, 2.0 * math.pi)
        z = 3 + 0.1 * math.sin(psi) * complex(math.cos(phi), math.sin(phi))
        t = 0.1 * (1.0 + math.cos(psi))
        d = horo_distance(PLANE1, horo_project(Point3(z, t), PLANE1), center)
        assert d <= radius + 1e-12
        reach = max(reach, d)
    assert abs(reach - radius) <= 1e-3  # random sampling approaches the rim


def test_shadow_rejects_overlapping_ball():
    with pytest.raises(NotDisjoint):
        shadow(PLANE1, Horosphere(IdealPoint(0), 1.0 + 1e-6))


def test_shadow_rejects_nested_horoballs():
    with pytest.raises(NotDisjoint):
        shadow(PLANE1, Horosphere(INFINITY, 2.0))


def test_horoballs_disjoint_predicate():
    assert horoballs_disjoint(PLANE1, Horosphere(IdealPoint(0), 0.99))
    assert not horoballs_disjoint(PLANE1, Horosphere(IdealPoint(0), 1.0))  # tangent
    assert not horoballs_disjoint(PLANE1, Horosphere(IdealPoint(0), 1.01))


# --- crossing criterion ----------------------------------------------

def test_wide_segment_meets_plane():
    assert geodesic_meets_horosphere(Point3(0, 0.5), Point3(2, 0.5), PLANE1)


def test_narrow_segment_misses_plane():
    x, y = Point3(0, 0.5), Point3(0.1, 0.5)
    assert not geodesic_meets_horosphere(x, y, PLANE1)
    # dense sampling along the half-circle confirms the apex stays low
    uc = (0.1**2) / (2 * 0.1)
    radius = math.hypot(uc, 0.5)
    assert radius < 1.0
    phis = np.linspace(math.atan2(0.5, -uc), math.atan2(0.5, 0.1 - uc), 10_000)
    assert float(np.max(radius * np.sin(phis))) < 1.0


def test_vertical_line_meets_every_plane():
    assert geodesic_meets_horosphere(IdealPoint(0), INFINITY, PLANE1)


def test_crossing_guaranteed_at_distance_two():
    # 200-pair slice of the quantified sweep (the full 10^4 runs in the
    # acceptance suite).
    from cuspfill.verify import fact2_sweep

    report = fact2_sweep(200, seed=13)
    assert report.failures == 0


def test_shadow_sweep_small():
    from cuspfill.verify import fact1_sweep

    report = fact1_sweep(200, seed=13)
    assert report.failures == 0


# --- normalization ----------------------------------------------------

@pytest.mark.parametrize(
    "h",
    [
        PLANE1,
        Horosphere(INFINITY, 4.0),
        Horosphere(IdealPoint(0), 1.0),
        Horosphere(IdealPoint(2 - 3j), 0.05),
    ],
)
def test_normalize_to_plane_postcondition(h):
    m = normalize_to_plane(h)
    img = apply_isometry(m, h)
    assert img.ideal_point.is_infinity
    assert abs(img.size - 1.0) <= 1e-9


def test_normalize_plane_is_homothety():
    m = normalize_to_plane(Horosphere(INFINITY, 4.0))
    assert apply_isometry(m, IdealPoint(8)) == IdealPoint(2)
    p = apply_isometry(m, Point3(4, 4.0))
    assert abs(p.z - 1) <= 1e-15 and abs(p.t - 1.0) <= 1e-15
