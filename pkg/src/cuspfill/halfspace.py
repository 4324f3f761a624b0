"""Exact-formula primitives of the upper half-space model of hyperbolic 3-space.

The model is H^3 = C x (0, oo): a point is a horizontal complex coordinate
``z`` together with a height ``t > 0``.  Geodesics are vertical lines or
Euclidean half-circles orthogonal to the boundary plane; horospheres are
horizontal planes ``{t = T}`` (based at infinity) or Euclidean spheres
tangent to the boundary (based at a finite ideal point).  Orientation
preserving isometries are Poincare extensions of Moebius transformations,
represented by 2x2 complex matrices normalized to determinant 1.

Everything here is an immutable value and every operation is a pure
function, so unrestricted parallel use is safe.  All geometric equality
tests use absolute tolerance ``GEOM_TOL`` on height-1 charts; quantities
are O(1)-O(100), so double precision is ample.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

from .errors import (
    CoincidentEndpoints,
    CoincidesWithCenter,
    InsideHoroball,
    NotDisjoint,
    NotOnHorosphere,
)

__all__ = [
    "GEOM_TOL",
    "Point3",
    "IdealPoint",
    "INFINITY",
    "Horosphere",
    "Geodesic",
    "Isometry",
    "geodesic_between",
    "apply_isometry",
    "hyp_distance",
    "horo_project",
    "horo_distance",
    "shadow",
    "geodesic_meets_horosphere",
    "normalize_to_plane",
    "horoballs_disjoint",
]

# Absolute tolerance for geometric predicates, valid on charts where the
# reference horosphere has been normalized to height 1.
GEOM_TOL = 1e-9


@dataclass(frozen=True, slots=True)
class Point3:
    """A point (z, t) of the upper half-space, t > 0."""

    z: complex
    t: float

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "t", float(self.t))
        if not (self.t > 0.0) or not math.isfinite(self.t):
            raise ValueError(f"height must be positive and finite, got {self.t}")
        if not (math.isfinite(self.z.real) and math.isfinite(self.z.imag)):
            raise ValueError("horizontal coordinate must be finite")


@dataclass(frozen=True, slots=True)
class IdealPoint:
    """A boundary point: a finite complex number, or None for infinity."""

    z: Union[complex, None] = None

    def __post_init__(self):
        if self.z is not None:
            object.__setattr__(self, "z", complex(self.z))
            if not (math.isfinite(self.z.real) and math.isfinite(self.z.imag)):
                raise ValueError("finite ideal point must have finite coordinate")

    @property
    def is_infinity(self) -> bool:
        return self.z is None

    @classmethod
    def infinity(cls) -> "IdealPoint":
        return cls(None)


INFINITY = IdealPoint(None)


@dataclass(frozen=True, slots=True)
class Horosphere:
    """A horosphere, stored as (ideal point, size).

    ``size`` is the plane height when the ideal point is infinity, and the
    Euclidean diameter of the tangent sphere otherwise.  This pair is closed
    under isometries, which is why we prefer it to an implicit quadric.
    """

    ideal_point: IdealPoint
    size: float

    def __post_init__(self):
        object.__setattr__(self, "size", float(self.size))
        if not (self.size > 0.0) or not math.isfinite(self.size):
            raise ValueError(f"horosphere size must be positive, got {self.size}")


@dataclass(frozen=True, slots=True)
class Geodesic:
    """The geodesic with two distinct ideal endpoints."""

    a: IdealPoint
    b: IdealPoint

    def __post_init__(self):
        if self.a == self.b:
            raise CoincidentEndpoints(f"geodesic endpoints coincide: {self.a}")

    @property
    def is_vertical(self) -> bool:
        return self.a.is_infinity or self.b.is_infinity

    @property
    def foot(self) -> complex:
        """Finite endpoint of a vertical geodesic."""
        if not self.is_vertical:
            raise ValueError("foot is only defined for vertical geodesics")
        return self.b.z if self.a.is_infinity else self.a.z

    @property
    def center(self) -> complex:
        """Euclidean center of the half-circle (finite endpoints only)."""
        if self.is_vertical:
            raise ValueError("vertical geodesic has no finite center")
        return (self.a.z + self.b.z) / 2.0

    @property
    def radius(self) -> float:
        if self.is_vertical:
            raise ValueError("vertical geodesic has infinite radius")
        return abs(self.b.z - self.a.z) / 2.0

    @property
    def apex(self) -> Point3:
        """Highest point of the half-circle; its height is half the
        Euclidean distance between the endpoints."""
        return Point3(self.center, self.radius)


def geodesic_between(a: IdealPoint, b: IdealPoint) -> Geodesic:
    """The unique geodesic with ideal endpoints a and b (a != b)."""
    return Geodesic(a, b)


class Isometry:
    """An orientation preserving isometry of H^3.

    Wraps a 2x2 complex matrix acting on the boundary by the Moebius map
    z -> (a z + b)/(c z + d) and on the interior by the Poincare extension.
    The matrix is normalized to determinant 1 on construction, and
    composition renormalizes, so determinant drift cannot accumulate over
    chained constructions.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: complex, b: complex, c: complex, d: complex):
        a, b, c, d = complex(a), complex(b), complex(c), complex(d)
        det = a * d - b * c
        if det == 0 or not (math.isfinite(abs(det))):
            raise ValueError("isometry matrix must be invertible with finite entries")
        s = cmath.sqrt(det)
        a, b, c, d = a / s, b / s, c / s, d / s
        # The determinant of the rescaled matrix is 1 up to cancellation
        # error, which grows with the entry products for ill-conditioned
        # input; the bound reflects that.
        scale = max(1.0, abs(a * d) + abs(b * c))
        if abs(a * d - b * c - 1.0) > 1e-12 * scale:
            raise ValueError("determinant normalization failed")
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def identity(cls) -> "Isometry":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def translation(cls, tau: complex) -> "Isometry":
        """Parabolic z -> z + tau fixing infinity; extends to (z,t) -> (z+tau, t)."""
        return cls(1.0, tau, 0.0, 1.0)

    @classmethod
    def scaling(cls, k: complex) -> "Isometry":
        """z -> k z for k != 0 (homothety plus rotation about the vertical axis)."""
        if k == 0:
            raise ValueError("scaling factor must be nonzero")
        w = cmath.sqrt(k)
        return cls(w, 0.0, 0.0, 1.0 / w)

    @classmethod
    def inversion(cls) -> "Isometry":
        """z -> -1/z."""
        return cls(0.0, -1.0, 1.0, 0.0)

    def inverse(self) -> "Isometry":
        return Isometry(self.d, -self.b, -self.c, self.a)

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return Isometry(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __call__(self, x):
        return apply_isometry(self, x)

    def __repr__(self):
        return f"Isometry({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"


def _moebius(m: Isometry, p: IdealPoint) -> IdealPoint:
    if p.is_infinity:
        if m.c == 0:
            return INFINITY
        return IdealPoint(m.a / m.c)
    den = m.c * p.z + m.d
    if den == 0:
        return INFINITY
    return IdealPoint((m.a * p.z + m.b) / den)


def _extend(m: Isometry, p: Point3) -> Point3:
    # Quaternion form of the Poincare extension for det = 1:
    #   (z, t) -> (((az+b) conj(cz+d) + a conj(c) t^2) / D,  t / D),
    #   D = |cz+d|^2 + |c|^2 t^2.
    w = m.c * p.z + m.d
    den = abs(w) ** 2 + abs(m.c) ** 2 * p.t**2
    z = ((m.a * p.z + m.b) * w.conjugate() + m.a * m.c.conjugate() * p.t**2) / den
    return Point3(z, p.t / den)


def _horosphere_vector(h: Horosphere) -> tuple[complex, complex]:
    # Horoballs correspond to nonzero vectors (x1, x2) in C^2 up to unit
    # scalars: ideal point x1/x2, diameter 1/|x2|^2 (height |x1|^2 when
    # x2 = 0), and the correspondence is equivariant for the linear action.
    if h.ideal_point.is_infinity:
        return complex(math.sqrt(h.size)), 0j
    w = 1.0 / math.sqrt(h.size)
    return h.ideal_point.z * w, complex(w)


def _horosphere_from_vector(x1: complex, x2: complex) -> Horosphere:
    if x2 == 0:
        return Horosphere(INFINITY, abs(x1) ** 2)
    return Horosphere(IdealPoint(x1 / x2), 1.0 / abs(x2) ** 2)


def apply_isometry(m: Isometry, x):
    """Image of a Point3, IdealPoint or Horosphere under the isometry."""
    if isinstance(x, Point3):
        return _extend(m, x)
    if isinstance(x, IdealPoint):
        return _moebius(m, x)
    if isinstance(x, Horosphere):
        x1, x2 = _horosphere_vector(x)
        return _horosphere_from_vector(m.a * x1 + m.b * x2, m.c * x1 + m.d * x2)
    raise TypeError(f"cannot apply isometry to {type(x).__name__}")


def hyp_distance(x: Point3, y: Point3) -> float:
    """Hyperbolic distance between two interior points.

    Uses d = 2 asinh(sqrt(|z1-z2|^2 + (t1-t2)^2) / (2 sqrt(t1 t2))), which
    is exact for vertical pairs and stays accurate for nearby points where
    the acosh form would lose half the significant digits.
    """
    sq = abs(x.z - y.z) ** 2 + (x.t - y.t) ** 2
    return 2.0 * math.asinh(math.sqrt(sq) / (2.0 * math.sqrt(x.t * y.t)))


def normalize_to_plane(h: Horosphere) -> Isometry:
    """An isometry carrying the horosphere to the plane at height 1.

    For a plane {t = T} this is the homothety z -> z/T; for a sphere of
    diameter s tangent at p it is z -> s/(p - z) up to normalization.
    """
    if h.ideal_point.is_infinity:
        w = 1.0 / math.sqrt(h.size)
        return Isometry(w, 0.0, 0.0, 1.0 / w)
    rs = math.sqrt(h.size)
    p = h.ideal_point.z
    return Isometry(0.0, -rs, 1.0 / rs, -p / rs)


def horo_project(x, h: Horosphere) -> Point3:
    """Entrance point into the horosphere of the geodesic from x to its
    ideal point.

    x may be an interior point or an ideal point; it must lie outside the
    open horoball bounded by h and differ from the ideal point of h.
    """
    if isinstance(x, IdealPoint) and x == h.ideal_point:
        raise CoincidesWithCenter("cannot project the horosphere's own ideal point")
    if h.ideal_point.is_infinity:
        # Geodesics toward infinity are vertical; projection keeps z.
        t = h.size
        if isinstance(x, IdealPoint):
            return Point3(x.z, t)
        if x.t > t * (1.0 + GEOM_TOL):
            raise InsideHoroball(f"point at height {x.t} is inside the horoball t > {t}")
        return Point3(x.z, t)
    m = normalize_to_plane(h)
    y = apply_isometry(m, x)
    if isinstance(y, IdealPoint):
        chart = Point3(y.z, 1.0)
    else:
        if y.t > 1.0 + GEOM_TOL:
            raise InsideHoroball("point lies inside the open horoball")
        chart = Point3(y.z, 1.0)
    return apply_isometry(m.inverse(), chart)


def horo_distance(h: Horosphere, u: Point3, v: Point3) -> float:
    """Intrinsic flat distance on the horosphere between two of its points.

    The induced metric on {t = T} is the Euclidean metric of C rescaled by
    1/T.  Sphere-type horospheres are pulled back to the height-1 chart,
    where the same formula applies.
    """
    if h.ideal_point.is_infinity:
        t = h.size
        if abs(u.t - t) > GEOM_TOL * max(1.0, t) or abs(v.t - t) > GEOM_TOL * max(1.0, t):
            raise NotOnHorosphere(f"points at heights {u.t}, {v.t} not on plane t = {t}")
        return abs(u.z - v.z) / t
    m = normalize_to_plane(h)
    uc, vc = apply_isometry(m, u), apply_isometry(m, v)
    if abs(uc.t - 1.0) > GEOM_TOL or abs(vc.t - 1.0) > GEOM_TOL:
        raise NotOnHorosphere("points do not lie on the horosphere")
    return abs(uc.z - vc.z)


def _chart_diameter(reference: Horosphere, other: Horosphere) -> float:
    """Euclidean diameter of `other` in the chart where `reference` is the
    height-1 plane.  Infinite when the two share an ideal point."""
    if reference.ideal_point == other.ideal_point:
        return math.inf
    m = normalize_to_plane(reference)
    return apply_isometry(m, other).size


def horoballs_disjoint(h1: Horosphere, h2: Horosphere) -> bool:
    """True when the closed horoballs are disjoint.

    Tangency (chart diameter exactly 1) counts as not disjoint here; this
    predicate backs chain sampling, which needs the open condition.
    """
    return _chart_diameter(h1, h2) < 1.0


def shadow(h: Horosphere, ball: Horosphere) -> tuple[Point3, float]:
    """Projection of one horoball onto a horosphere, as an intrinsic disk.

    Normalizing h to the height-1 plane turns the horoball into a sphere of
    diameter s tangent at some w; its projection is the intrinsic ball of
    radius s/2 around the projection of w, and s <= 1 forces radius <= 1/2.
    Raises NotDisjoint when the horoball pokes into the open horoball of h
    (interiors must be disjoint; mere tangency is fine).
    """
    s = _chart_diameter(h, ball)
    if not (s <= 1.0 + GEOM_TOL):
        raise NotDisjoint(f"horoball of chart diameter {s} overlaps the horosphere")
    center = horo_project(ball.ideal_point, h)
    return center, s / 2.0


def _max_height_on_segment(z1: complex, t1: float, z2: complex, t2: float) -> float:
    """Maximal height along the geodesic segment between two points given
    in a fixed chart; heights 0 mark ideal endpoints."""
    dz = abs(z2 - z1)
    if dz == 0.0:
        return max(t1, t2)
    # Real coordinates along the segment direction: u1 = 0, u2 = dz.
    uc = (dz * dz + t2 * t2 - t1 * t1) / (2.0 * dz)
    radius = math.hypot(uc, t1)
    if 0.0 < uc < dz:
        return radius
    return max(t1, t2)


def geodesic_meets_horosphere(x, y, h: Horosphere) -> bool:
    """Whether the geodesic segment [x, y] meets the horosphere.

    Guaranteed true whenever the projections of x and y to h are at
    intrinsic distance >= 2: the segment then rides a half-circle whose
    apex height is at least 1 in the normalized chart.
    """
    if type(x) is type(y) and x == y:
        raise CoincidentEndpoints("segment endpoints coincide")
    m = normalize_to_plane(h)
    imgs = []
    for p in (x, y):
        q = apply_isometry(m, p)
        if isinstance(q, IdealPoint):
            if q.is_infinity:
                return True  # vertical ray reaches every height
            imgs.append((q.z, 0.0))
        else:
            if q.t > 1.0 + GEOM_TOL:
                raise InsideHoroball("segment endpoint inside the open horoball")
            imgs.append((q.z, q.t))
    (z1, t1), (z2, t2) = imgs
    return _max_height_on_segment(z1, t1, z2, t2) >= 1.0 - GEOM_TOL
