"""Flat geometry of a cusp cross-section torus.

A cusp cross-section is the flat torus C / (tau_alpha Z + tau_beta Z) seen
on the horosphere {t = T}, whose intrinsic metric is the Euclidean one
rescaled by 1/T.  Slopes are primitive integer classes p*alpha + q*beta;
their normalized length divides the flat geodesic length by the square
root of the torus area, which makes it scale invariant.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import DegenerateLattice, NonPositiveInput, NonPrimitiveSlope

__all__ = [
    "CuspShape",
    "Slope",
    "SandwichInterval",
    "twist_slope",
    "flat_length",
    "torus_area",
    "injectivity_radius",
    "normalized_length",
    "sandwich_eq2",
    "parse_complex_literal",
]

TWO_SQRT3 = 2.0 * math.sqrt(3.0)


@dataclass(frozen=True, slots=True)
class CuspShape:
    """Cusp torus data: translations tau_alpha, tau_beta and height T.

    The translations must be R-linearly independent; the angle between them
    is always derived, never stored.
    """

    tau_alpha: complex
    tau_beta: complex
    height: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "tau_alpha", complex(self.tau_alpha))
        object.__setattr__(self, "tau_beta", complex(self.tau_beta))
        object.__setattr__(self, "height", float(self.height))
        if not (self.height > 0.0) or not math.isfinite(self.height):
            raise NonPositiveInput(f"height must be positive, got {self.height}")
        if _cross(self.tau_alpha, self.tau_beta) == 0.0:
            raise DegenerateLattice(
                "degenerate lattice: translations are R-linearly dependent"
            )


@dataclass(frozen=True, slots=True)
class Slope:
    """Primitive class p*alpha + q*beta on the cusp torus."""

    p: int
    q: int

    def __post_init__(self):
        if (self.p, self.q) == (0, 0):
            raise NonPrimitiveSlope("slope (0, 0) is not a curve class")
        if math.gcd(abs(self.p), abs(self.q)) != 1:
            raise NonPrimitiveSlope(
                f"slope must be primitive: gcd(|{self.p}|, |{self.q}|) != 1"
            )


@dataclass(frozen=True, slots=True)
class SandwichInterval:
    """Bounds lo <= L(mu_n)^2 <= hi on a squared normalized length."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (0.0 <= self.lo <= self.hi):
            raise ValueError(f"invalid sandwich [{self.lo}, {self.hi}]")


def _cross(u: complex, v: complex) -> float:
    """Signed parallelogram area Im(conj(u) * v)."""
    return u.real * v.imag - u.imag * v.real


def twist_slope(n: int) -> Slope:
    """Slope n*alpha + beta filled after the n-th twist power."""
    return Slope(int(n), 1)


def flat_length(shape: CuspShape, s: Slope) -> float:
    """Length |p tau_alpha + q tau_beta| / T of the flat geodesic."""
    return abs(s.p * shape.tau_alpha + s.q * shape.tau_beta) / shape.height


def torus_area(shape: CuspShape) -> float:
    """Torus area |tau_alpha| |tau_beta| sin(theta) / T^2."""
    return abs(_cross(shape.tau_alpha, shape.tau_beta)) / shape.height**2


def _lagrange_gauss(u: complex, v: complex) -> tuple[complex, complex]:
    """Reduce a rank-2 basis so |u| <= |v| and |Re(conj(u) v)| <= |u|^2 / 2.

    The first vector of a reduced basis realizes the lattice systole.
    """

    def sq(w: complex) -> float:
        return w.real * w.real + w.imag * w.imag

    if sq(u) > sq(v):
        u, v = v, u
    while True:
        mu = round((u.conjugate() * v).real / sq(u))
        v = v - mu * u
        if sq(v) >= sq(u):
            return u, v
        u, v = v, u


def injectivity_radius(shape: CuspShape) -> float:
    """Half the systole of the lattice (tau_alpha Z + tau_beta Z) / T."""
    u, _ = _lagrange_gauss(shape.tau_alpha, shape.tau_beta)
    return abs(u) / (2.0 * shape.height)


def normalized_length(shape: CuspShape, s: Slope) -> float:
    """Flat length divided by sqrt(area); invariant under rescaling
    (tau_alpha, tau_beta, T) -> (k tau_alpha, k tau_beta, k T)."""
    return flat_length(shape, s) / math.sqrt(torus_area(shape))


def sandwich_eq2(
    a: float, b: float, r_eps: float, n: int, t_ratio_area: float = 1.0
) -> SandwichInterval:
    """Squared-normalized-length sandwich for the slope n*alpha + beta.

    Inputs a and b are the flat lengths of alpha and beta (already divided
    by T, so ``t_ratio_area`` stays at 1; pass 1/T^2 to feed raw translation
    lengths instead).  Returns

        lo = (n a - b)^2 / (a b),
        hi = (n a + b)^2 * t_ratio_area / (2 sqrt(3) r_eps^2),

    which bracket L(mu_n)^2 whenever the torus area lies between
    2 sqrt(3) r_eps^2 and a*b.  The lower bound is the reverse triangle
    inequality and needs no clamping even when n a < b.
    """
    if not (a > 0.0 and b > 0.0 and r_eps > 0.0 and t_ratio_area > 0.0):
        raise NonPositiveInput("a, b, r_eps and t_ratio_area must be positive")
    if n < 1:
        raise NonPositiveInput(f"twist power must be >= 1, got {n}")
    lo = (n * a - b) ** 2 / (a * b)
    hi = (n * a + b) ** 2 * t_ratio_area / (TWO_SQRT3 * r_eps**2)
    return SandwichInterval(lo, hi)


# Complex literals look like 1+0i, 1.5-0.25i or 2e-3+1.5e+1i: a signed real
# part, a signed imaginary part, a trailing i, and no whitespace.
_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(rf"^([+-]?{_NUM})([+-]{_NUM})i$")


def parse_complex_literal(text: str) -> complex:
    """Parse the textual complex form used for cusp shapes on the CLI."""
    match = _COMPLEX_RE.match(text)
    if match is None:
        raise ValueError(
            f"invalid complex literal {text!r}; expected <real><+|-><real>i"
        )
    return complex(float(match.group(1)), float(match.group(2)))
