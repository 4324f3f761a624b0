"""Exception hierarchy for the cuspfill package."""


class CuspFillError(Exception):
    """Base class for all domain errors raised by cuspfill."""


# --- upper half-space kernel ---

class CoincidentEndpoints(CuspFillError):
    """A geodesic was requested between two equal ideal points."""


class InsideHoroball(CuspFillError):
    """A point lies strictly inside the open horoball it must avoid."""


class CoincidesWithCenter(CuspFillError):
    """The point to project equals the ideal point of the horosphere."""


class NotOnHorosphere(CuspFillError):
    """Intrinsic distance requested for a point off the horosphere."""


class NotDisjoint(CuspFillError):
    """Two horoballs overlap where disjointness is required."""


# --- cusp torus lattice ---

class DegenerateLattice(CuspFillError):
    """The two translations are R-linearly dependent (zero torus area)."""


class NonPrimitiveSlope(CuspFillError):
    """Slope coefficients are (0, 0) or share a common factor."""


class NonPositiveInput(CuspFillError):
    """A length, radius or count that must be positive is not."""


# --- filling bounds pipeline ---

class GenusTooSmall(CuspFillError):
    """Genus below 2 is outside every statement this package evaluates."""


class NormalizedLengthTooShort(CuspFillError):
    """Normalized slope length below the filling gate 7.823.

    The filling window gives no conclusion in this regime.  Carries the
    inadmissible report when raised by the pipeline.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class TwistPowerTooSmall(CuspFillError):
    """Twist power below the least admissible one for this genus."""

    def __init__(self, message, min_n=None, report=None):
        super().__init__(message)
        self.min_n = min_n
        self.report = report


class OutOfSimplifiedRange(CuspFillError):
    """The simplified interval only covers genus >= 3 and n >= 14."""


class InvalidShape(CuspFillError):
    """Cusp shape violates the thick-part constraint 2*injrad >= r_eps."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


# --- verifiers ---

class SamplingExhausted(CuspFillError):
    """Chain sampler hit the rejection cap at a single step."""
