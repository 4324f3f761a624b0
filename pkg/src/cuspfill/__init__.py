"""Cusp geometry and Dehn-filling length windows for twisted Heegaard
splittings: an upper half-space kernel, flat cusp-torus arithmetic, the
filling-gate pipeline, and randomized verifiers for the geometric facts
the closed-form bounds rest on.
"""

from .bounds import (
    BoundInterval,
    MargulisChoice,
    Report,
    TheoremInput,
    hk_window,
    intro_bounds,
    margulis,
    min_admissible_twist,
    pipeline,
    proposition_caps,
    theorem_bounds,
    worst_case_l_squared,
)
from .cusp import (
    CuspShape,
    SandwichInterval,
    Slope,
    flat_length,
    injectivity_radius,
    normalized_length,
    parse_complex_literal,
    sandwich_eq2,
    torus_area,
    twist_slope,
)
from .halfspace import (
    INFINITY,
    Geodesic,
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
from .verify import (
    ChainConfig,
    TrialReport,
    check_chain,
    cusp_area_suite,
    fact1_sweep,
    fact2_sweep,
    lemma_campaign,
    min_torus_area_scan,
    run_campaign,
    sample_chain,
    surface_cusp_check,
    torus_area_suite,
    validate_chain,
)

__version__ = "0.1.0"
