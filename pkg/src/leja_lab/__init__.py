"""Node schemes on plane compact sets: boundary geometry, exterior potential
fields, greedy node generation, interpolation operator norms, and the audits
tying them together.
"""
from .conformal import (
    GreenModel,
    LevelCurve,
    discrete_green,
    exact_green,
    green_eval,
    green_from_json,
    green_to_json,
    inverse_joukowski,
    joukowski,
    level_curve,
    point_to_ellipse_distance,
    rho,
    rho_formula_segment,
    rho_many,
)
from .geometry import (
    Affine,
    BoundaryMesh,
    SetSpec,
    build_mesh,
    qc_constant_estimate,
    spec_from_json,
    spec_to_json,
    subarc,
)
from .kernels import backend as kernel_backend
from .lebesgue import (
    DELTA_LADDER,
    LebesgueResult,
    SProductReport,
    bernstein_walsh_ratio,
    lagrange_basis,
    lebesgue_constant,
    lebesgue_function,
    min_s_root,
    s_product,
    subexponential_table,
)
from .nodes import (
    Scheme,
    chebyshev_nodes,
    equispaced_nodes,
    leja_generate,
    make_scheme,
    random_nodes,
    user_scheme,
)
from .potential import (
    CountingMeasure,
    EquilibriumModel,
    arcsine_cdf,
    capacity_estimate,
    counting_measure,
    equilibrium_for,
    holder_statistic,
    kolmogorov_distance,
    mu_subarc,
    spacing_statistic,
)
from .separation import (
    SeparationReport,
    distancing_rule_b,
    separation_ratios,
    separation_trend,
)

__version__ = "0.1.0"
