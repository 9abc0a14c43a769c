"""Analytic-function-space norms, best polynomial approximation, and
entire-function growth recovery on the unit disk."""

from .approximation import (
    ApproxEntry,
    ApproxProfile,
    approx_profile,
    exact_error,
    lower_bound,
    upper_bound,
)
from .errors import (
    AccuracyError,
    InfeasibleSpaceError,
    InsufficientDataError,
    SpecParseError,
    UnsupportedSpaceError,
)
from .estimators import (
    EstimateReport,
    build_report,
    coefficient_order,
    coefficient_type,
    cross_check,
    entirety_indicator,
    order_estimate,
    type_estimate,
)
from .functions import (
    CoefficientOracle,
    catalog,
    cos_sqrt,
    exp_scale,
    geometric,
    lacunary,
    parse_function,
    polynomial,
    power_order,
    synthetic,
    truncate,
)
from .integer_approx import (
    GaussianIntPolynomial,
    infimum_probe,
    integer_approx_error,
    lacunary_construct,
    obstruction_lower_bound,
    obstruction_profile,
    round_to_integer_poly,
)
from .numerics import NEG_INF, integrate_01, log_beta, log_sum_exp, maximize_unimodal
from .spaces import (
    BMOA,
    Ap,
    Bergman,
    BlochType,
    Dirichlet,
    DirichletWeights,
    DiskAlgebra,
    Dynkin,
    Hardy,
    HardyLittlewood,
    MixedNorm,
    NormProfile,
    WeightSpec,
    WeightedBergman,
    coefficient_norm,
    convolution_coefficients,
    default_catalog,
    monomial_norm,
    norm_profile,
    parse_space,
    quoted_closed_form,
    separable_weights,
    trig_poly_l1_norm,
)

__version__ = "0.1.0"
