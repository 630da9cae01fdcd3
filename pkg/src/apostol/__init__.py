"""Apostol-Bernoulli and Apostol-Euler polynomials: exact values, pole-sum
approximations with error certificates, and normalized limit diagnostics."""

from .approx import (
    ApproxCertificate,
    certificate_bound,
    certificate_table,
    dilcher_form,
    error_certificate,
    hurwitz_zeta_upper,
    partial_sum,
    tail_constant,
)
from .errors import (
    ApostolError,
    IllConditionedWarning,
    NumericalError,
    QuadratureNonConvergence,
    ValidationError,
)
from .euler import (
    EulerContext,
    ae_fourier_partial,
    ae_poly_scaled,
    duplication_check,
    epsilon_n,
    euler_context,
)
from .exact import (
    ab_numbers_scaled,
    ab_poly_direct,
    ab_poly_scaled,
    fourier_coefficient_closed_form,
    fourier_coefficient_quadrature,
    zero_lambda_poly_scaled,
)
from .kernels import BACKEND
from .normalized import (
    NormalizedValue,
    beta,
    beta_fourier_term,
    quotient_sequence,
    zeroth_limit_report,
)
from .oscillation import (
    AngleClass,
    PolePair,
    classify_angle,
    dist_to_exceptional,
    exceptional_set,
    pair_term,
    periodic_lambda,
    quotient_bounds_offreal,
    quotient_bounds_rational,
)
from .params import (
    LambdaClass,
    ParamContext,
    TruncationKind,
    TruncationSet,
    make_context,
    pole,
    pole_chain,
    truncation_set,
)
from .precision import PrecisionConfig

__version__ = "0.1.0"
