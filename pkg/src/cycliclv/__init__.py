"""Exact first integrals of cyclic Lotka-Volterra systems.

The package classifies each system of the cyclic family
dx_i/dt = x_i (k_i x_{i+1} - k_{i-1} x_{i-1}) by the first integrals it
admits, computes monomial-integral exponents two independent ways (exact
nullspace and closed-form chains), verifies conservation and independence
symbolically in rational arithmetic, and monitors conservation drift along
numerically integrated trajectories.
"""

from .darboux import (
    Classification,
    ExponentSystem,
    IntegralBasis,
    LinearIntegral,
    MonomialIntegral,
    build_exponent_system,
    evaluate_integral,
    exponents_even,
    exponents_odd,
    integral_basis,
    nullspace,
    resonance_condition,
)
from .errors import (
    CyclicLVError,
    DimensionMismatch,
    DimensionTooSmall,
    DomainViolation,
    EmptySampleSet,
    IndexOutOfRange,
    IntegrationAborted,
    NonPositiveInitialState,
    NotMeasurable,
    PositivityBreached,
    ResonanceViolated,
    StepUnderflow,
    UnsupportedDimension,
    WrongParity,
    ZeroCoordinate,
    ZeroParameter,
)
from .model import (
    CyclicLVSystem,
    LinearForm,
    as_fraction,
    cofactor,
    make_system,
    vector_field,
    verify_hyperplane_invariance,
)
from .sim import IntegratorConfig, Method, TrajectoryRecord, convergence_order, integrate
from .verify import (
    VerificationReport,
    check_independence,
    check_jacobi_multiplier,
    check_linear_integral,
    check_xh_zero,
    field_divergence,
    independence_rank,
    jacobi_divergence,
    random_rational_state,
)

__version__ = "0.1.0"

__all__ = [
    "Classification",
    "CyclicLVSystem",
    "ExponentSystem",
    "IntegralBasis",
    "IntegratorConfig",
    "LinearForm",
    "LinearIntegral",
    "Method",
    "MonomialIntegral",
    "TrajectoryRecord",
    "VerificationReport",
    "as_fraction",
    "build_exponent_system",
    "check_independence",
    "check_jacobi_multiplier",
    "check_linear_integral",
    "check_xh_zero",
    "cofactor",
    "convergence_order",
    "evaluate_integral",
    "exponents_even",
    "exponents_odd",
    "field_divergence",
    "independence_rank",
    "integral_basis",
    "integrate",
    "jacobi_divergence",
    "make_system",
    "nullspace",
    "random_rational_state",
    "resonance_condition",
    "vector_field",
    "verify_hyperplane_invariance",
    # errors
    "CyclicLVError",
    "DimensionMismatch",
    "DimensionTooSmall",
    "DomainViolation",
    "EmptySampleSet",
    "IndexOutOfRange",
    "IntegrationAborted",
    "NonPositiveInitialState",
    "NotMeasurable",
    "PositivityBreached",
    "ResonanceViolated",
    "StepUnderflow",
    "UnsupportedDimension",
    "WrongParity",
    "ZeroCoordinate",
    "ZeroParameter",
]
