"""Rational Bernstein operators: construction, moments, error certificates."""

from .basis import (
    ScaledBernsteinPoly,
    basis_terms,
    degree_raise,
    eval_scaled,
    power_to_scaled,
    scaled_to_power,
)
from .bounds import (
    BoundReport,
    ModulusEstimate,
    bound_omega1,
    bound_omega2,
    bound_phi,
    modulus1,
    modulus2,
    omega1,
    omega2,
    phi_delta_bound,
    phi_min,
)
from .corpus import CORPUS, PHI_CORPUS, TargetFunction, get_function, phi_abs
from .errors import (
    DegeneratePointError,
    DomainError,
    PositivityError,
    SpecError,
)
from .gallery import (
    FamilySpec,
    bernstein_of_phi,
    make,
    q_divergence_profile,
    sqrt_nodes_gamma_bound_exact,
)
from .moments import (
    MomentValue,
    central_moment,
    fourth_moment_bound,
    monomial_moment,
    monomial_moment_direct,
    monomial_moment_grid,
    second_moment_remainder,
    shifted_sum_pair,
    third_moment_sandwich,
)
from .operator import (
    NodeSequence,
    RationalBernsteinOperator,
    WViolation,
    apply_error,
    apply_error_grid,
    apply_grid,
    apply_operator,
    check_w,
    delta_n,
    from_nodes,
    from_weight_polynomial,
)
from .voronovskaja import (
    VoronovskajaSample,
    mamedov_cap,
    mamedov_ratio,
    voronovskaja_sample,
)

__version__ = "0.1.0"
