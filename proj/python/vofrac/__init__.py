"""Two-step finite difference solver for variable-order time-fractional advection-diffusion."""

from ._core import (
    DimensionError,
    ParameterError,
    SingularMatrixError,
    VofracError,
    apply_Lh,
    caputo_quadrature,
    converge,
    convergence_rate,
    discrete_l2_norm,
    family_weights,
    march,
    problem_names,
    temporal_order,
    theta_start,
    verify,
)

__all__ = [
    "DimensionError",
    "ParameterError",
    "SingularMatrixError",
    "VofracError",
    "apply_Lh",
    "caputo_quadrature",
    "converge",
    "convergence_rate",
    "discrete_l2_norm",
    "family_weights",
    "march",
    "problem_names",
    "temporal_order",
    "theta_start",
    "verify",
]
