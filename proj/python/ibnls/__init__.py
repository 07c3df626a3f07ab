"""Radial numerical laboratory for the energy-critical inhomogeneous biharmonic NLS."""

from ._core import (
    CutoffProfile,
    GroundStateResult,
    ModelParams,
    NumericalError,
    RadialField,
    RadialGrid,
    ValidationError,
    classify,
    coercivity_gap,
    critical_rescale,
    evolve,
    inequality_report,
    make_cutoff,
    make_field,
    make_params,
    morawetz,
    ode_blowup,
    rate_bound,
    rate_exact,
    rate_localized,
    report,
    scaling_certificate,
    solve_ground_state,
    tail_error,
    threshold_16_over_n,
    unit_sphere_area,
    weinstein,
)

__all__ = [
    "CutoffProfile",
    "GroundStateResult",
    "ModelParams",
    "NumericalError",
    "RadialField",
    "RadialGrid",
    "classify",
    "coercivity_gap",
    "critical_rescale",
    "evolve",
    "inequality_report",
    "make_cutoff",
    "make_field",
    "make_params",
    "morawetz",
    "ode_blowup",
    "rate_bound",
    "rate_exact",
    "rate_localized",
    "report",
    "scaling_certificate",
    "solve_ground_state",
    "tail_error",
    "threshold_16_over_n",
    "unit_sphere_area",
    "ValidationError",
    "weinstein",
]

__version__ = "0.1.0"
