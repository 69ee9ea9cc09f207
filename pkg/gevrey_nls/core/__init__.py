"""
Numerical core: spectral grids and fields, NLS steppers, analyticity
diagnostics, Bourgain norms and the estimate harness.
"""

from .errors import (
    ContractionError,
    DegenerateInputError,
    EstimateError,
    FieldError,
    GevreyNlsError,
    GridError,
    InstabilityError,
    OverflowGuardError,
    ParameterError,
)
from .spectral import (
    Field,
    GevreyParams,
    GridSpec,
    MultiplierSpec,
    apply_multiplier,
    boundary_mass_fraction,
    gevrey_sobolev_norm,
    lebesgue_norm,
    make_grid,
    transform_roundtrip,
)
from .solver import (
    NlsParams,
    PicardOutcome,
    PicardParams,
    contraction_threshold,
    energy,
    mass,
    nonlinearity,
    picard_iterate,
    step_duhamel_picard,
    step_splitstep,
)
from .diagnostics import (
    RadiusFit,
    RadiusFitConfig,
    ScheduleParams,
    almost_conservation_bound,
    almost_conserved_quantity,
    commutator_sigma_slope,
    critical_indices,
    estimate_radius,
    gevrey_commutator,
    induction_bound,
    lifespan,
    reduced_sigma,
    schedule_constraint,
    sigma_schedule,
)
from .trajectory import DiagnosticsConfig, IntegratorMethod, Trajectory, evolve
from .bourgain import (
    BourgainParams,
    SpaceTimeField,
    admissible_pair,
    mixed_lebesgue_norm,
    window,
    xsb_norm,
)
from .estimates import (
    EstimateParams,
    EstimateReport,
    check_estimate,
    evaluate_estimate,
    ladder_estimate,
    ladder_strichartz_pair,
    sample_inputs,
)

__all__ = [
    "GevreyNlsError",
    "ParameterError",
    "GridError",
    "FieldError",
    "OverflowGuardError",
    "InstabilityError",
    "ContractionError",
    "DegenerateInputError",
    "EstimateError",
    "GridSpec",
    "GevreyParams",
    "Field",
    "MultiplierSpec",
    "make_grid",
    "transform_roundtrip",
    "apply_multiplier",
    "gevrey_sobolev_norm",
    "lebesgue_norm",
    "boundary_mass_fraction",
    "NlsParams",
    "PicardParams",
    "PicardOutcome",
    "nonlinearity",
    "mass",
    "energy",
    "step_splitstep",
    "step_duhamel_picard",
    "picard_iterate",
    "contraction_threshold",
    "critical_indices",
    "almost_conserved_quantity",
    "gevrey_commutator",
    "commutator_sigma_slope",
    "RadiusFitConfig",
    "RadiusFit",
    "estimate_radius",
    "ScheduleParams",
    "lifespan",
    "sigma_schedule",
    "schedule_constraint",
    "almost_conservation_bound",
    "induction_bound",
    "reduced_sigma",
    "IntegratorMethod",
    "DiagnosticsConfig",
    "Trajectory",
    "evolve",
    "SpaceTimeField",
    "BourgainParams",
    "xsb_norm",
    "window",
    "admissible_pair",
    "mixed_lebesgue_norm",
    "EstimateParams",
    "EstimateReport",
    "evaluate_estimate",
    "check_estimate",
    "sample_inputs",
    "ladder_estimate",
    "ladder_strichartz_pair",
]
