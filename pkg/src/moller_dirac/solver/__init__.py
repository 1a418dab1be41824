from __future__ import annotations

from .analysis import (
    ConvergenceStudy,
    RichardsonResult,
    check_energy_identity,
    convergence_study,
    estimate_order,
    mass_outside_interval,
    pairing,
    peak_location,
    richardson_extrapolate,
    slice_independence,
    uniqueness_check,
)
from .evolve import (
    DEFAULT_DISSIPATION,
    EvolutionReport,
    SemiDiscreteOperator,
    SpinorHistory,
    energy,
    evolve,
    restrict,
    round_trip,
    support_envelope,
)
from .green import (
    SourceSupport,
    causal_propagator,
    cone_mask,
    cone_speed,
    green,
    mass_outside_cone,
    source_support,
    spacetime_residual,
)
from .grid import Grid, make_grid, max_system_speed
from .sbp import SBPOperator

__all__ = [
    "ConvergenceStudy",
    "DEFAULT_DISSIPATION",
    "EvolutionReport",
    "Grid",
    "RichardsonResult",
    "SBPOperator",
    "SemiDiscreteOperator",
    "SourceSupport",
    "SpinorHistory",
    "causal_propagator",
    "check_energy_identity",
    "cone_mask",
    "cone_speed",
    "convergence_study",
    "energy",
    "estimate_order",
    "evolve",
    "green",
    "make_grid",
    "mass_outside_cone",
    "mass_outside_interval",
    "max_system_speed",
    "pairing",
    "peak_location",
    "restrict",
    "richardson_extrapolate",
    "round_trip",
    "slice_independence",
    "source_support",
    "spacetime_residual",
    "support_envelope",
    "uniqueness_check",
]
