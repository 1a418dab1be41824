from __future__ import annotations

from .car import (
    MAX_MODES,
    CarRep,
    anticommutator,
    car_representation,
    jordan_wigner,
    pfaffian,
    positivity_min,
    quasi_free_expectation,
)
from .doubled import DoubledSpace, build_doubled_space, orthonormal_space
from .ground import (
    DiscreteHamiltonian,
    EigenvalueStudy,
    GroundState,
    discrete_hamiltonian,
    ground_state,
    ground_state_Q,
    lowest_positive_eigenvalue,
    mit_shooting_eigenvalue,
    nodal_space,
    roughness,
)
from .pullback import (
    UNITARITY_BUDGET,
    Coincidence,
    Pullback,
    SlicedState,
    conservative,
    doubled,
    field_equation_residual,
    near_future_coincidence,
    propagated_slice,
    pullback_state,
    slice_coordinates,
    slice_gram,
    state_report,
    two_point,
)
from .state import QuasiFreeState, state_from_projector

__all__ = [
    "MAX_MODES",
    "UNITARITY_BUDGET",
    "CarRep",
    "Coincidence",
    "DiscreteHamiltonian",
    "DoubledSpace",
    "EigenvalueStudy",
    "GroundState",
    "Pullback",
    "QuasiFreeState",
    "SlicedState",
    "anticommutator",
    "build_doubled_space",
    "car_representation",
    "conservative",
    "discrete_hamiltonian",
    "doubled",
    "field_equation_residual",
    "ground_state",
    "ground_state_Q",
    "jordan_wigner",
    "lowest_positive_eigenvalue",
    "mit_shooting_eigenvalue",
    "near_future_coincidence",
    "nodal_space",
    "orthonormal_space",
    "pfaffian",
    "positivity_min",
    "propagated_slice",
    "pullback_state",
    "quasi_free_expectation",
    "roughness",
    "slice_coordinates",
    "slice_gram",
    "state_from_projector",
    "state_report",
    "two_point",
]
