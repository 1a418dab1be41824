from __future__ import annotations

from .maps import (
    UnitaritySweep,
    check_unitarity,
    decomposed_forward,
    gram,
    gram_deviation,
    moller_forward,
    moller_inverse,
    moller_matrix,
    slice_pairing,
    unitarity_sweep,
)
from .plan import MollerPlan, make_plan

__all__ = [
    "MollerPlan",
    "UnitaritySweep",
    "check_unitarity",
    "decomposed_forward",
    "gram",
    "gram_deviation",
    "make_plan",
    "moller_forward",
    "moller_inverse",
    "moller_matrix",
    "slice_pairing",
    "unitarity_sweep",
]
