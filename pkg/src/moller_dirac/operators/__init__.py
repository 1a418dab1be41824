from __future__ import annotations

from .dirac import (
    build_dirac,
    characteristic_margin,
    characteristic_speeds,
    check_hyperbolicity,
    check_potential_skew,
    check_symmetry,
    mass_potential,
    normal_symbol,
    potential_from_spec,
)
from .intertwine import interpolate_operator, intertwine
from .skew import check_skew_adjoint, default_sections
from .system import FirstOrderSystem, apply_operator, conjugate_transpose, hermitian_part

__all__ = [
    "FirstOrderSystem",
    "apply_operator",
    "build_dirac",
    "characteristic_margin",
    "characteristic_speeds",
    "check_hyperbolicity",
    "check_potential_skew",
    "check_skew_adjoint",
    "check_symmetry",
    "conjugate_transpose",
    "default_sections",
    "hermitian_part",
    "interpolate_operator",
    "intertwine",
    "mass_potential",
    "normal_symbol",
    "potential_from_spec",
]
