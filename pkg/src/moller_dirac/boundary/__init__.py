from __future__ import annotations

from .certificates import (
    AdmissibilityCertificate,
    admissibility_certificate,
    conformal_residual,
    double_adjoint_distance,
    kernel_projector,
    null_form_residual,
    projector_residuals,
    random_admissible_space,
)
from .compatibility import check_compatibility
from .conditions import BOUNDARY_NAMES, BoundaryCondition, make_boundary_condition
from .spaces import (
    BoundaryLabel,
    BoundarySpace,
    adjoint_space,
    chiral_projector,
    interpolated_mit,
    mit_projector,
    orthogonal_projector,
    outward_normal,
    resolve_side,
)
from .subspace import InterpolatingFamily, inertia, interpolate_subspace, interpolated_generic

__all__ = [
    "AdmissibilityCertificate",
    "BOUNDARY_NAMES",
    "BoundaryCondition",
    "BoundaryLabel",
    "BoundarySpace",
    "InterpolatingFamily",
    "adjoint_space",
    "admissibility_certificate",
    "check_compatibility",
    "chiral_projector",
    "conformal_residual",
    "double_adjoint_distance",
    "inertia",
    "interpolate_subspace",
    "interpolated_generic",
    "interpolated_mit",
    "kernel_projector",
    "make_boundary_condition",
    "mit_projector",
    "null_form_residual",
    "orthogonal_projector",
    "outward_normal",
    "projector_residuals",
    "random_admissible_space",
    "resolve_side",
]
