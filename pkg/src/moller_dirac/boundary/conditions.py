from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Optional

from ..errors import ConfigError, ContractError
from ..geometry import ChiProfile, MetricPath, SplitMetric
from ..spin import GammaRep
from .spaces import BoundarySpace, chiral_projector, interpolated_mit, mit_projector
from .subspace import interpolated_generic

BOUNDARY_NAMES = ("mit", "chiral+", "chiral-", "interpolated-mit", "interpolated-generic")


@dataclass(frozen=True)
class BoundaryCondition:
    """Future spaces on both sides, optional past spaces for backward runs."""

    name: str
    left: BoundarySpace
    right: BoundarySpace
    past_left: Optional[BoundarySpace] = None
    past_right: Optional[BoundarySpace] = None

    @property
    def self_adjoint(self) -> bool:
        paired = self.past_left is None and self.past_right is None
        return paired and self.left.self_adjoint and self.right.self_adjoint

    def spaces(self, backward: bool = False) -> tuple[BoundarySpace, BoundarySpace]:
        if not backward:
            return self.left, self.right
        return (self.past_left or self.left), (self.past_right or self.right)

    def require_round_trip(self) -> None:
        if not self.self_adjoint:
            raise ContractError(f"boundary condition '{self.name}' is not self-adjoint; round trips are refused")

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "self_adjoint": self.self_adjoint, "left": self.left.to_dict(), "right": self.right.to_dict()}


def make_boundary_condition(
    name: str,
    rep: GammaRep,
    g: SplitMetric,
    path: Optional[MetricPath] = None,
    chi: Optional[ChiProfile] = None,
) -> BoundaryCondition:
    if name == "mit":
        return BoundaryCondition(name, mit_projector(rep, g, "left"), mit_projector(rep, g, "right"))
    if name in ("chiral+", "chiral-"):
        sign = 1 if name.endswith("+") else -1
        return BoundaryCondition(name, chiral_projector(rep, g, "left", sign), chiral_projector(rep, g, "right", sign))
    if name in ("interpolated-mit", "interpolated-generic"):
        if path is None or chi is None:
            raise ConfigError(f"boundary '{name}' needs a metric path and a chi profile")
        build = interpolated_mit if name == "interpolated-mit" else interpolated_generic
        return BoundaryCondition(name, build(rep, path, chi, "left"), build(rep, path, chi, "right"))
    raise ConfigError(f"unknown boundary condition '{name}' (expected one of {', '.join(BOUNDARY_NAMES)})")
