from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Dict, Optional

import numpy as np

from ..boundary import BoundaryCondition, make_boundary_condition
from ..errors import ConfigError, ContractError
from ..geometry import ChiProfile, MetricPath, SplitMetric, conformal_factor_f
from ..operators import FirstOrderSystem, build_dirac, interpolate_operator, intertwine
from ..solver import DEFAULT_DISSIPATION, Grid, make_grid
from ..spin import GammaRep, SpinorTransportField, make_canonical_rep


@dataclass
class MollerPlan:
    """Everything needed to map D0-solutions (slices at t_minus) to D1-solutions (slices at t_plus).

    f_scale multiplies the volume-matching factor and boundary selects the interpolating
    boundary space; both exist for negative controls and experiments.
    """

    path: MetricPath
    chi: ChiProfile
    N: int
    rep: GammaRep = field(default_factory=make_canonical_rep)
    potential: Optional[Callable] = None
    cfl: float = 0.5
    sbp_order: int = 2
    dissipation: float = DEFAULT_DISSIPATION
    f_scale: float = 1.0
    include_dchi_correction: bool = True
    boundary: str = "interpolated-mit"
    compatibility_order: int = 1
    compatibility_tol: float = 1e-8

    def __post_init__(self) -> None:
        d = self.path.domain
        if not d.t_start <= self.t_minus < self.t_plus <= d.t_end:
            raise ConfigError("need t_start <= t_minus < t_plus <= t_end")
        if self.boundary not in ("interpolated-mit", "interpolated-generic"):
            raise ConfigError(f"unsupported interpolating boundary '{self.boundary}'")
        if self.f_scale <= 0.0:
            raise ConfigError("f_scale must be positive")
        probe_lo = np.linspace(d.t_start, self.t_minus, 17)
        probe_hi = np.linspace(self.t_plus, d.t_end, 17)
        if np.any(self.chi(probe_lo) != 0.0) or np.any(self.chi(probe_hi) != 1.0):
            raise ContractError("chi must vanish up to t_minus and equal 1 from t_plus on")

    @property
    def g0(self) -> SplitMetric:
        return self.path.g0

    @property
    def g1(self) -> SplitMetric:
        return self.path.g1

    @property
    def t_minus(self) -> float:
        return self.chi.t_minus

    @property
    def t_plus(self) -> float:
        return self.chi.t_plus

    @property
    def f(self) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
        base = conformal_factor_f(self.g0, self.g1)
        if self.f_scale == 1.0:
            return base
        return lambda t, x: self.f_scale * np.asarray(base(t, x))

    @cached_property
    def kappa(self) -> SpinorTransportField:
        return SpinorTransportField(self.path, self.rep)

    @cached_property
    def D0(self) -> FirstOrderSystem:
        return build_dirac(self.g0, self.rep, self.potential)

    @cached_property
    def D1(self) -> FirstOrderSystem:
        return build_dirac(self.g1, self.rep, self.potential)

    @cached_property
    def D01(self) -> FirstOrderSystem:
        return intertwine(self.D0, self.g1, kappa=self.kappa, f=self.f)

    @cached_property
    def D_chi(self) -> FirstOrderSystem:
        return interpolate_operator(self.D01, self.D1, self.chi, include_dchi_correction=self.include_dchi_correction)

    @cached_property
    def bc0(self) -> BoundaryCondition:
        return make_boundary_condition("mit", self.rep, self.g0)

    @cached_property
    def bc1(self) -> BoundaryCondition:
        return make_boundary_condition("mit", self.rep, self.g1)

    @cached_property
    def bc_chi(self) -> BoundaryCondition:
        return make_boundary_condition(self.boundary, self.rep, self.g1, path=self.path, chi=self.chi)

    def grid(self, t0: float, t1: float, system: Optional[FirstOrderSystem] = None) -> Grid:
        return make_grid(system or self.D_chi, self.N, t0=t0, t1=t1, cfl=self.cfl, order=self.sbp_order)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(0.0, self.path.domain.length, self.N + 1)

    def kappa_f(self, t: float) -> np.ndarray:
        """(N + 1, 2, 2) matrices f kappa at the nodes of the slice t."""
        tt = np.full_like(self.x, float(t))
        return np.asarray(self.f(tt, self.x))[:, None, None] * self.kappa(tt, self.x)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "g0": self.g0.to_dict(),
            "g1": self.g1.to_dict(),
            "chi": self.chi.to_dict(),
            "N": self.N,
            "cfl": self.cfl,
            "sbp_order": self.sbp_order,
            "f_scale": self.f_scale,
            "include_dchi_correction": self.include_dchi_correction,
            "boundary": self.boundary,
        }


def make_plan(
    g0: SplitMetric,
    g1: SplitMetric,
    t_minus: float,
    t_plus: float,
    N: int,
    chi_kind: str = "smooth",
    **options: Any,
) -> MollerPlan:
    return MollerPlan(path=MetricPath(g0, g1), chi=ChiProfile(t_minus, t_plus, chi_kind), N=N, **options)
