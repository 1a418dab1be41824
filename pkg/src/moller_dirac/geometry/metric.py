from __future__ import annotations

"""Split metrics g = -beta^2 dt^2 + h dx^2 on [t_start, t_end] x [0, L]."""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np
from numpy.typing import ArrayLike

from ..errors import ContractError, DomainError
from .fields import ScalarField, evaluate, partial_t, partial_x, smooth_step, smooth_step_derivative

# Points this close outside the rectangle still count as inside (grid round-off).
DOMAIN_TOL = 1e-12


@dataclass(frozen=True)
class Domain:
    t_end: float
    length: float
    t_start: float = 0.0

    def contains(self, t: ArrayLike, x: ArrayLike) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        x = np.asarray(x, dtype=float)
        return (
            (t >= self.t_start - DOMAIN_TOL)
            & (t <= self.t_end + DOMAIN_TOL)
            & (x >= -DOMAIN_TOL)
            & (x <= self.length + DOMAIN_TOL)
        )

    def check(self, t: ArrayLike, x: ArrayLike) -> None:
        if not np.all(self.contains(t, x)):
            raise DomainError(
                f"point outside [{self.t_start}, {self.t_end}] x [0, {self.length}]"
            )

    def to_dict(self) -> Dict[str, float]:
        return {"t_start": self.t_start, "t_end": self.t_end, "length": self.length}


@dataclass(frozen=True)
class SplitMetric:
    """Lapse beta and spatial coefficient h as closed-form callables."""

    beta: ScalarField
    h: ScalarField
    domain: Domain
    name: str = "custom"
    params: Dict[str, Any] = field(default_factory=dict)

    def lapse(self, t: ArrayLike, x: ArrayLike) -> np.ndarray:
        return evaluate(self.beta, t, x)

    def spatial(self, t: ArrayLike, x: ArrayLike) -> np.ndarray:
        return evaluate(self.h, t, x)

    def volume_density(self, t: ArrayLike, x: ArrayLike) -> np.ndarray:
        """rho = beta * sqrt(h), the density of vol_g = rho dt dx."""
        return self.lapse(t, x) * np.sqrt(self.spatial(t, x))

    def dbeta_dx(self, t: ArrayLike, x: ArrayLike) -> np.ndarray:
        return partial_x(self.lapse, t, x)

    def dh_dt(self, t: ArrayLike, x: ArrayLike) -> np.ndarray:
        return partial_t(self.spatial, t, x)

    def sample_grid(self, nt: int = 33, nx: int = 65) -> tuple[np.ndarray, np.ndarray]:
        d = self.domain
        t = np.linspace(d.t_start, d.t_end, nt)
        x = np.linspace(0.0, d.length, nx)
        return np.meshgrid(t, x, indexing="ij")

    def validate(self, nt: int = 33, nx: int = 65) -> None:
        tt, xx = self.sample_grid(nt, nx)
        beta = self.lapse(tt, xx)
        h = self.spatial(tt, xx)
        if not (np.all(np.isfinite(beta)) and np.all(np.isfinite(h))):
            raise ContractError(f"metric '{self.name}' has non-finite coefficients")
        if np.min(beta) <= 0.0 or np.min(h) <= 0.0:
            raise ContractError(f"metric '{self.name}' needs beta > 0 and h > 0 on the domain")

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "params": dict(self.params), "domain": self.domain.to_dict()}


@dataclass(frozen=True)
class MetricPath:
    """Convex path g_lambda = (1 - lambda) g0 + lambda g1 between two split metrics."""

    g0: SplitMetric
    g1: SplitMetric
    lambda_step: float = 1e-3

    def __post_init__(self) -> None:
        if self.g0.domain != self.g1.domain:
            raise ContractError("metric path endpoints must share the domain")

    @property
    def domain(self) -> Domain:
        return self.g0.domain

    def beta_sq(self, lam: float, t: ArrayLike, x: ArrayLike) -> np.ndarray:
        return (1.0 - lam) * self.g0.lapse(t, x) ** 2 + lam * self.g1.lapse(t, x) ** 2

    def h(self, lam: float, t: ArrayLike, x: ArrayLike) -> np.ndarray:
        return (1.0 - lam) * self.g0.spatial(t, x) + lam * self.g1.spatial(t, x)

    def at(self, lam: float) -> SplitMetric:
        g0, g1 = self.g0, self.g1

        def beta(t, x):
            return np.sqrt((1.0 - lam) * g0.lapse(t, x) ** 2 + lam * g1.lapse(t, x) ** 2)

        def h(t, x):
            return (1.0 - lam) * g0.spatial(t, x) + lam * g1.spatial(t, x)

        return SplitMetric(beta, h, self.domain, name=f"path({g0.name},{g1.name})@{lam:g}")


@dataclass(frozen=True)
class ChiProfile:
    """Time-only switch: 0 up to t_minus, 1 from t_plus on, smooth and non-decreasing between."""

    t_minus: float
    t_plus: float
    kind: str = "smooth"

    def __post_init__(self) -> None:
        if not self.t_minus < self.t_plus:
            raise ContractError("chi profile needs t_minus < t_plus")
        if self.kind not in ("smooth", "polynomial"):
            raise ContractError(f"unknown chi smoothness '{self.kind}'")

    def _u(self, t: ArrayLike) -> np.ndarray:
        return (np.asarray(t, dtype=float) - self.t_minus) / (self.t_plus - self.t_minus)

    def __call__(self, t: ArrayLike) -> np.ndarray:
        return smooth_step(self._u(t), self.kind)

    def derivative(self, t: ArrayLike) -> np.ndarray:
        return smooth_step_derivative(self._u(t), self.kind) / (self.t_plus - self.t_minus)

    def to_dict(self) -> Dict[str, Any]:
        return {"t_minus": self.t_minus, "t_plus": self.t_plus, "kind": self.kind}


def constant_chi(value: float, t_minus: float = 0.0, t_plus: float = 1.0) -> "ConstantChi":
    return ConstantChi(t_minus, t_plus, value=value)


@dataclass(frozen=True)
class ConstantChi(ChiProfile):
    """Degenerate profile with a fixed value (used for the chi = 0 / chi = 1 limits)."""

    value: Optional[float] = None

    def __post_init__(self) -> None:
        if self.value is None or not 0.0 <= self.value <= 1.0:
            raise ContractError("chi values must lie in [0, 1]")

    def __call__(self, t: ArrayLike) -> np.ndarray:
        return np.full(np.shape(t), float(self.value))

    def derivative(self, t: ArrayLike) -> np.ndarray:
        return np.zeros(np.shape(t))
