from __future__ import annotations

"""First-order systems D = S(t,x) d_t + A(t,x) d_x + B(t,x) acting on C^2-valued fields."""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional

import numpy as np
from numpy.typing import ArrayLike

from ..geometry import SplitMetric
from ..geometry.fields import evaluate_matrix
from ..spin import GammaRep

MatrixField = Callable[[ArrayLike, ArrayLike], np.ndarray]


@dataclass(frozen=True)
class FirstOrderSystem:
    """Coefficients as closed-form matrix fields; `metric` supplies the volume density."""

    sigma_dt: MatrixField
    A: MatrixField
    B: MatrixField
    metric: SplitMetric
    rep: GammaRep
    label: str = "system"
    info: Dict[str, Any] = field(default_factory=dict)

    def coefficients(self, t: ArrayLike, x: ArrayLike) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (
            evaluate_matrix(self.sigma_dt, t, x),
            evaluate_matrix(self.A, t, x),
            evaluate_matrix(self.B, t, x),
        )

    def symbol(self, t: ArrayLike, x: ArrayLike, xi_t: ArrayLike, xi_x: ArrayLike) -> np.ndarray:
        """sigma(xi) = xi_t S + xi_x A."""
        s = evaluate_matrix(self.sigma_dt, t, x)
        a = evaluate_matrix(self.A, t, x)
        return np.asarray(xi_t, dtype=float)[..., None, None] * s + np.asarray(xi_x, dtype=float)[..., None, None] * a

    def weighted(self, t: ArrayLike, x: ArrayLike) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(rho M S, rho M A, rho M B) with rho the volume density of the metric."""
        s, a, b = self.coefficients(t, x)
        rho = self.metric.volume_density(t, x)[..., None, None]
        m = self.rep.spin_form
        return rho * (m @ s), rho * (m @ a), rho * (m @ b)

    def with_label(self, label: str, **info: Any) -> "FirstOrderSystem":
        return FirstOrderSystem(self.sigma_dt, self.A, self.B, self.metric, self.rep, label=label, info={**self.info, **info})

    def to_dict(self) -> Dict[str, Any]:
        return {"label": self.label, "metric": self.metric.to_dict(), **{k: v for k, v in self.info.items() if isinstance(v, (int, float, str, bool))}}


def conjugate_transpose(a: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(a, -1, -2))


def hermitian_part(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + conjugate_transpose(a))


def apply_operator(D: FirstOrderSystem, psi: Callable[[np.ndarray, np.ndarray], np.ndarray], t: ArrayLike, x: ArrayLike, step: float = 1e-5) -> np.ndarray:
    """D psi at points for a closed-form spinor field psi(t, x) -> (..., 2)."""
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    s, a, b = D.coefficients(t, x)
    dpsi_t = (psi(t + step, x) - psi(t - step, x)) / (2.0 * step)
    dpsi_x = (psi(t, x + step) - psi(t, x - step)) / (2.0 * step)
    return (
        np.einsum("...ab,...b->...a", s, dpsi_t)
        + np.einsum("...ab,...b->...a", a, dpsi_x)
        + np.einsum("...ab,...b->...a", b, psi(t, x))
    )


Potential = Optional[Callable[[ArrayLike, ArrayLike], np.ndarray]]
