from __future__ import annotations

"""Light cones, cone comparison, volume forms and the conformal factor f."""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike

from ..errors import ContractError
from .metric import SplitMetric

CONE_SAFETY = 1e-6


def uniform_nodes(length: float, cells: int) -> np.ndarray:
    return np.linspace(0.0, length, cells + 1)


def trapezoid_weights(length: float, cells: int) -> np.ndarray:
    dx = length / cells
    w = np.full(cells + 1, dx)
    w[0] = w[-1] = 0.5 * dx
    return w


def characteristic_speed(g: SplitMetric, t: ArrayLike, x: ArrayLike) -> np.ndarray:
    """Coordinate speed beta / sqrt(h) of the light cone of g."""
    g.domain.check(t, x)
    return g.lapse(t, x) / np.sqrt(g.spatial(t, x))


def max_speed(g: SplitMetric, nt: int = 65, nx: int = 129) -> float:
    tt, xx = g.sample_grid(nt, nx)
    return float(np.max(g.lapse(tt, xx) / np.sqrt(g.spatial(tt, xx))))


@dataclass(frozen=True)
class ConeBound:
    """C(t) with C^2 beta_1^-2 h_1 <= beta_0^-2 h_0 on every slice (safety factor included)."""

    g0: SplitMetric
    g1: SplitMetric
    samples: int = 257
    epsilon: float = CONE_SAFETY

    def __call__(self, t: ArrayLike) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        x = np.linspace(0.0, self.g0.domain.length, self.samples)
        tt, xx = np.meshgrid(t.ravel(), x, indexing="ij")
        ratio = (self.g1.lapse(tt, xx) ** 2 * self.g0.spatial(tt, xx)) / (
            self.g0.lapse(tt, xx) ** 2 * self.g1.spatial(tt, xx)
        )
        return ((1.0 - self.epsilon) * np.sqrt(np.min(ratio, axis=1))).reshape(t.shape)

    def cone_speed(self, t: ArrayLike, x: ArrayLike) -> np.ndarray:
        """Light speed of g_C = -beta_1^2 dt^2 + C^2 h_1 dx^2."""
        return self.g1.lapse(t, x) / (self(t) * np.sqrt(self.g1.spatial(t, x)))

    def max_cone_speed(self, nt: int = 65) -> float:
        d = self.g1.domain
        t = np.linspace(d.t_start, d.t_end, nt)
        x = np.linspace(0.0, d.length, self.samples)
        tt, xx = np.meshgrid(t, x, indexing="ij")
        return float(np.max(self.cone_speed(tt, xx)))

    def residual(self, nt: int = 33, nx: int = 65) -> float:
        """max of C^2 beta_1^-2 h_1 - beta_0^-2 h_0 on a sample grid (<= 0 when the bound holds)."""
        tt, xx = self.g0.sample_grid(nt, nx)
        c = self(tt[:, 0])[:, None]
        lhs = c**2 * self.g1.spatial(tt, xx) / self.g1.lapse(tt, xx) ** 2
        rhs = self.g0.spatial(tt, xx) / self.g0.lapse(tt, xx) ** 2
        return float(np.max(lhs - rhs))


def cone_bound(g0: SplitMetric, g1: SplitMetric, samples: int = 257) -> ConeBound:
    if g0.domain != g1.domain:
        raise ContractError("cone_bound needs metrics on a shared domain")
    return ConeBound(g0, g1, samples=samples)


def conformal_factor_f(g0: SplitMetric, g1: SplitMetric):
    """f = sqrt(beta_0 sqrt(h_0) / (beta_1 sqrt(h_1))), so that vol_0 = f^2 vol_1."""
    if g0.domain != g1.domain:
        raise ContractError("conformal_factor_f needs metrics on a shared domain")
    if g0 is g1:
        return lambda t, x: np.ones(np.broadcast_shapes(np.shape(t), np.shape(x)))

    def f(t, x):
        return np.sqrt(g0.volume_density(t, x) / g1.volume_density(t, x))

    return f


def volume_slice(g: SplitMetric, t: float, x: np.ndarray, norm: Optional[np.ndarray] = None) -> np.ndarray:
    """Quadrature weights for vol_Sigma = sqrt(h) dx on the nodes x.

    `norm` is the diagonal norm of the difference operator; trapezoid weights otherwise.
    """
    x = np.asarray(x, dtype=float)
    if norm is None:
        norm = trapezoid_weights(g.domain.length, x.size - 1)
    if np.shape(norm) != x.shape:
        raise ContractError("norm weights and nodes differ in shape")
    g.domain.check(t, x)
    return np.asarray(norm) * np.sqrt(g.spatial(t, x))


def rescale(g: SplitMetric, omega) -> SplitMetric:
    """Omega^2 g: beta -> Omega beta, h -> Omega^2 h."""

    def beta(t, x):
        return omega(t, x) * g.lapse(t, x)

    def h(t, x):
        return omega(t, x) ** 2 * g.spatial(t, x)

    return SplitMetric(beta, h, g.domain, name=f"rescaled({g.name})", params=dict(g.params))


def _softmax(a: np.ndarray, b: np.ndarray, delta: float) -> np.ndarray:
    return 0.5 * (a + b + np.sqrt((a - b) ** 2 + delta**2))


def _softmin(a: np.ndarray, b: np.ndarray, delta: float) -> np.ndarray:
    return 0.5 * (a + b - np.sqrt((a - b) ** 2 + delta**2))


def intermediate_metric(g0: SplitMetric, g1: SplitMetric, epsilon: float = 1e-2, delta: float = 1e-3) -> SplitMetric:
    """Metric whose cones sit inside the cones of both g0 and g1.

    beta is a smoothed minimum shrunk by (1 - epsilon), h a smoothed maximum.
    """
    if g0.domain != g1.domain:
        raise ContractError("intermediate_metric needs metrics on a shared domain")

    def beta(t, x):
        return (1.0 - epsilon) * _softmin(g0.lapse(t, x), g1.lapse(t, x), delta)

    def h(t, x):
        return _softmax(g0.spatial(t, x), g1.spatial(t, x), delta)

    bar = SplitMetric(beta, h, g0.domain, name=f"intermediate({g0.name},{g1.name})", params={"epsilon": epsilon})
    bar.validate()
    return bar


def cone_contained(inner: SplitMetric, outer: SplitMetric, nt: int = 33, nx: int = 65) -> float:
    """max of speed_inner - speed_outer on samples; <= 0 means the inner cone is contained."""
    tt, xx = inner.sample_grid(nt, nx)
    s_in = inner.lapse(tt, xx) / np.sqrt(inner.spatial(tt, xx))
    s_out = outer.lapse(tt, xx) / np.sqrt(outer.spatial(tt, xx))
    return float(np.max(s_in - s_out))


def is_ultrastatic(g: SplitMetric, tol: float = 1e-9) -> bool:
    tt, xx = g.sample_grid(17, 33)
    dbeta = (g.lapse(tt + 1e-4, xx) - g.lapse(tt - 1e-4, xx)) / 2e-4
    dh = (g.spatial(tt + 1e-4, xx) - g.spatial(tt - 1e-4, xx)) / 2e-4
    return bool(np.max(np.abs(dbeta)) <= tol and np.max(np.abs(dh)) <= tol)
