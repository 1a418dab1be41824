from __future__ import annotations

"""
Transport of vectors, covectors and spinors along lambda -> (lambda, p) in the
cylinder [0, 1] x M with metric d lambda^2 + g_lambda.

For split metrics the spatial component obeys Y' + (1/2) h_lambda^-1 d_lambda h_lambda Y = 0
and the temporal part keeps beta_lambda^-1 d_t parallel. Both are integrated with a
fixed-step RK4 along lambda, vectorised over points; the spinor map is the lift of the
resulting change of orthonormal frames.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike

from ..errors import ContractError
from ..geometry import MetricPath, SplitMetric
from .clifford import GammaRep, flat, sharp

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TransportResult:
    wp: np.ndarray
    kappa: np.ndarray
    lambda_step: float
    rapidity: Optional[np.ndarray] = None


def _rhs(path: MetricPath, lam: float, t: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    b0 = path.g0.lapse(t, x) ** 2
    b1 = path.g1.lapse(t, x) ** 2
    h0 = path.g0.spatial(t, x)
    h1 = path.g1.spatial(t, x)
    beta_sq = (1.0 - lam) * b0 + lam * b1
    h_lam = (1.0 - lam) * h0 + lam * h1
    # d_lambda log beta_lambda = (b1 - b0) / (2 beta_lambda^2)
    rate_t = -(b1 - b0) / (2.0 * beta_sq)
    rate_x = -0.5 * (h1 - h0) / h_lam
    return np.stack([rate_t * y[..., 0], rate_x * y[..., 1]], axis=-1)


def transport_vector(
    path: MetricPath,
    t: ArrayLike,
    x: ArrayLike,
    y0: Sequence[ArrayLike],
    lam0: float = 0.0,
    lam1: float = 1.0,
    lambda_step: Optional[float] = None,
) -> np.ndarray:
    """Integrate the transport ODE from lam0 to lam1; returns coordinate components (..., 2)."""
    step = path.lambda_step if lambda_step is None else lambda_step
    path.domain.check(t, x)
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    shape = np.broadcast_shapes(t.shape, x.shape, np.shape(y0[0]), np.shape(y0[1]))
    y = np.stack([np.broadcast_to(np.asarray(y0[0], dtype=float), shape), np.broadcast_to(np.asarray(y0[1], dtype=float), shape)], axis=-1)
    if lam1 == lam0:
        return y
    n = max(1, int(np.ceil(abs(lam1 - lam0) / step - 1e-9)))
    dl = (lam1 - lam0) / n
    lam = lam0
    for _ in range(n):
        k1 = _rhs(path, lam, t, x, y)
        k2 = _rhs(path, lam + 0.5 * dl, t, x, y + 0.5 * dl * k1)
        k3 = _rhs(path, lam + 0.5 * dl, t, x, y + 0.5 * dl * k2)
        k4 = _rhs(path, lam + dl, t, x, y + dl * k3)
        y = y + (dl / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        lam += dl
    return y


def transport_vector_closed(path: MetricPath, t: ArrayLike, x: ArrayLike, y0: Sequence[ArrayLike]) -> np.ndarray:
    """Closed form: Y^t(1) = (beta_0/beta_1) Y^t(0), Y^x(1) = sqrt(h_0/h_1) Y^x(0)."""
    rt = path.g0.lapse(t, x) / path.g1.lapse(t, x)
    rx = np.sqrt(path.g0.spatial(t, x) / path.g1.spatial(t, x))
    return np.stack(np.broadcast_arrays(rt * np.asarray(y0[0], dtype=float), rx * np.asarray(y0[1], dtype=float)), axis=-1)


def transport_covector(path: MetricPath, t: ArrayLike, x: ArrayLike, xi: Sequence[ArrayLike], closed: bool = True) -> np.ndarray:
    """wp xi := (wp (xi^sharp_0))^flat_1."""
    v = sharp(path.g0, t, x, xi)
    moved = transport_vector_closed(path, t, x, v) if closed else transport_vector(path, t, x, v)
    out = flat(path.g1, t, x, (moved[..., 0], moved[..., 1]))
    return np.stack(out, axis=-1)


def frame_transport(path: MetricPath, t: ArrayLike, x: ArrayLike, closed: bool = False) -> np.ndarray:
    """Matrix of wp in coordinates, shape (..., 2, 2); columns are the images of d_t and d_x."""
    move = transport_vector_closed if closed else transport_vector
    e_t = move(path, t, x, (1.0, 0.0))
    e_x = move(path, t, x, (0.0, 1.0))
    return np.stack([e_t, e_x], axis=-1)


def _frame(g: SplitMetric, t: ArrayLike, x: ArrayLike) -> np.ndarray:
    beta = g.lapse(t, x)
    sq = np.sqrt(g.spatial(t, x))
    out = np.zeros(np.shape(beta) + (2, 2))
    out[..., 0, 0] = 1.0 / beta
    out[..., 1, 1] = 1.0 / sq
    return out


def lorentz_part(path: MetricPath, t: ArrayLike, x: ArrayLike, wp: np.ndarray) -> np.ndarray:
    """Lambda = E_1^-1 wp E_0, the change of orthonormal frames."""
    e0 = _frame(path.g0, t, x)
    e1_inv = np.linalg.inv(_frame(path.g1, t, x))
    return e1_inv @ wp @ e0


def rapidity_of(lorentz: np.ndarray) -> np.ndarray:
    return np.arctanh(lorentz[..., 1, 0] / lorentz[..., 0, 0])


def boost_lift(rep: GammaRep, theta: ArrayLike) -> np.ndarray:
    """exp(-theta/2 gamma0 gamma1): conjugation by it maps gamma_a to gamma(Lambda e_a)."""
    theta = np.asarray(theta, dtype=float)[..., None, None]
    g = rep.gamma0 @ rep.gamma1
    return np.cosh(0.5 * theta) * np.eye(2) - np.sinh(0.5 * theta) * g


def transport_result(path: MetricPath, t: ArrayLike, x: ArrayLike, rep: GammaRep, closed: bool = False) -> TransportResult:
    wp = frame_transport(path, t, x, closed=closed)
    theta = rapidity_of(lorentz_part(path, t, x, wp))
    kappa = boost_lift(rep, theta)
    logger.debug("transport: max |rapidity| = %.3e", float(np.max(np.abs(theta))) if np.size(theta) else 0.0)
    return TransportResult(wp=wp, kappa=kappa, lambda_step=path.lambda_step, rapidity=theta)


def transport_spinor(path: MetricPath, t: ArrayLike, x: ArrayLike, rep: GammaRep, closed: bool = False) -> np.ndarray:
    """kappa at the points (t, x)."""
    return transport_result(path, t, x, rep, closed=closed).kappa


@dataclass(frozen=True)
class KappaF:
    """kappa^f = f kappa together with its inverse f^-1 kappa^-1."""

    f: np.ndarray
    kappa: np.ndarray

    def __post_init__(self) -> None:
        if np.any(np.asarray(self.f) <= 0.0):
            raise ContractError("kappa_f needs f > 0")

    @property
    def matrix(self) -> np.ndarray:
        return np.asarray(self.f)[..., None, None] * self.kappa

    @property
    def inverse_matrix(self) -> np.ndarray:
        return np.linalg.inv(self.kappa) / np.asarray(self.f)[..., None, None]

    def apply(self, psi: np.ndarray) -> np.ndarray:
        return np.einsum("...ab,...b->...a", self.matrix, psi)

    def apply_inverse(self, psi: np.ndarray) -> np.ndarray:
        return np.einsum("...ab,...b->...a", self.inverse_matrix, psi)


def kappa_f(f: ArrayLike, kappa: np.ndarray) -> KappaF:
    return KappaF(f=np.asarray(f, dtype=float), kappa=np.asarray(kappa))


class SpinorTransportField:
    """kappa as a closed-form matrix field (t, x) -> (..., 2, 2) over a metric path."""

    def __init__(self, path: MetricPath, rep: GammaRep, closed: bool = True) -> None:
        self.path = path
        self.rep = rep
        self.closed = closed

    def __call__(self, t: ArrayLike, x: ArrayLike) -> np.ndarray:
        t, x = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(x, dtype=float))
        wp = frame_transport(self.path, t, x, closed=self.closed)
        theta = rapidity_of(lorentz_part(self.path, t, x, wp))
        return boost_lift(self.rep, theta)
