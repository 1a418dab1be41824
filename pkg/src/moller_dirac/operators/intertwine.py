from __future__ import annotations

"""Intertwined operator kappa^f D0 (kappa^f)^-1 on M1 and the chi-interpolated operator."""

from typing import Callable, Optional

import numpy as np
from numpy.typing import ArrayLike

from ..errors import ContractError
from ..geometry import ChiProfile, MetricPath, SplitMetric, conformal_factor_f
from ..geometry.fields import FD_STEP, evaluate_matrix
from ..spin import SpinorTransportField
from .system import FirstOrderSystem


def intertwine(
    D0: FirstOrderSystem,
    g1: SplitMetric,
    kappa: Optional[Callable[[ArrayLike, ArrayLike], np.ndarray]] = None,
    f: Optional[Callable[[ArrayLike, ArrayLike], np.ndarray]] = None,
    step: float = FD_STEP,
) -> FirstOrderSystem:
    """D_{0,1}^f with K = f kappa:  S = K S0 K^-1,  A = K A0 K^-1,  B = K (S0 d_t K^-1 + A0 d_x K^-1 + B0 K^-1).

    kappa defaults to the spinor transport along the convex path g0 -> g1 and f to the
    volume-matching conformal factor.
    """
    if D0.metric.domain != g1.domain:
        raise ContractError("intertwine needs D0 and g1 on a shared domain")
    if kappa is None:
        kappa = SpinorTransportField(MetricPath(D0.metric, g1), D0.rep)
    if f is None:
        f = conformal_factor_f(D0.metric, g1)

    def K(t, x):
        return np.asarray(f(t, x))[..., None, None] * evaluate_matrix(kappa, t, x)

    def K_inv(t, x):
        return np.linalg.inv(evaluate_matrix(kappa, t, x)) / np.asarray(f(t, x))[..., None, None]

    def sigma_dt(t, x):
        return K(t, x) @ evaluate_matrix(D0.sigma_dt, t, x) @ K_inv(t, x)

    def A(t, x):
        return K(t, x) @ evaluate_matrix(D0.A, t, x) @ K_inv(t, x)

    def B(t, x):
        t = np.asarray(t, dtype=float)
        x = np.asarray(x, dtype=float)
        dk_t = (K_inv(t + step, x) - K_inv(t - step, x)) / (2.0 * step)
        dk_x = (K_inv(t, x + step) - K_inv(t, x - step)) / (2.0 * step)
        s0, a0, b0 = D0.coefficients(t, x)
        return K(t, x) @ (s0 @ dk_t + a0 @ dk_x + b0 @ K_inv(t, x))

    return FirstOrderSystem(sigma_dt, A, B, g1, D0.rep, label=f"intertwined({D0.label})", info={"source": D0.label})


def _blend(c0: np.ndarray, c1: np.ndarray, chi: np.ndarray) -> np.ndarray:
    w = chi[..., None, None]
    out = (1.0 - w) * c0 + w * c1
    out = np.where(w == 1.0, c1, out)
    return np.where(w == 0.0, c0, out)


def interpolate_operator(
    D01: FirstOrderSystem,
    D1: FirstOrderSystem,
    chi: ChiProfile,
    include_dchi_correction: bool = True,
) -> FirstOrderSystem:
    """(1 - chi) D01 + chi D1 + (1/2)(sigma_1 - sigma_01)(d chi); equals D01 where chi = 0 and D1 where chi = 1."""
    if D01.metric.domain != D1.metric.domain:
        raise ContractError("interpolate_operator needs a shared domain")
    d = D1.metric.domain
    probe = np.asarray(chi(np.linspace(d.t_start, d.t_end, 257)))
    if np.any(probe < 0.0) or np.any(probe > 1.0) or not np.all(np.isfinite(probe)):
        raise ContractError("chi must take values in [0, 1]")

    def _chi(t, x):
        shape = np.broadcast_shapes(np.shape(t), np.shape(x))
        return np.broadcast_to(np.asarray(chi(np.broadcast_to(np.asarray(t, dtype=float), shape))), shape)

    def sigma_dt(t, x):
        return _blend(evaluate_matrix(D01.sigma_dt, t, x), evaluate_matrix(D1.sigma_dt, t, x), _chi(t, x))

    def A(t, x):
        return _blend(evaluate_matrix(D01.A, t, x), evaluate_matrix(D1.A, t, x), _chi(t, x))

    def B(t, x):
        out = _blend(evaluate_matrix(D01.B, t, x), evaluate_matrix(D1.B, t, x), _chi(t, x))
        if not include_dchi_correction:
            return out
        shape = np.broadcast_shapes(np.shape(t), np.shape(x))
        dchi = np.broadcast_to(np.asarray(chi.derivative(np.broadcast_to(np.asarray(t, dtype=float), shape))), shape)
        diff = evaluate_matrix(D1.sigma_dt, t, x) - evaluate_matrix(D01.sigma_dt, t, x)
        correction = 0.5 * dchi[..., None, None] * diff
        return np.where(dchi[..., None, None] == 0.0, out, out + correction)

    label = "interpolated" if include_dchi_correction else "interpolated(no-dchi)"
    return FirstOrderSystem(sigma_dt, A, B, D1.metric, D1.rep, label=label, info={"chi": chi.to_dict() if hasattr(chi, "to_dict") else {}})
