from __future__ import annotations

"""
Compatibility conditions of order k <= 2 for initial data at the corners t0 x {0, L}.

h_0 = psi_0 and h_{k+1} = sum_j C(k, j) L^(j) h_{k-j} + d_t^k (a^-1 rho M f), where L is
the solver's interior operator (the formal d_t of a solution) and L^(j) its j-th time
derivative. The order-k residual at an end is |sum_j C(k, j) d_t^j (Id - pi_B) h_{k-j}|.
"""

from math import comb
from typing import Callable, List, Optional

import numpy as np

from ..errors import ContractError, ShapeError
from ..operators import FirstOrderSystem
from .spaces import BoundarySpace

MAX_ORDER = 2
MIN_CELLS = 8
TIME_STEP = 1e-4


def _time_derivative(
    fn: Callable[[float], np.ndarray], t: float, order: int, window: tuple[float, float], step: float = TIME_STEP
) -> np.ndarray:
    """Central differences inside the window, second-order one-sided ones at its ends."""
    if order == 0:
        return fn(t)
    if window[0] <= t - step and t + step <= window[1]:
        if order == 1:
            return (fn(t + step) - fn(t - step)) / (2.0 * step)
        return (fn(t + step) - 2.0 * fn(t) + fn(t - step)) / step**2
    s = step if t - step < window[0] else -step
    if order == 1:
        return (-3.0 * fn(t) + 4.0 * fn(t + s) - fn(t + 2.0 * s)) / (2.0 * s)
    return (2.0 * fn(t) - 5.0 * fn(t + s) + 4.0 * fn(t + 2.0 * s) - fn(t + 3.0 * s)) / s**2


def check_compatibility(
    data: np.ndarray,
    source: Optional[Callable[[np.ndarray, np.ndarray], np.ndarray]],
    D: FirstOrderSystem,
    B: tuple[BoundarySpace, BoundarySpace],
    order: int,
    t0: Optional[float] = None,
) -> List[float]:
    """Residuals [r_0, ..., r_order], each the max over both ends."""
    from ..solver.sbp import SBPOperator
    from ..solver.evolve import SemiDiscreteOperator

    if not 0 <= order <= MAX_ORDER:
        raise ContractError(f"compatibility is checked for orders 0..{MAX_ORDER}, got {order}")
    data = np.asarray(data, dtype=complex)
    if data.ndim != 2 or data.shape[1] != 2:
        raise ShapeError(f"data must have shape (N + 1, 2), got {data.shape}")
    cells = data.shape[0] - 1
    if cells < MIN_CELLS:
        raise ContractError(f"need at least {MIN_CELLS} cells for one-sided derivatives at the ends")
    d = D.metric.domain
    t0 = d.t_start if t0 is None else float(t0)
    window = (d.t_start, d.t_end)
    op = SemiDiscreteOperator(D, None, SBPOperator(d.length, cells))

    def forcing(t: float) -> np.ndarray:
        return np.asarray(op.source_term(t, source)) * np.ones_like(data)

    h = [data]
    for k in range(order):
        nxt = _time_derivative(forcing, t0, k, window)
        for j in range(k + 1):
            nxt = nxt + comb(k, j) * _time_derivative(lambda s, v=h[k - j]: op.spatial(s, v), t0, j, window)
        h.append(nxt)

    residuals = []
    for k in range(order + 1):
        worst = 0.0
        for idx, space in ((0, B[0]), (-1, B[1])):
            total = np.zeros(2, dtype=complex)
            for j in range(k + 1):
                comp = _time_derivative(lambda s: np.eye(2) - np.asarray(space.projector(s)), t0, j, window)
                total = total + comb(k, j) * comp @ h[k - j][idx]
            worst = max(worst, float(np.linalg.norm(total)))
        residuals.append(worst)
    return residuals
