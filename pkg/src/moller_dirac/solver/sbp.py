from __future__ import annotations

"""
Summation-by-parts first-derivative operators D = H^-1 Q on N + 1 uniform nodes.

Q + Q^T = diag(-1, 0, ..., 0, 1), so sum_j H_j (u_j Dv_j + v_j Du_j) = u_N v_N - u_0 v_0
holds exactly; the interior stencil is centred (order 2 or 4), the boundary closure
one order lower.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from ..errors import ConfigError

ORDERS = (2, 4)

# boundary closure of the 4-2 operator: rows of dx * D and the norm weights / dx
_BLOCK_42 = np.array(
    [
        [-24.0 / 17.0, 59.0 / 34.0, -4.0 / 17.0, -3.0 / 34.0, 0.0, 0.0],
        [-0.5, 0.0, 0.5, 0.0, 0.0, 0.0],
        [4.0 / 43.0, -59.0 / 86.0, 0.0, 59.0 / 86.0, -4.0 / 43.0, 0.0],
        [3.0 / 98.0, 0.0, -59.0 / 98.0, 0.0, 32.0 / 49.0, -4.0 / 49.0],
    ]
)
_NORM_42 = np.array([17.0 / 48.0, 59.0 / 48.0, 43.0 / 48.0, 49.0 / 48.0])


def _min_cells(order: int) -> int:
    return 2 if order == 2 else 8


@dataclass(frozen=True)
class SBPOperator:
    length: float
    cells: int
    order: int = 2
    matrix: sp.csr_matrix = field(init=False, repr=False, compare=False)
    norm: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.order not in ORDERS:
            raise ConfigError(f"SBP order must be one of {ORDERS}, got {self.order}")
        if self.cells < _min_cells(self.order):
            raise ConfigError(f"order-{self.order} SBP needs at least {_min_cells(self.order)} cells")
        if self.length <= 0.0:
            raise ConfigError("interval length must be positive")
        build = _build_21 if self.order == 2 else _build_42
        mat, weights = build(self.cells)
        object.__setattr__(self, "matrix", (mat / self.dx).tocsr())
        object.__setattr__(self, "norm", weights * self.dx)

    @property
    def nodes(self) -> int:
        return self.cells + 1

    @property
    def dx(self) -> float:
        return self.length / self.cells

    @property
    def x(self) -> np.ndarray:
        return np.linspace(0.0, self.length, self.nodes)

    def apply(self, u: np.ndarray, axis: int = 0) -> np.ndarray:
        """D u along `axis`."""
        u = np.asarray(u)
        moved = np.moveaxis(u, axis, 0)
        flat = moved.reshape(moved.shape[0], -1)
        out = self.matrix @ flat
        return np.moveaxis(np.asarray(out).reshape(moved.shape), 0, axis)

    def sbp_residual(self) -> float:
        """max |H D + (H D)^T - diag(-1, 0, ..., 0, 1)|; zero up to round-off."""
        q = sp.diags(self.norm) @ self.matrix
        boundary = np.zeros(self.nodes)
        boundary[0], boundary[-1] = -1.0, 1.0
        return float(np.max(np.abs((q + q.T).toarray() - np.diag(boundary))))


def _build_21(cells: int) -> tuple[sp.spmatrix, np.ndarray]:
    n = cells + 1
    mat = sp.diags([-0.5 * np.ones(n - 1), 0.5 * np.ones(n - 1)], [-1, 1], format="lil")
    mat[0, 0], mat[0, 1] = -1.0, 1.0
    mat[n - 1, n - 2], mat[n - 1, n - 1] = -1.0, 1.0
    weights = np.ones(n)
    weights[0] = weights[-1] = 0.5
    return mat, weights


def _build_42(cells: int) -> tuple[sp.spmatrix, np.ndarray]:
    n = cells + 1
    stencil = [1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0]
    mat = sp.diags([np.full(n - abs(k), c) for k, c in zip(range(-2, 3), stencil)], list(range(-2, 3)), format="lil")
    for i in range(4):
        mat[i, :] = 0.0
        mat[n - 1 - i, :] = 0.0
        for j in range(6):
            mat[i, j] = _BLOCK_42[i, j]
            mat[n - 1 - i, n - 1 - j] = -_BLOCK_42[i, j]
    weights = np.ones(n)
    weights[:4] = _NORM_42
    weights[-4:] = _NORM_42[::-1]
    return mat, weights


__all__ = ["ORDERS", "SBPOperator"]
