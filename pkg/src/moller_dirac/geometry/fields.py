from __future__ import annotations

"""Scalar and matrix fields on the (t, x) strip, plus the smooth cut-offs used everywhere."""

from typing import Callable

import numpy as np
from numpy.typing import ArrayLike

ScalarField = Callable[[ArrayLike, ArrayLike], np.ndarray]
MatrixField = Callable[[ArrayLike, ArrayLike], np.ndarray]

# Central-difference step for derivatives of closed-form fields.
FD_STEP = 2e-6


def evaluate(field: ScalarField, t: ArrayLike, x: ArrayLike) -> np.ndarray:
    """Evaluate a scalar field and broadcast the result to the (t, x) shape."""
    t_arr = np.asarray(t, dtype=float)
    x_arr = np.asarray(x, dtype=float)
    shape = np.broadcast_shapes(t_arr.shape, x_arr.shape)
    return np.broadcast_to(np.asarray(field(t_arr, x_arr), dtype=float), shape)


def evaluate_matrix(field: MatrixField, t: ArrayLike, x: ArrayLike) -> np.ndarray:
    t_arr = np.asarray(t, dtype=float)
    x_arr = np.asarray(x, dtype=float)
    shape = np.broadcast_shapes(t_arr.shape, x_arr.shape)
    value = np.asarray(field(t_arr, x_arr))
    return np.broadcast_to(value, shape + value.shape[-2:])


def partial_t(field: Callable, t: ArrayLike, x: ArrayLike, step: float = FD_STEP) -> np.ndarray:
    t_arr = np.asarray(t, dtype=float)
    return (np.asarray(field(t_arr + step, x)) - np.asarray(field(t_arr - step, x))) / (2.0 * step)


def partial_x(field: Callable, t: ArrayLike, x: ArrayLike, step: float = FD_STEP) -> np.ndarray:
    x_arr = np.asarray(x, dtype=float)
    return (np.asarray(field(t, x_arr + step)) - np.asarray(field(t, x_arr - step))) / (2.0 * step)


def bump(r2: ArrayLike) -> np.ndarray:
    """C-infinity bump exp(1 - 1/(1 - r^2)) of the squared radius, equal to 1 at the centre."""
    r2 = np.asarray(r2, dtype=float)
    inside = r2 < 1.0
    safe = np.where(inside, r2, 0.0)
    return np.where(inside, np.exp(1.0 - 1.0 / (1.0 - safe)), 0.0)


def bump_2d(t: ArrayLike, x: ArrayLike, tc: float, xc: float, wt: float, wx: float) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    return bump(((t - tc) / wt) ** 2 + ((x - xc) / wx) ** 2)


def _phi(u: np.ndarray) -> np.ndarray:
    pos = u > 0.0
    safe = np.where(pos, u, 1.0)
    return np.where(pos, np.exp(-1.0 / safe), 0.0)


def _dphi(u: np.ndarray) -> np.ndarray:
    pos = u > 0.0
    safe = np.where(pos, u, 1.0)
    return np.where(pos, np.exp(-1.0 / safe) / safe**2, 0.0)


def smooth_step(u: ArrayLike, kind: str = "smooth") -> np.ndarray:
    """Non-decreasing step: exactly 0 for u <= 0 and exactly 1 for u >= 1."""
    u = np.asarray(u, dtype=float)
    if kind == "polynomial":
        c = np.clip(u, 0.0, 1.0)
        inner = c**3 * (10.0 - 15.0 * c + 6.0 * c**2)
    else:
        a, b = _phi(u), _phi(1.0 - u)
        denom = np.where(a + b > 0.0, a + b, 1.0)
        inner = a / denom
    return np.where(u <= 0.0, 0.0, np.where(u >= 1.0, 1.0, inner))


def smooth_step_derivative(u: ArrayLike, kind: str = "smooth") -> np.ndarray:
    u = np.asarray(u, dtype=float)
    if kind == "polynomial":
        c = np.clip(u, 0.0, 1.0)
        inner = 30.0 * c**2 * (1.0 - c) ** 2
    else:
        a, b = _phi(u), _phi(1.0 - u)
        da, db = _dphi(u), _dphi(1.0 - u)
        denom = np.where(a + b > 0.0, a + b, 1.0)
        inner = (da * b + a * db) / denom**2
    return np.where((u <= 0.0) | (u >= 1.0), 0.0, inner)
