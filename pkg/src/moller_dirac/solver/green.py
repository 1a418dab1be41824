from __future__ import annotations

"""Advanced and retarded Green operators, the causal propagator and causal-support checks."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..boundary import BoundaryCondition
from ..errors import ContractError
from ..geometry import max_speed
from ..operators import FirstOrderSystem
from .evolve import DEFAULT_DISSIPATION, SourceField, SpinorHistory, evolve
from .grid import Grid
from .sbp import SBPOperator

SUPPORT_GRID = (257, 513)


@dataclass(frozen=True)
class SourceSupport:
    t_lo: float
    t_hi: float
    x_lo: float
    x_hi: float


def source_support(D: FirstOrderSystem, source: SourceField, nt: int = SUPPORT_GRID[0], nx: int = SUPPORT_GRID[1]) -> Optional[SourceSupport]:
    """Bounding box of {f != 0} on a sample grid; None for the zero source."""
    tt, xx = D.metric.sample_grid(nt, nx)
    mag = np.sum(np.abs(np.asarray(source(tt, xx))), axis=-1)
    hit = np.nonzero(mag > 0.0)
    if hit[0].size == 0:
        return None
    t_axis, x_axis = tt[:, 0], xx[0, :]
    # widen by one sample spacing so the box covers the true support
    dt = t_axis[1] - t_axis[0]
    dx = x_axis[1] - x_axis[0]
    return SourceSupport(
        t_lo=float(t_axis[hit[0].min()] - dt),
        t_hi=float(t_axis[hit[0].max()] + dt),
        x_lo=float(max(0.0, x_axis[hit[1].min()] - dx)),
        x_hi=float(min(D.metric.domain.length, x_axis[hit[1].max()] + dx)),
    )


def green(
    D: FirstOrderSystem,
    bc: BoundaryCondition,
    source: SourceField,
    direction: int,
    grid: Grid,
    store_every: int = 1,
    dissipation: float = DEFAULT_DISSIPATION,
) -> SpinorHistory:
    """G^+ f (direction=+1) or G^- f (direction=-1): zero data before (after) supp f.

    `grid` spans the whole time domain forward; the backward run uses it reversed.
    """
    if direction not in (-1, 1):
        raise ContractError("direction must be +1 (retarded) or -1 (advanced)")
    support = source_support(D, source)
    d = D.metric.domain
    if support is not None and (support.t_lo <= d.t_start + grid.dt or support.t_hi >= d.t_end - grid.dt):
        raise ContractError("source support touches the temporal ends of the domain")
    t0, t1 = (d.t_start, d.t_end) if direction > 0 else (d.t_end, d.t_start)
    run_grid = Grid(grid.N, grid.dt, grid.cfl, t0, t1, grid.length, grid.order)
    zero = np.zeros((grid.N + 1, 2), dtype=complex)
    return evolve(D, bc, zero, run_grid, source=source, store_every=store_every, dissipation=dissipation)


def _ascending(hist: SpinorHistory) -> tuple[np.ndarray, np.ndarray]:
    if hist.times[0] <= hist.times[-1]:
        return hist.times, hist.slices
    return hist.times[::-1], hist.slices[::-1]


def causal_propagator(
    D: FirstOrderSystem,
    bc: BoundaryCondition,
    source: SourceField,
    grid: Grid,
    store_every: int = 1,
    dissipation: float = DEFAULT_DISSIPATION,
) -> SpinorHistory:
    """G f = G^+ f - G^- f on a common ascending time axis."""
    plus = green(D, bc, source, 1, grid, store_every, dissipation)
    minus = green(D, bc, source, -1, grid, store_every, dissipation)
    t_plus, s_plus = _ascending(plus)
    t_minus, s_minus = _ascending(minus)
    if t_plus.shape != t_minus.shape or np.max(np.abs(t_plus - t_minus)) > 1e-9:
        raise ContractError("retarded and advanced runs stored different time levels")
    return SpinorHistory(t_plus, s_plus - s_minus, plus.x, plus.norm, plus.grid, plus.report)


def cone_mask(hist: SpinorHistory, support: SourceSupport, speed: float, direction: int, margin: float) -> np.ndarray:
    """Boolean (k, N + 1): inside the inflated causal future (+1) or past (-1) of the support box."""
    t = hist.times[:, None]
    x = hist.x[None, :]
    if direction > 0:
        elapsed = t - support.t_lo
    else:
        elapsed = support.t_hi - t
    reach = speed * np.maximum(elapsed, 0.0) + margin
    inside = (x >= support.x_lo - reach) & (x <= support.x_hi + reach)
    return inside & (elapsed >= 0.0)


def mass_outside_cone(
    hist: SpinorHistory,
    support: SourceSupport,
    speed: float,
    direction: int,
    margin_cells: float = 3.0,
) -> float:
    """Fraction of sum_t sum_j H_j |psi|^2 lying outside the inflated cone; 0 for psi = 0."""
    mask = cone_mask(hist, support, speed, direction, margin_cells * hist.grid.dx)
    density = np.sum(np.abs(hist.slices) ** 2, axis=-1)
    density = density.reshape(density.shape[0], -1, density.shape[-1]).sum(axis=1) * hist.norm[None, :]
    total = float(np.sum(density))
    if total == 0.0:
        return 0.0
    return float(np.sum(density[~mask]) / total)


def cone_speed(D: FirstOrderSystem, cone=None) -> float:
    """Maximal coordinate speed of g_C (a ConeBound) or of D's own metric."""
    if cone is not None:
        return float(cone.max_cone_speed())
    return max_speed(D.metric)


def spacetime_residual(
    D: FirstOrderSystem,
    hist: SpinorHistory,
    source: Optional[SourceField] = None,
    margin_cells: int = 4,
) -> float:
    """Discrete L2 norm of D psi - f over interior nodes of a uniformly stored history."""
    times, slices = _ascending(hist)
    steps = np.diff(times)
    if steps.size < 2 or np.max(np.abs(steps - steps[0])) > 1e-9 * max(1.0, abs(steps[0])):
        raise ContractError("space-time residual needs a uniformly stored history")
    dt = steps[0]
    sbp = SBPOperator(hist.grid.length, hist.grid.N, hist.grid.order)
    inner = slices[1:-1]
    psi_t = (slices[2:] - slices[:-2]) / (2.0 * dt)
    psi_x = sbp.apply(inner, axis=-2)
    tt, xx = np.meshgrid(times[1:-1], hist.x, indexing="ij")
    s, a, b = D.coefficients(tt, xx)
    r = (
        np.einsum("tjab,tjb->tja", s, psi_t)
        + np.einsum("tjab,tjb->tja", a, psi_x)
        + np.einsum("tjab,tjb->tja", b, inner)
    )
    if source is not None:
        r = r - np.asarray(source(tt, xx))
    cut = slice(margin_cells, hist.grid.N + 1 - margin_cells)
    weights = sbp.norm[cut]
    return float(np.sqrt(dt * np.sum(weights[None, :] * np.sum(np.abs(r[:, cut]) ** 2, axis=-1))))
