from __future__ import annotations

"""Energy identity, convergence orders and the causality/uniqueness proxies built on evolve."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from ..boundary import BoundaryCondition
from ..errors import ConfigError, ContractError
from ..operators import FirstOrderSystem
from .evolve import SemiDiscreteOperator, SpinorHistory, energy, evolve
from .grid import make_grid
from .sbp import SBPOperator

logger = logging.getLogger(__name__)

DataFactory = Callable[[np.ndarray], np.ndarray]


def check_energy_identity(hist: SpinorHistory, D: FirstOrderSystem, bc: Optional[BoundaryCondition] = None) -> float:
    """max_t |<<psi(t), psi(t)>> - <<psi(t0), psi(t0)>>| over the stored slices."""
    if bc is not None and not bc.self_adjoint:
        raise ContractError("the energy identity is certified for self-adjoint boundary conditions only")
    e = energy(D, hist)
    return float(np.max(np.abs(e - e[0]))) if e.size else 0.0


def pairing(D: FirstOrderSystem, hist_a: SpinorHistory, hist_b: SpinorHistory) -> np.ndarray:
    """<<psi(t), phi(t)>> = sum_j H_j psi_j^dagger (-a_j) phi_j at every stored time."""
    if hist_a.slices.shape != hist_b.slices.shape:
        raise ContractError("histories must share their storage layout")
    op = SemiDiscreteOperator(D, None, SBPOperator(hist_a.grid.length, hist_a.grid.N, hist_a.grid.order))
    out = []
    for t, u, v in zip(hist_a.times, hist_a.slices, hist_b.slices):
        a = op.coefficients(t).a
        out.append(np.sum(np.einsum("j,...ja,jab,...jb->...", op.sbp.norm, np.conj(u), -a, v)))
    return np.asarray(out)


def slice_independence(D: FirstOrderSystem, hist_a: SpinorHistory, hist_b: SpinorHistory) -> float:
    p = pairing(D, hist_a, hist_b)
    return float(np.max(np.abs(p - p[0])))


def estimate_order(hs: Sequence[float], errors: Sequence[float]) -> float:
    """Least-squares slope of log(error) against log(h)."""
    hs = np.asarray(hs, dtype=float)
    errors = np.asarray(errors, dtype=float)
    if hs.size < 2 or hs.size != errors.size:
        raise ConfigError("need at least two (h, error) pairs")
    if np.any(errors <= 0.0):
        raise ContractError("errors must be positive to estimate an order")
    return float(np.polyfit(np.log(hs), np.log(errors), 1)[0])


@dataclass(frozen=True)
class RichardsonResult:
    value: float
    order: float
    values: tuple

    def to_dict(self) -> Dict[str, Any]:
        return {"value": self.value, "order": self.order, "values": list(self.values)}


def richardson_extrapolate(values: Sequence[float], ratio: float = 2.0, order: Optional[float] = None) -> RichardsonResult:
    """Extrapolate v(h) -> v(0) from values on h, h/ratio, h/ratio^2 (coarsest first)."""
    v = np.asarray(values, dtype=float)
    if v.size < 2:
        raise ConfigError("Richardson extrapolation needs at least two grids")
    if order is None:
        if v.size < 3:
            raise ConfigError("three grids are needed to estimate the order")
        d1, d2 = v[-2] - v[-3], v[-1] - v[-2]
        if d2 == 0.0:
            return RichardsonResult(float(v[-1]), float("inf"), tuple(v.tolist()))
        order = float(np.log(abs(d1 / d2)) / np.log(ratio))
    factor = ratio**order - 1.0
    return RichardsonResult(float(v[-1] + (v[-1] - v[-2]) / factor), float(order), tuple(v.tolist()))


@dataclass
class ConvergenceStudy:
    cells: List[int]
    errors: List[float]
    drifts: List[float]
    order: float
    drift_order: Optional[float]
    reference_cells: int

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _final_slice(D, bc, data_fn, N, t_end, cfl, sbp_order, penalty_sign):
    grid = make_grid(D, N, t1=t_end, cfl=cfl, order=sbp_order)
    hist = evolve(D, bc, data_fn(grid.x), grid, store_every=10**9, penalty_sign=penalty_sign)
    return hist


def convergence_study(
    D: FirstOrderSystem,
    bc: BoundaryCondition,
    data_fn: DataFactory,
    cells: Sequence[int],
    t_end: float,
    reference_cells: Optional[int] = None,
    cfl: float = 0.25,
    sbp_order: int = 2,
    max_workers: int = 1,
) -> ConvergenceStudy:
    """Final-time errors against a fine reference run, with nested nodes (reference_cells a multiple of each N)."""
    cells = sorted(int(n) for n in cells)
    reference_cells = reference_cells or 4 * cells[-1]
    if any(reference_cells % n for n in cells):
        raise ConfigError("reference_cells must be a multiple of every grid size")
    runs = list(cells) + [reference_cells]

    def run(n: int) -> SpinorHistory:
        return _final_slice(D, bc, data_fn, n, t_end, cfl, sbp_order, 1)

    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            hists = list(pool.map(run, runs))
    else:
        hists = [run(n) for n in runs]
    ref = hists[-1]
    errors, drifts = [], []
    for n, hist in zip(cells, hists[:-1]):
        stride = reference_cells // n
        diff = hist.final - ref.final[..., ::stride, :]
        errors.append(float(np.sqrt(np.sum(hist.norm * np.sum(np.abs(diff) ** 2, axis=-1)))))
        drifts.append(hist.report.drift())
    hs = [D.metric.domain.length / n for n in cells]
    order = estimate_order(hs, errors)
    drift_order = estimate_order(hs, drifts) if all(d > 0.0 for d in drifts) else None
    logger.info("convergence: cells=%s errors=%s order=%.2f", cells, ["%.2e" % e for e in errors], order)
    return ConvergenceStudy(cells, errors, drifts, order, drift_order, reference_cells)


def uniqueness_check(
    D: FirstOrderSystem,
    bc: BoundaryCondition,
    data: np.ndarray,
    N: int,
    t_end: float,
    cfls: Sequence[float] = (0.5, 0.25),
) -> float:
    """Max H-norm difference of the final slices of runs that differ only in their CFL number."""
    finals = []
    norm = None
    for cfl in cfls:
        hist = evolve(D, bc, data, make_grid(D, N, t1=t_end, cfl=cfl), store_every=10**9)
        finals.append(hist.final)
        norm = hist.norm
    ref = finals[0]
    return max(float(np.sqrt(np.sum(norm * np.sum(np.abs(f - ref) ** 2, axis=-1)))) for f in finals[1:]) if len(finals) > 1 else 0.0


def mass_outside_interval(hist: SpinorHistory, a: float, b: float, speed: float, margin_cells: float = 3.0) -> float:
    """Largest fraction (over stored times) of sum_j H_j |psi|^2 outside [a - s tau - m, b + s tau + m]."""
    worst = 0.0
    margin = margin_cells * hist.grid.dx
    for t, s in zip(hist.times, hist.slices):
        tau = abs(t - hist.times[0])
        density = hist.norm * np.sum(np.abs(s) ** 2, axis=-1).reshape(-1, hist.x.size).sum(axis=0)
        total = float(np.sum(density))
        if total == 0.0:
            continue
        outside = (hist.x < a - speed * tau - margin) | (hist.x > b + speed * tau + margin)
        worst = max(worst, float(np.sum(density[outside]) / total))
    return worst


def peak_location(hist: SpinorHistory, t: float, component: Optional[int] = None) -> float:
    """x of max |psi| (or |psi_component|) at the stored slice nearest t."""
    s = hist.slices[hist.index_of(t)]
    mag = np.abs(s[..., component]) if component is not None else np.sqrt(np.sum(np.abs(s) ** 2, axis=-1))
    return float(hist.x[int(np.argmax(mag.reshape(-1, hist.x.size).max(axis=0)))])
