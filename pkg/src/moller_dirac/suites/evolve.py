from __future__ import annotations

"""Energy stability of the boundary-penalised solver, with a wrong-sign negative control."""

import logging

import numpy as np

from ..boundary import make_boundary_condition
from ..errors import DivergenceError
from ..operators import build_dirac, potential_from_spec
from ..solver import estimate_order, evolve, make_grid, peak_location, round_trip
from ..spin import make_canonical_rep
from .base import BaseSuite, SuiteContext, SuiteResult
from .fixtures import bump_slice, random_spinor

logger = logging.getLogger(__name__)

DRIFT_TOL = 1e-5
DRIFT_REFERENCE_CELLS = 400
ROUND_TRIP_TOL = 1e-3
SELF_ADJOINT_KINDS = ("mit", "chiral+", "chiral-")


def drift_threshold(cells: int) -> float:
    """DRIFT_TOL at the reference grid, scaled like dx^2 on coarser ones."""
    return DRIFT_TOL * max(1.0, (DRIFT_REFERENCE_CELLS / cells) ** 2)


class EvolveSuite(BaseSuite):
    name = "evolve"
    version = "1.0"
    description = "Relative energy drift of bump data, round trip, translation speed and the wrong penalty sign"

    def run(self, context: SuiteContext) -> SuiteResult:
        result = SuiteResult(self.name)
        config = context.config
        rep = make_canonical_rep()
        g = config.metric0()
        D = build_dirac(g, rep, potential_from_spec(rep, config.potential_spec()))
        rng = context.rng(self.name)
        length = config.domain.length
        spinor = random_spinor(rng)
        N = context.finest
        grid = make_grid(D, N, cfl=config.cfl, order=config.sbp_order)
        data = bump_slice(grid.x, 0.5 * length, 0.2 * length, spinor)
        threshold = drift_threshold(N)
        kinds = [k for k in config.boundary if k in SELF_ADJOINT_KINDS] or ["mit"]

        for kind in kinds:
            bc = make_boundary_condition(kind, rep, g)
            hist = evolve(D, bc, data, grid, store_every=max(1, N // 20))
            e0 = hist.report.energy[0]
            result.at_most(f"energy_drift_{kind}", hist.report.drift() / e0, threshold, f"N={N}, relative to the initial energy")
            result.at_least(f"trace_finite_{kind}", float(hist.report.is_finite()), 1.0)
            result.traces[kind] = hist.report
            if context.snapshots:
                result.snapshots[kind] = hist

        bc = make_boundary_condition("mit", rep, g)

        def drift_at(n: int) -> float:
            run_grid = make_grid(D, n, cfl=config.cfl, order=config.sbp_order)
            run = evolve(D, bc, bump_slice(run_grid.x, 0.5 * length, 0.2 * length, spinor), run_grid, store_every=10**9)
            return run.report.drift() / run.report.energy[0]

        drifts = context.map(drift_at, context.grids)
        result.metrics["drifts"] = drifts
        if len(drifts) > 1 and all(d > 0.0 for d in drifts):
            result.metrics["drift_order"] = estimate_order([length / n for n in context.grids], drifts)

        # negative control: flipping the penalty sign must break the energy estimate
        try:
            wrong = evolve(D, bc, data, grid, store_every=10**9, penalty_sign=-1)
            wrong_drift = wrong.report.drift() / wrong.report.energy[0]
            detected = not np.isfinite(wrong_drift) or wrong_drift > threshold
        except DivergenceError as exc:
            logger.info("wrong penalty sign diverged: %s", exc)
            wrong_drift = float("inf")
            detected = True
        result.metrics["wrong_penalty_drift"] = wrong_drift
        result.at_least("wrong_penalty_detected", float(detected), 1.0, "penalty_sign=-1 must fail the drift bound")

        recovered = round_trip(D, bc, data, grid, store_every=10**9)
        scale = float(np.max(np.abs(data)))
        result.at_most("round_trip", float(np.max(np.abs(recovered - data))) / scale, ROUND_TRIP_TOL, f"N={N}")

        if config.g0.preset == "minkowski" and config.mass == 0.0:
            self._translation(context, result, D, bc)
        return result

    def _translation(self, context: SuiteContext, result: SuiteResult, D, bc) -> None:
        """The first spinor component of a massless flat solution moves right at unit speed."""
        config = context.config
        length = config.domain.length
        N = context.finest
        grid = make_grid(D, N, cfl=config.cfl, order=config.sbp_order)
        start = 0.4 * length
        tau = min(0.2 * length, 0.5 * (config.domain.t_end - config.domain.t_start))
        data = bump_slice(grid.x, start, 0.1 * length, np.array([1.0, 0.0]))
        hist = evolve(D, bc, data, grid, save_times=[config.domain.t_start + tau], store_every=10**9)
        error = abs(peak_location(hist, config.domain.t_start + tau, component=0) - (start + tau))
        result.at_most("translation_speed", error / grid.dx, 2.0, "peak offset in cells")
