from __future__ import annotations

"""Grid convergence of the solver and skew-adjointness of the interpolated operator."""

import math

import numpy as np

from ..boundary import make_boundary_condition
from ..moller import make_plan
from ..operators import build_dirac, check_skew_adjoint, potential_from_spec
from ..solver import convergence_study, estimate_order, evolve, make_grid, slice_independence, uniqueness_check
from ..spin import make_canonical_rep
from .base import BaseSuite, SuiteContext, SuiteResult
from .fixtures import bump_data, bump_slice, random_spinor

ORDER_MIN = 1.9
REFERENCE_FACTOR = 4
STALL_ORDER = 1.0
ROUNDOFF = 1e-12


def reference_cells(grids: list[int]) -> int:
    """Smallest common multiple of the ladder that is at least REFERENCE_FACTOR times its finest grid."""
    lcm = math.lcm(*grids)
    return lcm * max(1, math.ceil(REFERENCE_FACTOR * grids[-1] / lcm))


class ConvergenceSuite(BaseSuite):
    name = "convergence"
    version = "1.0"
    description = "Solver order against a refined reference, slice independence, skew-adjointness of D_chi"

    def run(self, context: SuiteContext) -> SuiteResult:
        result = SuiteResult(self.name)
        config = context.config
        rep = make_canonical_rep()
        g = config.metric0()
        potential = potential_from_spec(rep, config.potential_spec())
        D = build_dirac(g, rep, potential)
        bc = make_boundary_condition("mit", rep, g)
        rng = context.rng(self.name)
        length = config.domain.length
        spinor = random_spinor(rng)
        data_fn = bump_data(0.5 * length, 0.2 * length, spinor)

        if len(context.grids) < 2:
            result.at_least("grid_ladder", float(len(context.grids)), 2.0, "orders need at least two grids")
            return result

        study = convergence_study(
            D, bc, data_fn, context.grids, config.domain.t_end,
            reference_cells=reference_cells(context.grids), cfl=config.cfl,
            sbp_order=config.sbp_order, max_workers=context.settings.threads,
        )
        result.metrics["solver"] = study.to_dict()
        result.metrics["grid_sizes"] = context.grids
        result.at_least("solver_order", study.order, ORDER_MIN, f"reference N={study.reference_cells}")

        N = context.finest
        grid = make_grid(D, N, cfl=config.cfl, order=config.sbp_order)
        other = bump_slice(grid.x, 0.45 * length, 0.15 * length, random_spinor(rng))
        hist_a = evolve(D, bc, data_fn(grid.x), grid, store_every=max(1, N // 20))
        hist_b = evolve(D, bc, other, grid, store_every=max(1, N // 20))
        result.metrics["slice_independence"] = slice_independence(D, hist_a, hist_b)
        result.metrics["cfl_uniqueness"] = uniqueness_check(D, bc, data_fn(grid.x), N, config.domain.t_end)

        plan = make_plan(config.metric0(), config.metric1(), config.chi.t_minus, config.chi.t_plus, N, config.chi.kind, rep=rep, potential=potential)
        control = make_plan(
            config.metric0(), config.metric1(), config.chi.t_minus, config.chi.t_plus, N, config.chi.kind,
            rep=rep, potential=potential, include_dchi_correction=False,
        )

        def skew(n: int) -> tuple[float, float]:
            return check_skew_adjoint(plan.D_chi, cells=n), check_skew_adjoint(control.D_chi, cells=n)

        pairs = context.map(skew, context.grids)
        with_correction = [p[0] for p in pairs]
        without = [p[1] for p in pairs]
        hs = [length / n for n in context.grids]
        result.metrics.update({"skew_residuals": with_correction, "skew_residuals_without_dchi": without})
        if max(with_correction) <= ROUNDOFF:
            result.at_most("skew_adjoint", max(with_correction), 1e-10, "constant coefficients")
        elif all(r > 0.0 for r in with_correction):
            order = estimate_order(hs, with_correction)
            result.metrics["skew_order"] = order
            result.at_least("skew_adjoint_order", order, ORDER_MIN, "interpolated operator D_chi")
        if config.g0 != config.g1 and all(r > 0.0 for r in without):
            stalled = estimate_order(hs, without)
            result.metrics["skew_order_without_dchi"] = stalled
            result.at_most("dchi_correction_required", stalled, STALL_ORDER, "omitting the correction must stall convergence")
        result.metrics["skew_gap"] = float(np.max(np.asarray(without) - np.asarray(with_correction)))
        return result
