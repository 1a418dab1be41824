from __future__ import annotations

"""Retarded/advanced Green operators: causal support against the g_C cone and the solution residual."""

import numpy as np

from ..boundary import make_boundary_condition
from ..geometry import cone_bound
from ..operators import build_dirac, potential_from_spec
from ..solver import (
    causal_propagator,
    cone_speed,
    estimate_order,
    evolve,
    green,
    make_grid,
    mass_outside_cone,
    mass_outside_interval,
    source_support,
    spacetime_residual,
)
from ..spin import make_canonical_rep
from .base import BaseSuite, SuiteContext, SuiteResult
from .fixtures import bump_slice, random_bump_source, random_spinor

CONE_MASS_TOL = 1e-10
ORDER_MIN = 1.9


class GreenSuite(BaseSuite):
    name = "green"
    version = "1.0"
    description = "Support of G+-f inside the inflated g_C cones, D(G+-f) = f residual order, propagation of data"

    def run(self, context: SuiteContext) -> SuiteResult:
        result = SuiteResult(self.name)
        config = context.config
        rep = make_canonical_rep()
        g0, g1 = config.metric0(), config.metric1()
        D = build_dirac(g0, rep, potential_from_spec(rep, config.potential_spec()))
        bc = make_boundary_condition("mit", rep, g0)
        speed = cone_speed(D, cone_bound(g0, g1))
        rng = context.rng(self.name)
        d = config.domain
        N = context.finest
        grid = make_grid(D, N, cfl=config.cfl, order=config.sbp_order)
        result.metrics["cone_speed"] = speed

        sources = [random_bump_source(rng, d, (d.t_start, d.t_end)) for _ in range(config.trials)]

        def outside(source) -> float:
            support = source_support(D, source)
            worst = 0.0
            for direction in (1, -1):
                hist = green(D, bc, source, direction, grid, store_every=1)
                worst = max(worst, mass_outside_cone(hist, support, speed, direction))
            return worst

        masses = context.map(outside, sources)
        result.at_most("green_cone_mass", max(masses), CONE_MASS_TOL, f"{len(sources)} random sources, N={N}")

        # finite propagation of Cauchy data: bump in [a, b] stays in [a - s tau, b + s tau] + 3 dx
        length = d.length
        a, b = 0.4 * length, 0.6 * length
        data = bump_slice(grid.x, 0.5 * length, 0.1 * length, random_spinor(rng))
        hist = evolve(D, bc, data, grid, store_every=1)
        result.at_most("cauchy_cone_mass", mass_outside_interval(hist, a, b, speed), CONE_MASS_TOL)

        source = sources[0]

        def residuals(n: int) -> tuple[float, float]:
            run_grid = make_grid(D, n, cfl=config.cfl, order=config.sbp_order)
            plus = green(D, bc, source, 1, run_grid, store_every=1)
            prop = causal_propagator(D, bc, source, run_grid, store_every=1)
            return spacetime_residual(D, plus, source), spacetime_residual(D, prop)

        pairs = context.map(residuals, context.grids)
        retarded = [p[0] for p in pairs]
        causal = [p[1] for p in pairs]
        result.metrics.update({"retarded_residuals": retarded, "causal_residuals": causal, "grid_sizes": context.grids})
        if len(context.grids) > 1:
            hs = [length / n for n in context.grids]
            order = estimate_order(hs, retarded)
            result.metrics["residual_order"] = order
            result.at_least("green_residual_order", order, ORDER_MIN)
            if all(r > 0.0 for r in causal):
                result.metrics["causal_residual_order"] = estimate_order(hs, causal)
        return result
