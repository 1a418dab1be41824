from __future__ import annotations

"""Moller map: Gram-matrix unitarity over the grid ladder, exact case, wrong-f control, round trip."""

from typing import Any, Dict

import numpy as np

from ..moller import (
    MollerPlan,
    decomposed_forward,
    gram,
    gram_deviation,
    make_plan,
    moller_forward,
    moller_inverse,
    slice_pairing,
)
from ..operators import potential_from_spec
from ..solver import evolve, estimate_order
from ..spin import make_canonical_rep
from .base import BaseSuite, SuiteContext, SuiteResult
from .fixtures import bump_slice, random_spinor

DEVIATION_TOL = 1e-4
EXACT_TOL = 1e-10
LINEARITY_TOL = 1e-12
ROUND_TRIP_TOL = 1e-3
ORDER_MIN = 1.9
FAMILY_SIZE = 5
WRONG_F_SCALE = 1.1


def _family(plan: MollerPlan, rng: np.random.Generator, size: int = FAMILY_SIZE) -> np.ndarray:
    length = plan.path.domain.length
    centers = np.linspace(0.35, 0.65, size) * length
    return np.stack([bump_slice(plan.x, c, 0.12 * length, random_spinor(rng)) for c in centers])


def relative_gram_deviation(plan: MollerPlan, family: np.ndarray) -> float:
    before = gram(plan.D0, plan.t_minus, family, plan.N, plan.sbp_order)
    return gram_deviation(plan, family) / float(np.max(np.abs(before)))


class MollerSuite(BaseSuite):
    name = "moller"
    version = "1.0"
    description = "Unitarity of R on a solution family, its convergence order, exact case, wrong-f control, round trip"

    def _plan(self, context: SuiteContext, N: int, **options: Any) -> MollerPlan:
        config = context.config
        rep = make_canonical_rep()
        options.setdefault("potential", potential_from_spec(rep, config.potential_spec()))
        g0 = options.pop("g0", None) or config.metric0()
        g1 = options.pop("g1", None) or config.metric1()
        chi = config.chi
        return make_plan(g0, g1, chi.t_minus, chi.t_plus, N, chi.kind, rep=rep, cfl=config.cfl, sbp_order=config.sbp_order, **options)

    def run(self, context: SuiteContext) -> SuiteResult:
        result = SuiteResult(self.name)
        grids = context.grids
        seed = int(context.rng(self.name).integers(2**31))

        def sweep(n: int) -> Dict[str, float]:
            plan = self._plan(context, n)
            family = _family(plan, np.random.default_rng(seed))
            deviation = relative_gram_deviation(plan, family)
            psi = family[0]
            back = moller_inverse(plan, moller_forward(plan, psi), check=False)
            norm = np.sqrt(abs(slice_pairing(plan.D0, plan.t_minus, psi, psi, plan.N, plan.sbp_order)))
            diff = back - psi
            trip = np.sqrt(abs(slice_pairing(plan.D0, plan.t_minus, diff, diff, plan.N, plan.sbp_order))) / norm
            return {"deviation": deviation, "round_trip": float(trip)}

        rows = context.map(sweep, grids)
        deviations = [r["deviation"] for r in rows]
        trips = [r["round_trip"] for r in rows]
        hs = [context.config.domain.length / n for n in grids]
        result.metrics.update({"grid_sizes": grids, "deviations": deviations, "round_trips": trips, "deviation": deviations[-1]})
        result.at_most("unitarity_deviation", deviations[-1], DEVIATION_TOL, f"N={grids[-1]}, {FAMILY_SIZE}-solution family")
        result.at_most("round_trip", trips[-1], ROUND_TRIP_TOL, f"N={grids[-1]}")
        order = None
        if len(grids) > 1 and all(d > 0.0 for d in deviations):
            order = estimate_order(hs, deviations)
            result.at_least("unitarity_order", order, ORDER_MIN)
            if all(t > 0.0 for t in trips):
                result.metrics["round_trip_order"] = estimate_order(hs, trips)
        result.metrics["order_estimate"] = order

        N = grids[-1]
        rng = np.random.default_rng(seed)
        plan = self._plan(context, N)
        family = _family(plan, rng)

        # linearity of R: one batched run against the combination of separate runs
        a, b = rng.normal(size=2) + 1j * rng.normal(size=2)
        images = moller_forward(plan, np.stack([family[0], family[1], a * family[0] + b * family[1]]))
        combo = a * images[0] + b * images[1]
        result.at_most("linearity", float(np.max(np.abs(images[2] - combo)) / np.max(np.abs(combo))), LINEARITY_TOL)

        one, two = decomposed_forward(plan, family[0])
        result.at_most("decomposition", float(np.max(np.abs(one - two)) / np.max(np.abs(two))), EXACT_TOL, "D_chi past t_plus vs D_1")

        wrong = self._plan(context, N, f_scale=WRONG_F_SCALE)
        wrong_dev = relative_gram_deviation(wrong, family)
        result.metrics["wrong_f_deviation"] = wrong_dev
        result.at_least("wrong_f_detected", float(wrong_dev > DEVIATION_TOL), 1.0, f"f scaled by {WRONG_F_SCALE}")

        g1 = context.config.metric1()
        exact = self._plan(context, N, g0=g1, g1=g1)
        identity = float(np.max(np.abs(exact.kappa_f(exact.t_minus) - np.eye(2))))
        result.at_most("exact_case_kappa_f", identity, EXACT_TOL, "f kappa = Id for g0 = g1")
        image = moller_forward(exact, family)
        grid = exact.grid(exact.t_minus, exact.t_plus)
        direct = evolve(exact.D1, exact.bc1, family, grid, store_every=10**9, dissipation=exact.dissipation).final
        result.at_most("exact_case", float(np.max(np.abs(image - direct)) / np.max(np.abs(direct))), EXACT_TOL, "g0 = g1")
        flow = gram(exact.D1, exact.t_plus, direct, N, exact.sbp_order)
        mapped = gram(exact.D1, exact.t_plus, image, N, exact.sbp_order)
        result.at_most(
            "exact_case_gram_deviation",
            float(np.max(np.abs(mapped - flow)) / np.max(np.abs(flow))),
            EXACT_TOL,
            "Gram of R against the D1 flow, g0 = g1",
        )
        result.metrics["exact_case_solver_drift"] = relative_gram_deviation(exact, family)
        return result
