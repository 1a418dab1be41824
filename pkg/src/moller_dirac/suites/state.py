from __future__ import annotations

"""Quasi-free states: CAR layer, ground state and spectral oracle, pullback along R, two-point checks."""

import logging
from typing import List

import numpy as np

from ..boundary import make_boundary_condition
from ..errors import ContractError
from ..geometry import is_ultrastatic
from ..moller import make_plan
from ..operators import build_dirac, potential_from_spec
from ..quantize import (
    SlicedState,
    car_representation,
    field_equation_residual,
    ground_state,
    lowest_positive_eigenvalue,
    mit_shooting_eigenvalue,
    near_future_coincidence,
    orthonormal_space,
    positivity_min,
    pullback_state,
    quasi_free_expectation,
    state_from_projector,
    state_report,
)
from ..solver import estimate_order
from ..spin import make_canonical_rep
from .base import BaseSuite, SuiteContext, SuiteResult
from .fixtures import bump_source, random_bump_source, random_spinor

logger = logging.getLogger(__name__)

CAR_TOL = 1e-13
FACTORIZATION_TOL = 1e-12
STATE_TOL = 1e-12
IMAG_TOL = 1e-8
ORACLE_TOL = 1e-4
COINCIDENCE_TOL = 1e-3
POSITIVITY_TOL = -1e-10
ORDER_MIN = 1.9
CAR_MODES = (1, 2, 3, 4)
MIN_ORACLE_CELLS = 16


def _unit(space, z: np.ndarray) -> np.ndarray:
    return z / np.sqrt(abs(space.inner(z, z)))


class StateSuite(BaseSuite):
    name = "state"
    version = "1.0"
    description = "CAR identities, ground state of D1 with a shooting oracle, pulled-back state and near-future coincidence"

    def run(self, context: SuiteContext) -> SuiteResult:
        result = SuiteResult(self.name)
        rng = context.rng(self.name)
        self._car_checks(result, rng)

        config = context.config
        g1 = config.metric1()
        result.at_least("g1_ultrastatic", float(is_ultrastatic(g1)), 1.0, "ground states need a static M1")
        if not is_ultrastatic(g1):
            return result

        rep = make_canonical_rep()
        potential = potential_from_spec(rep, config.potential_spec())
        D1 = build_dirac(g1, rep, potential)
        bc1 = make_boundary_condition("mit", rep, g1)
        N = context.finest
        gs = ground_state(D1, bc1, N, config.sbp_order)
        cert = gs.state.certify()
        result.at_most("hamiltonian_imag_spectrum", gs.hamiltonian.imag_residual, IMAG_TOL, f"N={N}")
        result.at_most("ground_hermitian", cert["hermitian"], STATE_TOL)
        result.at_least("ground_Q_min", cert["Q_spectrum_min"], -STATE_TOL)
        result.at_most("ground_Q_max", cert["Q_spectrum_max"], 1.0 + STATE_TOL)
        result.at_most("ground_gamma_residual", cert["gamma_residual"], STATE_TOL)
        result.metrics["ground_state"] = gs.to_dict()

        self._oracle(context, result, D1, bc1, g1, rep, potential)

        plan = make_plan(
            config.metric0(), g1, config.chi.t_minus, config.chi.t_plus, N, config.chi.kind,
            rep=rep, potential=potential, cfl=config.cfl, sbp_order=config.sbp_order,
        )
        resolved = gs.resolved_state()
        try:
            pulled = pullback_state(resolved, plan)
        except ContractError as exc:
            result.at_most("pullback_unitarity", float("inf"), 1.0, str(exc))
            return result
        eps = 4.0 * pulled.unitarity_deviation + STATE_TOL
        pcert = pulled.state.certify()
        result.metrics["pullback"] = pulled.to_dict()
        result.at_least("pulled_Q_min", pcert["Q_spectrum_min"], -eps, "within the measured unitarity budget")
        result.at_most("pulled_Q_max", pcert["Q_spectrum_max"], 1.0 + eps)
        result.at_most("pulled_gamma_residual", pcert["gamma_residual"], eps)

        samples: List[complex] = []
        worst = 0.0
        d = config.domain
        for _ in range(config.trials):
            f1 = random_bump_source(rng, d, (config.chi.t_plus, d.t_end))
            f2 = random_bump_source(rng, d, (config.chi.t_plus, d.t_end))
            hit = near_future_coincidence(pulled, resolved, f1, f2)
            samples.append(hit.omega_chi)
            worst = max(worst, hit.relative)
        result.at_most("near_future_coincidence", worst, COINCIDENCE_TOL, f"{config.trials} section pairs, N={N}")

        report = state_report(pulled.state, samples, seed=int(rng.integers(2**31)))
        result.at_least("positivity", report["positivity_min"], POSITIVITY_TOL, "random elements of degree <= 2")
        result.metrics.update(report)

        self._field_equation(context, result, D1, bc1, rng)
        return result

    def _car_checks(self, result: SuiteResult, rng: np.random.Generator) -> None:
        worst = 0.0
        for k in CAR_MODES:
            space = orthonormal_space(k)
            car = car_representation(space)
            z1 = _unit(space, rng.normal(size=space.dim) + 1j * rng.normal(size=space.dim))
            z2 = _unit(space, rng.normal(size=space.dim) + 1j * rng.normal(size=space.dim))
            worst = max(worst, max(car.car_residuals(z1, z2).values()))
            c1 = rng.normal(size=k) + 1j * rng.normal(size=k)
            c2 = rng.normal(size=k) + 1j * rng.normal(size=k)
            worst = max(worst, max(car.field_residuals(c1 / np.linalg.norm(c1), c2 / np.linalg.norm(c2)).values()))
        result.at_most("car_identities", worst, CAR_TOL, f"k in {list(CAR_MODES)}")

        space = orthonormal_space(2)
        car = car_representation(space)
        vacuum = state_from_projector(space, np.zeros((2, 2)))
        zs = [_unit(space, rng.normal(size=space.dim) + 1j * rng.normal(size=space.dim)) for _ in range(4)]
        direct = car.expectation(car.xi(zs[0]) @ car.xi(zs[1]) @ car.xi(zs[2]) @ car.xi(zs[3]))
        result.at_most("four_point_factorization", abs(direct - quasi_free_expectation(vacuum, zs)), FACTORIZATION_TOL, "k=2")
        result.at_least("vacuum_positivity", positivity_min(vacuum, samples=10, seed=int(rng.integers(2**31))), POSITIVITY_TOL)

    def _oracle(self, context: SuiteContext, result: SuiteResult, D1, bc1, g1, rep, potential) -> None:
        config = context.config
        length = config.domain.length
        base = max(MIN_ORACLE_CELLS, context.finest // 4)
        # one cell parity keeps the eigenvalue on one branch of the doubled spectrum
        base += base % 2
        cells = [base, 2 * base, 4 * base]
        study = lowest_positive_eigenvalue(D1, bc1, cells, config.sbp_order)
        upper = 3.0 / length + config.mass
        oracle = mit_shooting_eigenvalue(g1, rep, bracket=(0.1 / length, upper), potential=potential)
        result.metrics["eigenvalue_study"] = study.to_dict()
        result.metrics["shooting_eigenvalue"] = oracle
        result.at_most("eigenvalue_vs_shooting", abs(study.extrapolated.value - oracle), ORACLE_TOL, f"cells {cells}")

    def _field_equation(self, context: SuiteContext, result: SuiteResult, D1, bc1, rng: np.random.Generator) -> None:
        config = context.config
        d = config.domain
        mid = 0.5 * (d.t_start + d.t_end)
        width = 0.15 * (d.t_end - d.t_start)
        f = bump_source(mid, 0.5 * d.length, width, 0.15 * d.length, random_spinor(rng))
        f_prime = bump_source(mid, 0.45 * d.length, width, 0.12 * d.length, random_spinor(rng))

        def residual(n: int) -> float:
            gs = ground_state(D1, bc1, n, config.sbp_order)
            sliced = SlicedState(D1, bc1, gs.state, d.t_end, n, cfl=config.cfl, sbp_order=config.sbp_order)
            return field_equation_residual(sliced, f, f_prime)

        values = context.map(residual, context.grids)
        result.metrics["field_equation_residuals"] = values
        if len(values) > 1 and all(v > 0.0 for v in values):
            order = estimate_order([d.length / n for n in context.grids], values)
            result.metrics["field_equation_order"] = order
            result.at_least("field_equation_order", order, ORDER_MIN)
