from __future__ import annotations

"""Clifford algebra, vector/spinor transport and principal-symbol identities."""

import numpy as np

from ..geometry import MetricPath
from ..operators import build_dirac, check_symmetry, intertwine
from ..spin import (
    clifford_of,
    make_canonical_rep,
    metric_norm_sq,
    transport_covector,
    transport_result,
    transport_vector,
    transport_vector_closed,
)
from .base import BaseSuite, SuiteContext, SuiteResult
from .fixtures import random_metric_pair, sample_points

ALGEBRA_TOL = 1e-12
TRANSPORT_TOL = 1e-8
POINTS_PER_TRIAL = 16


class CliffordSuite(BaseSuite):
    name = "check-clifford"
    version = "1.0"
    description = "Gamma matrices, transport closed form vs ODE, kappa isometry and symbol intertwining"

    def run(self, context: SuiteContext) -> SuiteResult:
        result = SuiteResult(self.name)
        rep = make_canonical_rep()
        invariants = rep.check_invariants()
        for key, value in invariants.items():
            if key == "spin_form_indefinite":
                result.at_least("spin_form_indefinite", value, 1.0)
            else:
                result.at_most(f"rep_{key}", value, ALGEBRA_TOL)

        rng = context.rng(self.name)
        domain = context.config.domain
        closed_err = isometry_err = intertwine_err = spin_err = symbol_err = 0.0
        normal_min = np.inf
        for _ in range(context.config.trials):
            g0, g1 = random_metric_pair(rng, domain)
            path = MetricPath(g0, g1)
            t, x = sample_points(rng, domain, POINTS_PER_TRIAL)
            y0 = rng.normal(size=(2, POINTS_PER_TRIAL))
            ode = transport_vector(path, t, x, (y0[0], y0[1]))
            closed = transport_vector_closed(path, t, x, (y0[0], y0[1]))
            closed_err = max(closed_err, float(np.max(np.abs(ode - closed))))
            moved_norm = metric_norm_sq(g1, t, x, (ode[..., 0], ode[..., 1]))
            isometry_err = max(isometry_err, float(np.max(np.abs(moved_norm - metric_norm_sq(g0, t, x, y0)))))

            # boundary normal n0 = h0^-1/2 d_x
            n0 = 1.0 / np.sqrt(g0.spatial(t, x))
            moved_n = transport_vector(path, t, x, (np.zeros_like(n0), n0))
            normal_min = min(normal_min, float(np.min(g1.spatial(t, x) * moved_n[..., 1] * n0)))

            res = transport_result(path, t, x, rep, closed=False)
            kappa = res.kappa
            for col, v in enumerate(((1.0, 0.0), (0.0, 1.0))):
                image = (res.wp[..., 0, col], res.wp[..., 1, col])
                lhs = clifford_of(rep, g1, t, x, image) @ kappa
                rhs = kappa @ clifford_of(rep, g0, t, x, (np.full_like(t, v[0]), np.full_like(t, v[1])))
                intertwine_err = max(intertwine_err, float(np.max(np.abs(lhs - rhs))))
            m = rep.spin_form
            spin_err = max(spin_err, float(np.max(np.abs(np.conj(np.swapaxes(kappa, -1, -2)) @ m @ kappa - m))))

            D0 = build_dirac(g0, rep)
            D1 = build_dirac(g1, rep)
            D01 = intertwine(D0, g1)
            xi = rng.normal(size=(2, POINTS_PER_TRIAL))
            moved_xi = transport_covector(path, t, x, (xi[0], xi[1]))
            diff = D01.symbol(t, x, xi[0], xi[1]) - D1.symbol(t, x, moved_xi[..., 0], moved_xi[..., 1])
            symbol_err = max(symbol_err, float(np.max(np.abs(diff))), check_symmetry(D01, samples=POINTS_PER_TRIAL))

        detail = f"{context.config.trials} random metric pairs"
        result.at_most("transport_closed_form", closed_err, TRANSPORT_TOL, detail)
        result.at_most("transport_isometry", isometry_err, TRANSPORT_TOL, detail)
        result.at_least("transported_normal_positive", normal_min, np.finfo(float).tiny, detail)
        result.at_most("kappa_clifford_intertwining", intertwine_err, TRANSPORT_TOL, detail)
        result.at_most("kappa_spin_isometry", spin_err, TRANSPORT_TOL, detail)
        result.at_most("symbol_intertwining", symbol_err, TRANSPORT_TOL, detail)

        g = context.config.metric1()
        same = MetricPath(g, g)
        t, x = sample_points(rng, domain, POINTS_PER_TRIAL)
        kappa = transport_result(same, t, x, rep).kappa
        result.at_most("kappa_identity_same_metric", float(np.max(np.abs(kappa - np.eye(2)))), ALGEBRA_TOL)
        result.metrics.update({"trials": context.config.trials, "transport_closed_form": closed_err})
        return result
