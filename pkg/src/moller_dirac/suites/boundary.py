from __future__ import annotations

"""Boundary projector algebra, admissibility, adjoints and the interpolating spaces."""

import numpy as np

from ..boundary import (
    admissibility_certificate,
    check_compatibility,
    conformal_residual,
    double_adjoint_distance,
    make_boundary_condition,
    mit_projector,
    null_form_residual,
    projector_residuals,
    random_admissible_space,
)
from ..geometry import MetricPath
from ..geometry.fields import bump_2d
from ..operators import build_dirac, normal_symbol
from ..spin import make_canonical_rep, transport_spinor
from .base import BaseSuite, SuiteContext, SuiteResult
from .fixtures import bump_slice, random_spinor

ALGEBRA_TOL = 1e-12
INTERPOLATION_TOL = 1e-8
BOUNDARY_SAMPLES = 1000
STATIC_KINDS = ("mit", "chiral+", "chiral-")


class BoundarySuite(BaseSuite):
    name = "check-boundary"
    version = "1.0"
    description = "Projector identities, null boundary form, admissibility, adjoints, interpolated MIT limits"

    def run(self, context: SuiteContext) -> SuiteResult:
        result = SuiteResult(self.name)
        config = context.config
        rep = make_canonical_rep()
        rng = context.rng(self.name)
        d = config.domain
        times = np.sort(rng.uniform(d.t_start, d.t_end, BOUNDARY_SAMPLES))
        metrics = {"g0": config.metric0(), "g1": config.metric1()}
        kinds = [k for k in config.boundary if k in STATIC_KINDS] or ["mit"]

        def omega(t, x):
            return 1.0 + 0.3 * bump_2d(t, x, 0.5 * (d.t_start + d.t_end), 0.5 * d.length, d.t_end - d.t_start, d.length)

        for kind in kinds:
            for label, g in metrics.items():
                D = build_dirac(g, rep)
                bc = make_boundary_condition(kind, rep, g)
                for B in bc.spaces():
                    tag = f"{kind}_{label}_{B.side}"
                    result.at_most(f"projector_{tag}", max(projector_residuals(B, times).values()), ALGEBRA_TOL)
                    result.at_most(f"null_form_{tag}", null_form_residual(rep, D, B, times), ALGEBRA_TOL)
                    cert = admissibility_certificate(D, B)
                    result.at_least(f"admissible_{tag}", float(cert.future_admissible and cert.past_admissible), 1.0)
                    result.at_most(f"self_adjoint_{tag}", cert.adjoint_distance, 1e-10)
                    result.metrics[f"certificate_{tag}"] = cert.to_dict()
            result.at_most(f"conformal_invariance_{kind}", conformal_residual(rep, metrics["g1"], omega, kind), ALGEBRA_TOL)

        g1 = metrics["g1"]
        D1 = build_dirac(g1, rep)
        worst = 0.0
        for trial in range(config.trials):
            side = "left" if trial % 2 == 0 else "right"
            B = random_admissible_space(rep, g1, side, seed=int(rng.integers(2**31)))
            t = float(rng.uniform(d.t_start, d.t_end))
            worst = max(worst, double_adjoint_distance(B, lambda s, side=side: normal_symbol(D1, side, s), rep.spin_form, t))
        result.at_most("double_adjoint", worst, 1e-10, f"{config.trials} random rank-1 spaces")

        self._interpolation_checks(context, result, rep, rng)
        self._compatibility_checks(context, result, rep, rng)
        return result

    def _interpolation_checks(self, context: SuiteContext, result: SuiteResult, rep, rng) -> None:
        config = context.config
        path = MetricPath(config.metric0(), config.metric1())
        chi = config.chi.build()
        d = config.domain
        early = np.linspace(d.t_start, chi.t_minus, 9)
        late = np.linspace(chi.t_plus, d.t_end, 9)
        low = high = 0.0
        interp = make_boundary_condition("interpolated-mit", rep, path.g1, path=path, chi=chi)
        for side in ("left", "right"):
            x_b = 0.0 if side == "left" else d.length
            B = interp.left if side == "left" else interp.right
            kappa = transport_spinor(path, early, np.full_like(early, x_b), rep)
            expected = kappa @ mit_projector(rep, path.g0, side).projector(early) @ np.linalg.inv(kappa)
            low = max(low, float(np.max(np.abs(B.projector(early) - expected))))
            high = max(high, float(np.max(np.abs(B.projector(late) - mit_projector(rep, path.g1, side).projector(late)))))
            result.at_most(f"interpolated_projector_{side}", max(projector_residuals(B, early).values()), ALGEBRA_TOL)
        result.at_most("interpolated_mit_chi0", low, INTERPOLATION_TOL)
        result.at_most("interpolated_mit_chi1", high, ALGEBRA_TOL)
        if "interpolated-generic" in config.boundary:
            generic = make_boundary_condition("interpolated-generic", rep, path.g1, path=path, chi=chi)
            # the generic family carries no self-adjointness guarantee and must say so
            result.at_most("generic_flagged_non_self_adjoint", float(generic.self_adjoint), 0.0)

    def _compatibility_checks(self, context: SuiteContext, result: SuiteResult, rep, rng) -> None:
        config = context.config
        g = config.metric0()
        D = build_dirac(g, rep)
        bc = make_boundary_condition("mit", rep, g)
        N = max(config.grids[0], 16)
        x = np.linspace(0.0, config.domain.length, N + 1)
        data = bump_slice(x, 0.5 * config.domain.length, 0.2 * config.domain.length, random_spinor(rng))
        residuals = check_compatibility(data, None, D, bc.spaces(), 2)
        result.at_most("compatibility_interior_bump", max(residuals), 1e-12, "data vanishing near both ends")
