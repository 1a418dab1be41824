from __future__ import annotations

"""
Two-point functions of quasi-free states and their pullback along the Moller map.

A state lives on a family of slices with the slice product as gram; the nodal basis of a
whole slice is one such family. Test sections enter through their causal propagator slice,
omega^(2)(f1, f2) = (G f1, Q G f2), with G f projected onto the family.
"""

import dataclasses
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from ..boundary import BoundaryCondition
from ..errors import ContractError
from ..moller import MollerPlan, gram, moller_forward, moller_inverse
from ..operators import FirstOrderSystem, apply_operator
from ..solver import Grid, SBPOperator, SemiDiscreteOperator, evolve, green, make_grid
from .car import positivity_min
from .doubled import DoubledSpace
from .ground import slice_weight
from .state import QuasiFreeState

logger = logging.getLogger(__name__)

UNITARITY_BUDGET = 1e-3

Section = Callable[[np.ndarray, np.ndarray], np.ndarray]


def slice_gram(D: FirstOrderSystem, t: float, N: int, order: int = 2) -> np.ndarray:
    op = SemiDiscreteOperator(D, None, SBPOperator(D.metric.domain.length, N, order))
    W = slice_weight(op, t)
    return 0.5 * (W + W.conj().T)


def slice_coordinates(space: DoubledSpace, W: np.ndarray, psi: np.ndarray) -> np.ndarray:
    """Doubled coordinates (c, 0) of the W-orthogonal projection of nodal slices onto span(basis).

    psi is (..., N + 1, 2); the leading axes carry over to the coordinates.
    """
    B = np.asarray(space.basis, dtype=complex).reshape(space.k, -1)
    psi = np.asarray(psi, dtype=complex)
    lead = psi.shape[:-2]
    flat = psi.reshape(-1, B.shape[1])
    c = np.linalg.solve(space.gram, np.conj(B) @ W @ flat.T).T.reshape(lead + (space.k,))
    return np.concatenate([c, np.zeros_like(c)], axis=-1)


@dataclass
class SlicedState:
    """A quasi-free state on the solutions of (D, bc), represented on the slice at t_ref."""

    D: FirstOrderSystem
    bc: BoundaryCondition
    state: QuasiFreeState
    t_ref: float
    N: int
    cfl: float = 0.5
    sbp_order: int = 2
    dissipation: float = 0.0

    @property
    def space(self) -> DoubledSpace:
        return self.state.space

    @cached_property
    def weight(self) -> np.ndarray:
        return slice_gram(self.D, self.t_ref, self.N, self.sbp_order)

    def grid(self) -> Grid:
        return make_grid(self.D, self.N, cfl=self.cfl, order=self.sbp_order)

    def smear(self, f: Section) -> np.ndarray:
        """Doubled coordinates of (G f at t_ref, 0)."""
        return slice_coordinates(self.space, self.weight, propagated_slice(self.D, self.bc, f, self.t_ref, self.grid(), self.dissipation))

    def two_point(self, f1: Section, f2: Section) -> complex:
        return self.state.two_point(self.smear(f1), self.smear(f2))


def propagated_slice(D: FirstOrderSystem, bc: BoundaryCondition, f: Section, t_ref: float, grid: Grid, dissipation: float = 0.0) -> np.ndarray:
    """(G f)(t_ref) = (G^+ f - G^- f)(t_ref) for t_ref at either temporal end of the domain.

    At t_end the advanced part vanishes and at t_start the retarded one does.
    """
    d = D.metric.domain
    if abs(t_ref - d.t_end) <= 1e-12:
        return green(D, bc, f, 1, grid, store_every=10**9, dissipation=dissipation).final
    if abs(t_ref - d.t_start) <= 1e-12:
        return -green(D, bc, f, -1, grid, store_every=10**9, dissipation=dissipation).final
    raise ContractError("reference slices for smeared fields sit at the temporal ends")


def two_point(sliced: SlicedState, f1: Section, f2: Section) -> complex:
    """omega^(2)(f1, f2) = omega(Xi(G f1)^* Xi(G f2))."""
    return sliced.two_point(f1, f2)


def field_equation_residual(sliced: SlicedState, f: Section, f_prime: Section) -> float:
    """|omega^(2)(f, D f')| relative to ||G f|| ||G f'||; G D f' = 0 leaves only discretisation error."""
    D = sliced.D

    def source(t, x):
        return apply_operator(D, f_prime, t, x)

    z1 = sliced.smear(f)
    z2 = sliced.smear(source)
    z3 = sliced.smear(f_prime)
    scale = np.sqrt(abs(sliced.space.inner(z1, z1)) * abs(sliced.space.inner(z3, z3)))
    return float(abs(sliced.state.two_point(z1, z2)) / max(scale, 1e-300))


def doubled(op: np.ndarray) -> np.ndarray:
    """R + Upsilon R Upsilon^-1 as diag(R, conj R)."""
    z = np.zeros_like(op, dtype=complex)
    return np.block([[op, z], [z, np.conj(op)]])


def conservative(plan: MollerPlan) -> MollerPlan:
    """The same plan with the penalty dissipation switched off."""
    return plan if plan.dissipation == 0.0 else dataclasses.replace(plan, dissipation=0.0)


@dataclass
class Pullback:
    state: QuasiFreeState
    moller: np.ndarray
    unitarity_deviation: float
    plan: MollerPlan
    certificates: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {"modes": self.state.space.k, "unitarity_deviation": self.unitarity_deviation, **self.certificates}


def pullback_state(state1: QuasiFreeState, plan: MollerPlan, budget: float = UNITARITY_BUDGET) -> Pullback:
    """omega_0 = omega_1 o R: Q_0 = G_0^-1 R^dagger G_1 Q_1 R with R the doubled map in family coordinates.

    `state1` lives on a family of t_plus slices of M1 whose gram is the D1 slice product.
    The family is carried back by R^-1 to span the M0 side, so only modes the family
    resolves are transported. Both directions run without penalty dissipation.
    """
    basis1 = np.asarray(state1.space.basis, dtype=complex)
    if basis1.shape[1:] != (plan.N + 1, 2):
        raise ContractError("state and Moller plan use different grids")
    plan = conservative(plan)
    basis0 = moller_inverse(plan, basis1, check=False)
    W1 = slice_gram(plan.D1, plan.t_plus, plan.N, plan.sbp_order)
    G0 = gram(plan.D0, plan.t_minus, basis0, plan.N, plan.sbp_order)
    G0 = 0.5 * (G0 + G0.conj().T)
    G1 = state1.space.gram
    images = moller_forward(plan, basis0, check=False)
    R = slice_coordinates(state1.space, W1, images)[:, : state1.space.k].T
    deviation = float(np.linalg.norm(R.conj().T @ G1 @ R - G0, 2) / np.linalg.norm(G0, 2))
    if deviation > budget:
        raise ContractError(f"Moller map deviates from unitarity by {deviation:.3e} (budget {budget:.1e})")
    space0 = DoubledSpace(basis=basis0, gram=G0)
    R2 = doubled(R)
    Q0 = np.linalg.solve(space0.doubled_gram, R2.conj().T @ state1.space.doubled_gram @ state1.Q @ R2)
    pulled = QuasiFreeState(space0, Q0)
    identity = float(np.max(np.abs(R - np.eye(R.shape[0]))))
    logger.info("pulled back state on %d modes: unitarity deviation %.3e", space0.k, deviation)
    return Pullback(pulled, R, deviation, plan, {"round_trip": identity, **pulled.certify()})


def _backward_slice(D: FirstOrderSystem, bc: BoundaryCondition, f: Section, run: Grid) -> np.ndarray:
    """(G f)(run.t1) = -(G^- f)(run.t1) for f supported after run.t1."""
    zero = np.zeros((run.N + 1, 2), dtype=complex)
    return -evolve(D, bc, zero, run, source=f, store_every=10**9, dissipation=0.0).final


@dataclass
class Coincidence:
    omega_chi: complex
    omega_one: complex

    @property
    def relative(self) -> float:
        return float(abs(self.omega_chi - self.omega_one) / max(abs(self.omega_one), 1e-300))


def near_future_coincidence(pulled: Pullback, state1: QuasiFreeState, f1: Section, f2: Section) -> Coincidence:
    """omega_chi^(2) against omega_1^(2) for sections supported after t_plus.

    omega_chi runs the D_chi propagator back to t_plus, continues with R^-1 to the t_minus
    slice of M0 and evaluates the pulled-back state; omega_1 uses D_1 and the t_plus slice.
    """
    plan = pulled.plan
    d = plan.path.domain
    dt = plan.grid(plan.t_plus, d.t_end).dt
    run = Grid(plan.N, dt, plan.cfl, d.t_end, plan.t_plus, d.length, plan.sbp_order)
    W0 = slice_gram(plan.D0, plan.t_minus, plan.N, plan.sbp_order)
    W1 = slice_gram(plan.D1, plan.t_plus, plan.N, plan.sbp_order)
    z_chi, z_one = [], []
    for f in (f1, f2):
        psi0 = moller_inverse(plan, _backward_slice(plan.D_chi, plan.bc_chi, f, run), check=False)
        z_chi.append(slice_coordinates(pulled.state.space, W0, psi0))
        z_one.append(slice_coordinates(state1.space, W1, _backward_slice(plan.D1, plan.bc1, f, run)))
    return Coincidence(pulled.state.two_point(z_chi[0], z_chi[1]), state1.two_point(z_one[0], z_one[1]))


def state_report(
    state: QuasiFreeState,
    two_point_samples: Optional[List[complex]] = None,
    positivity_samples: int = 10,
    seed: int = 0,
) -> Dict[str, Any]:
    cert = state.certify()
    samples = two_point_samples or []
    return {
        "Q_spectrum_min": cert["Q_spectrum_min"],
        "Q_spectrum_max": cert["Q_spectrum_max"],
        "gamma_residual": cert["gamma_residual"],
        "positivity_min": positivity_min(state, samples=positivity_samples, seed=seed),
        "two_point_samples": [[float(np.real(v)), float(np.imag(v))] for v in samples],
    }


__all__ = [
    "Coincidence",
    "Pullback",
    "SlicedState",
    "UNITARITY_BUDGET",
    "conservative",
    "doubled",
    "field_equation_residual",
    "near_future_coincidence",
    "propagated_slice",
    "pullback_state",
    "slice_coordinates",
    "slice_gram",
    "state_report",
    "two_point",
]
