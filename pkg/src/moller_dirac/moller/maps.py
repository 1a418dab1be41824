from __future__ import annotations

"""
Moller map R: D0-solutions on M0 -> D1-solutions on M1 and its inverse.

Forward: apply f kappa to the t_minus slice, evolve D_chi with the interpolated boundary
space up to t_plus. D_chi equals D1 from t_plus on, so the t_plus slice already
initialises the D1 solution and no further stage is needed.
"""

import logging
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..boundary import check_compatibility
from ..errors import ContractError, ShapeError
from ..operators import FirstOrderSystem
from ..solver import Grid, SBPOperator, SemiDiscreteOperator, estimate_order, evolve
from .plan import MollerPlan

logger = logging.getLogger(__name__)


def _slices(plan: MollerPlan, psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim < 2 or psi.shape[-2:] != (plan.N + 1, 2):
        raise ShapeError(f"slices must have trailing shape ({plan.N + 1}, 2), got {psi.shape}")
    return psi


def _require_compatible(plan: MollerPlan, D: FirstOrderSystem, bc, psi: np.ndarray, t: float) -> None:
    family = psi.reshape(-1, plan.N + 1, 2)
    scale = max(1.0, float(np.max(np.abs(family))) if family.size else 1.0)
    for member in family:
        residuals = check_compatibility(member, None, D, bc.spaces(), plan.compatibility_order, t0=t)
        if max(residuals) > plan.compatibility_tol * scale:
            raise ContractError(f"input slice violates the MIT compatibility conditions (residuals {residuals})")


def slice_pairing(D: FirstOrderSystem, t: float, psi: np.ndarray, phi: np.ndarray, N: int, order: int = 2) -> np.ndarray:
    """<<psi, phi>> on the slice t for the system D (broadcast over leading axes)."""
    op = SemiDiscreteOperator(D, None, SBPOperator(D.metric.domain.length, N, order))
    a = op.coefficients(t).a
    return np.einsum("j,...ja,jab,...jb->...", op.sbp.norm, np.conj(psi), -a, phi)


def gram(D: FirstOrderSystem, t: float, family: np.ndarray, N: int, order: int = 2) -> np.ndarray:
    """G_ij = <<e_i, e_j>> for a family (k, N + 1, 2)."""
    op = SemiDiscreteOperator(D, None, SBPOperator(D.metric.domain.length, N, order))
    a = op.coefficients(t).a
    return np.einsum("j,ija,jab,kjb->ik", op.sbp.norm, np.conj(family), -a, family)


def moller_forward(plan: MollerPlan, psi0: np.ndarray, check: bool = True) -> np.ndarray:
    """R psi0: D0 slice at t_minus -> D1 slice at t_plus (leading batch axes allowed)."""
    psi0 = _slices(plan, psi0)
    if check:
        _require_compatible(plan, plan.D0, plan.bc0, psi0, plan.t_minus)
    start = np.einsum("jab,...jb->...ja", plan.kappa_f(plan.t_minus), psi0)
    grid = plan.grid(plan.t_minus, plan.t_plus)
    hist = evolve(plan.D_chi, plan.bc_chi, start, grid, store_every=10**9, dissipation=plan.dissipation)
    return hist.final


def moller_inverse(plan: MollerPlan, psi1: np.ndarray, check: bool = True) -> np.ndarray:
    """R^-1 psi1: D1 slice at t_plus -> D0 slice at t_minus."""
    psi1 = _slices(plan, psi1)
    if check:
        _require_compatible(plan, plan.D1, plan.bc1, psi1, plan.t_plus)
    if plan.boundary != "interpolated-mit":
        plan.bc_chi.require_round_trip()
    grid = plan.grid(plan.t_plus, plan.t_minus)
    hist = evolve(plan.D_chi, plan.bc_chi, psi1, grid, store_every=10**9, dissipation=plan.dissipation)
    k_inv = np.linalg.inv(plan.kappa_f(plan.t_minus))
    return np.einsum("jab,...jb->...ja", k_inv, hist.final)


def check_unitarity(plan: MollerPlan, psi0: np.ndarray, phi0: np.ndarray) -> float:
    """|<<R psi0, R phi0>>_1 at t_plus - <<psi0, phi0>>_0 at t_minus|."""
    out = moller_forward(plan, np.stack([_slices(plan, psi0), _slices(plan, phi0)]))
    before = slice_pairing(plan.D0, plan.t_minus, psi0, phi0, plan.N, plan.sbp_order)
    after = slice_pairing(plan.D1, plan.t_plus, out[0], out[1], plan.N, plan.sbp_order)
    return float(abs(after - before))


def moller_matrix(plan: MollerPlan, basis: Optional[np.ndarray] = None) -> np.ndarray:
    """Columns R e_i for a family (k, N + 1, 2); the nodal basis of all 2(N + 1) spinor values by default.

    Returns the images stacked as (k, N + 1, 2). The batch runs through one evolution.
    """
    if basis is None:
        n = 2 * (plan.N + 1)
        basis = np.eye(n, dtype=complex).reshape(n, plan.N + 1, 2)
        return moller_forward(plan, basis, check=False)
    return moller_forward(plan, basis)


def gram_deviation(plan: MollerPlan, family: np.ndarray) -> float:
    """max |G_after - G_before| for the Gram matrices of a family and its image under R."""
    family = _slices(plan, family)
    image = moller_forward(plan, family)
    before = gram(plan.D0, plan.t_minus, family, plan.N, plan.sbp_order)
    after = gram(plan.D1, plan.t_plus, image, plan.N, plan.sbp_order)
    return float(np.max(np.abs(after - before)))


def decomposed_forward(plan: MollerPlan, psi0: np.ndarray, t_end: Optional[float] = None) -> tuple[np.ndarray, np.ndarray]:
    """(one pass, two passes) for the map t_minus -> t_end with t_end >= t_plus.

    The one-pass run evolves D_chi through t_plus (stored exactly); the two-pass run stops
    at t_plus and continues with D1 and the g1 MIT space.
    """
    t_end = plan.path.domain.t_end if t_end is None else float(t_end)
    if t_end < plan.t_plus:
        raise ContractError("decomposition needs t_end >= t_plus")
    psi0 = _slices(plan, psi0)
    start = np.einsum("jab,...jb->...ja", plan.kappa_f(plan.t_minus), psi0)
    dt = plan.grid(plan.t_minus, t_end).dt
    whole = Grid(plan.N, dt, plan.cfl, plan.t_minus, t_end, plan.g1.domain.length, plan.sbp_order)
    one = evolve(plan.D_chi, plan.bc_chi, start, whole, save_times=[plan.t_plus], store_every=10**9, dissipation=plan.dissipation)
    first = Grid(plan.N, dt, plan.cfl, plan.t_minus, plan.t_plus, plan.g1.domain.length, plan.sbp_order)
    second = Grid(plan.N, dt, plan.cfl, plan.t_plus, t_end, plan.g1.domain.length, plan.sbp_order)
    mid = evolve(plan.D_chi, plan.bc_chi, start, first, store_every=10**9, dissipation=plan.dissipation).final
    two = evolve(plan.D1, plan.bc1, mid, second, store_every=10**9, dissipation=plan.dissipation).final
    return one.final, two


@dataclass
class UnitaritySweep:
    cells: List[int]
    deviations: List[float]
    round_trip: List[float]
    order: Optional[float]

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def unitarity_sweep(make: Any, cells: Sequence[int], data_fn: Any) -> UnitaritySweep:
    """Deviation and round-trip error per grid; `make(N)` builds the plan, `data_fn(plan)` two slices."""
    deviations, trips = [], []
    for n in cells:
        plan = make(n)
        psi, phi = data_fn(plan)
        deviations.append(check_unitarity(plan, psi, phi))
        back = moller_inverse(plan, moller_forward(plan, psi), check=False)
        norm = float(np.sqrt(abs(slice_pairing(plan.D0, plan.t_minus, psi, psi, plan.N, plan.sbp_order))))
        diff = back - psi
        trips.append(float(np.sqrt(abs(slice_pairing(plan.D0, plan.t_minus, diff, diff, plan.N, plan.sbp_order)))) / max(norm, 1e-300))
    hs = [1.0 / n for n in cells]
    order = estimate_order(hs, deviations) if all(d > 0.0 for d in deviations) and len(cells) > 1 else None
    logger.info("unitarity sweep: cells=%s deviations=%s", list(cells), ["%.2e" % d for d in deviations])
    return UnitaritySweep(list(cells), deviations, trips, order)
