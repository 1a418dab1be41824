from __future__ import annotations

"""
Boundary spaces on the lines x = 0 ('left') and x = L ('right').

A BoundarySpace stores the projector ONTO the admissible space B as a function
of time. Boundary form convention: q(psi) = <psi, sigma_D(n^flat) psi> with n the
outward unit normal; with the spin form M = gamma0 the energy decays forward in
time when q <= 0 on B, so "future admissible" means q <= 0 on B_+ (maximal), "past
admissible" means q >= 0 on B_- (maximal), and self-adjoint spaces are q-null.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Dict, Optional, Union

import numpy as np
import scipy.linalg as la
from numpy.typing import ArrayLike

from ..errors import ContractError, DomainError, InvariantViolation
from ..geometry import MetricPath, SplitMetric
from ..spin import (
    GammaRep,
    clifford_of,
    make_canonical_rep,
    metric_norm_sq,
    transport_vector,
    transport_vector_closed,
)

SIDES = ("left", "right")
EDGE_TOL = 1e-12


class BoundaryLabel(Enum):
    MIT = "mit"
    CHIRAL_PLUS = "chiral+"
    CHIRAL_MINUS = "chiral-"
    INTERPOLATED = "interpolated-mit"
    INTERPOLATED_GENERIC = "interpolated-generic"
    ADJOINT = "adjoint"
    CUSTOM = "custom"


@dataclass(frozen=True)
class BoundarySpace:
    side: str
    label: BoundaryLabel
    projector_fn: Callable[[np.ndarray], np.ndarray]
    metric: SplitMetric
    self_adjoint: bool = True

    @property
    def x(self) -> float:
        return 0.0 if self.side == "left" else self.metric.domain.length

    def projector(self, t: ArrayLike) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return np.broadcast_to(np.asarray(self.projector_fn(t)), t.shape + (2, 2))

    def complement(self, t: ArrayLike) -> np.ndarray:
        return np.eye(2) - self.projector(t)

    def basis(self, t: float) -> np.ndarray:
        """Orthonormal (Euclidean) basis of ran B at one time, shape (2, rank)."""
        return la.orth(np.asarray(self.projector(float(t))))

    def to_dict(self) -> Dict[str, Any]:
        return {"side": self.side, "label": self.label.value, "self_adjoint": self.self_adjoint}


def resolve_side(g: SplitMetric, point: Union[str, float]) -> str:
    if isinstance(point, str):
        if point not in SIDES:
            raise DomainError(f"unknown boundary side '{point}'")
        return point
    x = float(point)
    if abs(x) <= EDGE_TOL:
        return "left"
    if abs(x - g.domain.length) <= EDGE_TOL:
        return "right"
    raise DomainError(f"x = {x} is not on the boundary of [0, {g.domain.length}]")


def outward_normal(g: SplitMetric, side: str, t: ArrayLike) -> tuple[np.ndarray, np.ndarray]:
    t = np.asarray(t, dtype=float)
    x = np.full_like(t, 0.0 if side == "left" else g.domain.length)
    sign = -1.0 if side == "left" else 1.0
    return np.zeros_like(t), sign / np.sqrt(g.spatial(t, x))


def _gamma_normal(rep: GammaRep, g: SplitMetric, side: str, t: np.ndarray) -> np.ndarray:
    x = np.full_like(t, 0.0 if side == "left" else g.domain.length)
    return clifford_of(rep, g, t, x, outward_normal(g, side, t))


def mit_projector(rep: GammaRep, g: SplitMetric, point: Union[str, float], sign: int = 1) -> BoundarySpace:
    """pi = (1/2)(Id + sign i gamma(n)); B = ran pi."""
    side = resolve_side(g, point)

    def projector(t):
        t = np.asarray(t, dtype=float)
        return 0.5 * (np.eye(2) + sign * 1j * _gamma_normal(rep, g, side, t))

    return BoundarySpace(side, BoundaryLabel.MIT, projector, g, self_adjoint=True)


def chiral_projector(rep: GammaRep, g: SplitMetric, point: Union[str, float], sign: int = 1) -> BoundarySpace:
    """pi = (1/2)(Id + sign gamma(n) G); B = ran pi."""
    side = resolve_side(g, point)
    label = BoundaryLabel.CHIRAL_PLUS if sign > 0 else BoundaryLabel.CHIRAL_MINUS

    def projector(t):
        t = np.asarray(t, dtype=float)
        return 0.5 * (np.eye(2) + sign * (_gamma_normal(rep, g, side, t) @ rep.chirality))

    return BoundarySpace(side, label, projector, g, self_adjoint=True)


def interpolated_mit(
    rep: GammaRep,
    path: MetricPath,
    chi: Callable[[ArrayLike], np.ndarray],
    point: Union[str, float],
    closed: bool = True,
) -> BoundarySpace:
    """ker(gamma_1(v) - i ||v||_1) ... projector (1/2)(Id + i ||v||_1^-1 gamma_1(v)) with
    v = chi n_1 + (1 - chi) wp n_0.

    The sign of the i-term is chosen so that chi = 1 reproduces mit_projector for g1.
    """
    g1 = path.g1
    side = resolve_side(g1, point)
    x_b = 0.0 if side == "left" else g1.domain.length
    mit1 = mit_projector(rep, g1, side)

    def projector(t):
        t = np.asarray(t, dtype=float)
        x = np.full_like(t, x_b)
        c = np.broadcast_to(np.asarray(chi(t), dtype=float), t.shape)
        n1 = outward_normal(g1, side, t)
        n0 = outward_normal(path.g0, side, t)
        move = transport_vector_closed if closed else transport_vector
        moved = move(path, t, x, n0)
        v = (c * n1[0] + (1.0 - c) * moved[..., 0], c * n1[1] + (1.0 - c) * moved[..., 1])
        norm_sq = metric_norm_sq(g1, t, x, v)
        if np.any(norm_sq <= 1e-14):
            raise InvariantViolation("interpolating normal vanished or became non-spacelike")
        norm = np.sqrt(norm_sq)
        gam = clifford_of(rep, g1, t, x, v)
        out = 0.5 * (np.eye(2) + 1j * gam / norm[..., None, None])
        return np.where((c == 1.0)[..., None, None], mit1.projector(t), out)

    return BoundarySpace(side, BoundaryLabel.INTERPOLATED, projector, g1, self_adjoint=True)


def orthogonal_projector(p: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Euclidean orthogonal projector onto ran p (p of shape (2, 2))."""
    q = la.orth(np.asarray(p), rcond=tol)
    return q @ q.conj().T


def adjoint_space(
    B: BoundarySpace,
    sigma_n: Union[np.ndarray, Callable[[float], np.ndarray]],
    spin_form: Optional[np.ndarray] = None,
) -> BoundarySpace:
    """B^dagger = (sigma_n ran B)^perp with respect to the spin form.

    sigma_n is a constant 2x2 matrix or a function of a scalar time.
    """
    form = np.asarray(spin_form) if spin_form is not None else make_canonical_rep().spin_form

    def projector(t):
        t = np.asarray(t, dtype=float)
        flat_t = t.reshape(-1)
        out = np.empty(flat_t.shape + (2, 2), dtype=complex)
        for i, ti in enumerate(flat_t):
            s = np.asarray(sigma_n(float(ti)) if callable(sigma_n) else sigma_n)
            if abs(np.linalg.det(s)) < 1e-12:
                raise ContractError("adjoint_space needs an invertible normal symbol")
            w = la.null_space((form @ s @ B.basis(ti)).conj().T)
            out[i] = w @ w.conj().T
        return out.reshape(t.shape + (2, 2))

    return BoundarySpace(B.side, BoundaryLabel.ADJOINT, projector, B.metric, self_adjoint=B.self_adjoint)
