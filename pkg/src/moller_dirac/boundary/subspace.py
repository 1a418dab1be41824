from __future__ import annotations

"""Deforming one maximal q-nonnegative subspace into another along phi_t(v) = v + t F(v)."""

from dataclasses import dataclass
from typing import Callable, Dict, Union

import numpy as np
import scipy.linalg as la
from numpy.typing import ArrayLike

from ..errors import ContractError, ShapeError
from ..geometry import MetricPath
from ..spin import GammaRep, clifford_of, transport_spinor
from .spaces import BoundaryLabel, BoundarySpace, mit_projector, outward_normal, resolve_side

INERTIA_TOL = 1e-12


def _as_basis(w: ArrayLike) -> np.ndarray:
    w = np.asarray(w, dtype=complex)
    if w.ndim == 1:
        w = w[:, None]
    if w.ndim != 2 or w.shape[1] > w.shape[0]:
        raise ShapeError(f"expected a basis matrix of shape (N, r), got {w.shape}")
    return w


def inertia(q: np.ndarray, tol: float = INERTIA_TOL) -> Dict[str, int]:
    lam = np.linalg.eigvalsh(np.asarray(q))
    return {
        "positive": int(np.sum(lam > tol)),
        "negative": int(np.sum(lam < -tol)),
        "zero": int(np.sum(np.abs(lam) <= tol)),
    }


def form_on(q: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Gram matrix w^dagger q w of the form restricted to span(w)."""
    return w.conj().T @ q @ w


@dataclass(frozen=True)
class InterpolatingFamily:
    """phi_t = Id + t F on W0, with F = pi_{W0'} o (pi_{W0}|_{W1})^-1 extended by zero on W0'."""

    q: np.ndarray
    w0: np.ndarray
    w0_prime: np.ndarray
    F: np.ndarray

    def map(self, t: float) -> np.ndarray:
        return np.eye(self.q.shape[0], dtype=complex) + float(t) * self.F

    def subspace(self, t: float) -> np.ndarray:
        return self.map(t) @ self.w0

    def projector(self, t: float) -> np.ndarray:
        basis = la.orth(self.subspace(t))
        return basis @ basis.conj().T

    def min_form(self, ts: ArrayLike) -> float:
        """Smallest eigenvalue of q restricted to phi_t(W0) over the sampled t."""
        worst = np.inf
        for t in np.asarray(ts, dtype=float).reshape(-1):
            w = la.orth(self.subspace(t))
            worst = min(worst, float(np.min(np.linalg.eigvalsh(form_on(self.q, w)))))
        return worst


def interpolate_subspace(W0: ArrayLike, W1: ArrayLike, q: np.ndarray) -> InterpolatingFamily:
    q = np.asarray(q, dtype=complex)
    if np.max(np.abs(q - q.conj().T)) > 1e-12:
        raise ContractError("q must be Hermitian")
    w0 = _as_basis(W0)
    w1 = _as_basis(W1)
    if w0.shape != w1.shape or w0.shape[0] != q.shape[0]:
        raise ShapeError("W0, W1 and q must live in the same space with equal ranks")
    for name, w in (("W0", w0), ("W1", w1)):
        if np.min(np.linalg.eigvalsh(form_on(q, la.orth(w)))) < -1e-12:
            raise ContractError(f"q is not nonnegative on {name}")
    lam, vecs = np.linalg.eigh(q)
    w0_prime = vecs[:, lam < -INERTIA_TOL]
    n, r = w0.shape
    if w0_prime.shape[1] != n - r:
        raise ContractError("negative eigenspace of q is not complementary to W0")
    frame = np.hstack([w0, w0_prime])
    if abs(np.linalg.det(frame)) < 1e-12:
        raise ContractError("W0 meets the negative eigenspace of q")
    # coordinates of W1 in the splitting W0 + W0'
    coords = np.linalg.solve(frame, w1)
    along_w0, along_prime = coords[:r], coords[r:]
    if abs(np.linalg.det(along_w0)) < 1e-12:
        raise ContractError("W1 meets W0'; the projection onto W0 is not invertible on W1")
    # F(w0 a) = w0' (along_prime along_w0^-1 a)
    f_coords = along_prime @ np.linalg.inv(along_w0)
    proj_w0_coords = np.linalg.inv(frame)[:r]
    F = w0_prime @ f_coords @ proj_w0_coords
    return InterpolatingFamily(q=q, w0=w0, w0_prime=w0_prime, F=F)


def interpolated_generic(
    rep: GammaRep,
    path: MetricPath,
    chi: Callable[[ArrayLike], np.ndarray],
    point: Union[str, float],
) -> BoundarySpace:
    """Boundary space phi_{chi(t)}(kappa W_MIT0) built from interpolate_subspace.

    Uses the form -<., sigma(n_1^flat) .> so that the construction's q >= 0 matches
    future admissibility. Flagged non-self-adjoint; certify before using it in round trips.
    """
    g1 = path.g1
    side = resolve_side(g1, point)
    x_b = 0.0 if side == "left" else g1.domain.length
    mit0 = mit_projector(rep, path.g0, side)
    mit1 = mit_projector(rep, g1, side)

    def family_at(t: float) -> InterpolatingFamily:
        tt = np.asarray(float(t))
        xx = np.asarray(x_b)
        kappa = transport_spinor(path, tt, xx, rep, closed=True)
        w0 = kappa @ la.orth(mit0.projector(tt))
        w1 = la.orth(mit1.projector(tt))
        q = -(rep.spin_form @ clifford_of(rep, g1, tt, xx, outward_normal(g1, side, tt)))
        return interpolate_subspace(w0, w1, q)

    def projector(t):
        t = np.asarray(t, dtype=float)
        c = np.broadcast_to(np.asarray(chi(t), dtype=float), t.shape).reshape(-1)
        flat_t = t.reshape(-1)
        out = np.empty(flat_t.shape + (2, 2), dtype=complex)
        for i, ti in enumerate(flat_t):
            out[i] = mit1.projector(ti) if c[i] == 1.0 else family_at(ti).projector(c[i])
        return out.reshape(t.shape + (2, 2))

    return BoundarySpace(side, BoundaryLabel.INTERPOLATED_GENERIC, projector, g1, self_adjoint=False)
