from __future__ import annotations

"""
Ground states on ultrastatic backgrounds and an independent spectral oracle.

With the penalty dissipation switched off the semi-discrete operator L conserves the
discrete energy psi^dagger W psi exactly, so K = W L is skew-Hermitian and H = iL has
real spectrum. The state fills the strictly positive part of spec(H).
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import scipy.linalg as la
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from ..boundary import BoundaryCondition, mit_projector
from ..errors import ContractError
from ..geometry import SplitMetric, is_ultrastatic
from ..operators import FirstOrderSystem, build_dirac
from ..runtime import record_metric
from ..solver import RichardsonResult, SBPOperator, SemiDiscreteOperator, richardson_extrapolate
from ..spin import GammaRep, make_canonical_rep
from .doubled import DoubledSpace
from .state import QuasiFreeState, state_from_projector

logger = logging.getLogger(__name__)

ZERO_TOL = 1e-10
ROUGHNESS_LIMIT = 0.5


@dataclass(frozen=True)
class DiscreteHamiltonian:
    L: np.ndarray
    W: np.ndarray
    N: int
    t: float
    imag_residual: float
    skew_residual: float

    @property
    def K(self) -> np.ndarray:
        k = self.W @ self.L
        return 0.5 * (k - k.conj().T)


def slice_weight(op: SemiDiscreteOperator, t: float) -> np.ndarray:
    blocks = op.sbp.norm[:, None, None] * (-op.coefficients(t).a)
    return la.block_diag(*blocks)


def discrete_hamiltonian(D: FirstOrderSystem, bc: BoundaryCondition, N: int, sbp_order: int = 2, t: Optional[float] = None) -> DiscreteHamiltonian:
    """L on the nodal slice space (flattened node-major) together with the slice gram W."""
    if not is_ultrastatic(D.metric):
        raise ContractError("ground states need an ultrastatic metric")
    t = D.metric.domain.t_start if t is None else float(t)
    op = SemiDiscreteOperator(D, bc, SBPOperator(D.metric.domain.length, N, sbp_order), dissipation=0.0)
    n = 2 * (N + 1)
    images = op(t, np.eye(n, dtype=complex).reshape(n, N + 1, 2))
    L = images.reshape(n, n).T
    W = slice_weight(op, t)
    k = W @ L
    skew = float(np.max(np.abs(k + k.conj().T)))
    imag = float(np.max(np.abs(np.imag(np.linalg.eigvals(1j * L)))))
    record_metric("eigensolves")
    return DiscreteHamiltonian(L=L, W=W, N=N, t=t, imag_residual=imag, skew_residual=skew)


def roughness(vectors: np.ndarray, N: int) -> np.ndarray:
    """||psi_{j+2} - psi_j|| / ||psi|| per column.

    Central differences tie every smooth mode to its node-alternating partner, so nodes are
    compared two apart. Resolved modes score near 2 E h, grid-scale content near 2.
    """
    v = vectors.T.reshape(-1, N + 1, 2)
    jump = np.sqrt(np.sum(np.abs(v[:, 2:] - v[:, :-2]) ** 2, axis=(1, 2)))
    return jump / np.sqrt(np.sum(np.abs(v) ** 2, axis=(1, 2)))


@dataclass
class GroundState:
    hamiltonian: DiscreteHamiltonian
    eigenvalues: np.ndarray
    vectors: np.ndarray
    state: QuasiFreeState

    @property
    def physical(self) -> np.ndarray:
        return roughness(self.vectors, self.hamiltonian.N) < ROUGHNESS_LIMIT

    def lowest_positive(self, physical_only: bool = True) -> float:
        mask = self.eigenvalues > 0.0
        if physical_only:
            mask &= self.physical
        if not np.any(mask):
            raise ContractError("no positive eigenvalue on the selected branch")
        return float(np.min(self.eigenvalues[mask]))

    def resolved_state(self, count: Optional[int] = None) -> QuasiFreeState:
        """The ground state on the span of the smooth-branch eigenvectors, lowest |E| first.

        The family keeps eigenvalue order; in its coordinates P_+ is diagonal.
        """
        idx = np.flatnonzero(self.physical)
        if count is not None:
            idx = idx[np.argsort(np.abs(self.eigenvalues[idx]), kind="stable")][:count]
        if idx.size == 0:
            raise ContractError("no resolved eigenvectors on this grid")
        idx = np.sort(idx)
        N = self.hamiltonian.N
        V = self.vectors[:, idx]
        W = 0.5 * (self.hamiltonian.W + self.hamiltonian.W.conj().T)
        G = V.conj().T @ W @ V
        space = DoubledSpace(basis=V.T.reshape(-1, N + 1, 2), gram=0.5 * (G + G.conj().T))
        return state_from_projector(space, np.diag((self.eigenvalues[idx] > 0.0).astype(complex)))

    def positive_projector(self) -> np.ndarray:
        v = self.vectors[:, self.eigenvalues > 0.0]
        return v @ v.conj().T @ self.hamiltonian.W

    def to_dict(self) -> Dict[str, Any]:
        return {
            "N": self.hamiltonian.N,
            "imag_residual": self.hamiltonian.imag_residual,
            "skew_residual": self.hamiltonian.skew_residual,
            "positive_modes": int(np.sum(self.eigenvalues > 0.0)),
            "resolved_modes": int(np.sum(self.physical)),
            "lowest_positive": self.lowest_positive(),
        }


def nodal_space(W: np.ndarray, N: int) -> DoubledSpace:
    n = 2 * (N + 1)
    return DoubledSpace(basis=np.eye(n, dtype=complex).reshape(n, N + 1, 2), gram=W.astype(complex))


def ground_state(D: FirstOrderSystem, bc: BoundaryCondition, N: int, sbp_order: int = 2) -> GroundState:
    """Q = P_+ + (Id - Upsilon P_+ Upsilon^-1) in nodal coordinates, P_+ the positive spectral projector of H."""
    ham = discrete_hamiltonian(D, bc, N, sbp_order)
    W = 0.5 * (ham.W + ham.W.conj().T)
    lam, vec = la.eigh(1j * ham.K, W)
    if np.any(np.abs(lam) <= ZERO_TOL):
        raise ContractError(f"ambiguous spectral splitting: eigenvalue {lam[np.argmin(np.abs(lam))]:.3e} at zero")
    pos = vec[:, lam > 0.0]
    gs = GroundState(ham, lam, vec, state_from_projector(nodal_space(W, N), pos @ pos.conj().T @ W))
    logger.debug("ground state N=%d: %d positive modes, imag residual %.2e", N, int(np.sum(lam > 0)), ham.imag_residual)
    return gs


def ground_state_Q(D: FirstOrderSystem, bc: BoundaryCondition, N: int, sbp_order: int = 2) -> QuasiFreeState:
    return ground_state(D, bc, N, sbp_order).state


def _mismatch(D: FirstOrderSystem, t: float, E: float, start: np.ndarray, w: np.ndarray, b: np.ndarray, flux: np.ndarray) -> tuple[float, float]:
    """(F(E), |w^dagger phi(L)| / |phi(L)|) for the x-ODE of a time-harmonic solution.

    F = Im(c m conj(p)) / (|m|^2 + |p|^2) with m, p the components of phi(L) off and on
    the right boundary space. Flux conservation keeps c m conj(p) imaginary, so F is
    real-valued and changes sign where m does.
    """
    length = D.metric.domain.length

    def rhs(x, phi):
        s, a, bb = (np.asarray(m)[0] for m in D.coefficients(np.array([t]), np.array([x])))
        return np.linalg.solve(a, (1j * E * s - bb) @ phi)

    sol = solve_ivp(rhs, (0.0, length), start.astype(complex), method="DOP853", rtol=1e-11, atol=1e-13)
    end = sol.y[:, -1]
    m = complex(np.vdot(w, end))
    p = complex(np.vdot(b, end))
    c = complex(np.vdot(b, flux @ w))
    value = float(np.imag(c * m * np.conj(p)) / (abs(m) ** 2 + abs(p) ** 2))
    return value, abs(m) / float(np.linalg.norm(end))


def mit_shooting_eigenvalue(
    g: SplitMetric,
    rep: Optional[GammaRep] = None,
    bracket: Sequence[float] = (0.1, 3.0),
    potential=None,
    samples: int = 64,
    tol: float = 1e-8,
) -> float:
    """Lowest E in the bracket with a time-harmonic MIT solution, from shooting in x.

    Independent of the difference operator: phi' = A^-1 (i E S - B) phi integrated by
    solve_ivp from phi(0) in the left MIT space, roots of the right mismatch by brentq.
    """
    if not is_ultrastatic(g):
        raise ContractError("the shooting oracle needs an ultrastatic metric")
    rep = rep or make_canonical_rep()
    D = build_dirac(g, rep, potential)
    t = g.domain.t_start
    length = g.domain.length
    start = mit_projector(rep, g, "left").basis(t)[:, 0]
    right = mit_projector(rep, g, "right")
    b = right.basis(t)[:, 0]
    w = la.orth(right.complement(t))[:, 0]
    a_end = np.asarray(D.coefficients(np.array([t]), np.array([length]))[1])[0]
    flux = rep.spin_form @ a_end

    def F(E: float) -> float:
        return _mismatch(D, t, E, start, w, b, flux)[0]

    grid = np.linspace(float(bracket[0]), float(bracket[1]), samples)
    values = [F(E) for E in grid]
    for lo, hi, f_lo, f_hi in zip(grid[:-1], grid[1:], values[:-1], values[1:]):
        if f_lo == 0.0 or f_lo * f_hi < 0.0:
            root = lo if f_lo == 0.0 else brentq(F, lo, hi, xtol=1e-14, rtol=1e-14)
            if _mismatch(D, t, root, start, w, b, flux)[1] <= tol:
                return float(root)
    raise ContractError(f"no MIT eigenvalue found in {tuple(bracket)}")


@dataclass
class EigenvalueStudy:
    cells: List[int]
    values: List[float]
    extrapolated: RichardsonResult

    def to_dict(self) -> Dict[str, Any]:
        return {"cells": self.cells, "values": self.values, "extrapolated": self.extrapolated.to_dict()}


def lowest_positive_eigenvalue(
    D: FirstOrderSystem,
    bc: BoundaryCondition,
    cells: Sequence[int],
    sbp_order: int = 2,
    order: Optional[float] = None,
) -> EigenvalueStudy:
    """Lowest positive eigenvalue of H on the smooth branch per grid, Richardson-extrapolated (cells double)."""
    values = [ground_state(D, bc, n, sbp_order).lowest_positive() for n in cells]
    logger.info("lowest positive eigenvalue over %s: %s", list(cells), ["%.8f" % v for v in values])
    return EigenvalueStudy(list(cells), values, richardson_extrapolate(values, ratio=2.0, order=order))
