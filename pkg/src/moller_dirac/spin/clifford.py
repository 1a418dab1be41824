from __future__ import annotations

"""
Clifford representation for signature (-, +) in 1+1 dimensions.

Frame convention: e0 = beta^-1 d_t, e1 = h^-1/2 d_x. Vectors are given by
coordinate components (v_t, v_x), covectors by (xi_t, xi_x).
"""

from dataclasses import dataclass
from typing import Dict, Sequence

import numpy as np
from numpy.typing import ArrayLike

from ..errors import ShapeError
from ..geometry import SplitMetric

ETA = np.diag([-1.0, 1.0])


@dataclass(frozen=True)
class GammaRep:
    gamma0: np.ndarray
    gamma1: np.ndarray
    spin_form: np.ndarray
    chirality: np.ndarray

    @property
    def generators(self) -> tuple[np.ndarray, np.ndarray]:
        return self.gamma0, self.gamma1

    def gamma(self, v0: ArrayLike, v1: ArrayLike) -> np.ndarray:
        """v0 gamma0 + v1 gamma1 for frame components (broadcast over leading axes)."""
        v0 = np.asarray(v0, dtype=float)[..., None, None]
        v1 = np.asarray(v1, dtype=float)[..., None, None]
        return v0 * self.gamma0 + v1 * self.gamma1

    def spin_adjoint(self, op: np.ndarray) -> np.ndarray:
        """Adjoint w.r.t. the spin form: M^-1 op^dagger M."""
        m_inv = np.linalg.inv(self.spin_form)
        return m_inv @ np.conj(np.swapaxes(op, -1, -2)) @ self.spin_form

    def inner(self, psi: np.ndarray, phi: np.ndarray) -> np.ndarray:
        """Pointwise spin product psi^dagger M phi over the last axis."""
        return np.einsum("...i,ij,...j->...", np.conj(psi), self.spin_form, phi)

    def check_invariants(self) -> Dict[str, float]:
        g0, g1, m, chi = self.gamma0, self.gamma1, self.spin_form, self.chirality
        eye = np.eye(2)
        gens = (g0, g1)
        clifford = max(
            float(np.max(np.abs(gens[a] @ gens[b] + gens[b] @ gens[a] + 2.0 * ETA[a, b] * eye)))
            for a in range(2)
            for b in range(2)
        )
        hermitian = max(float(np.max(np.abs(g.conj().T @ m - m @ g))) for g in gens)
        eig = np.linalg.eigvalsh(m)
        return {
            "clifford": clifford,
            "spin_hermitian": hermitian,
            "spin_form_hermitian": float(np.max(np.abs(m - m.conj().T))),
            "spin_form_indefinite": float(min(eig[0], 0.0) * max(eig[-1], 0.0) < 0.0),
            "chirality_square": float(np.max(np.abs(chi @ chi - eye))),
            "chirality_anticommutes": max(float(np.max(np.abs(chi @ g + g @ chi))) for g in gens),
        }


def make_canonical_rep() -> GammaRep:
    gamma0 = np.array([[0, 1], [1, 0]], dtype=complex)
    gamma1 = np.array([[0, 1], [-1, 0]], dtype=complex)
    return GammaRep(gamma0=gamma0, gamma1=gamma1, spin_form=gamma0.copy(), chirality=gamma0 @ gamma1)


@dataclass(frozen=True)
class AdjunctionMap:
    """Upsilon psi = <psi, .>, stored as the row vector psi^dagger M."""

    rep: GammaRep

    def __call__(self, psi: np.ndarray) -> np.ndarray:
        return np.conj(psi) @ self.rep.spin_form

    def inverse(self, row: np.ndarray) -> np.ndarray:
        m_inv_h = np.linalg.inv(self.rep.spin_form).conj().T
        return np.conj(row) @ m_inv_h.T

    def pair(self, row: np.ndarray, phi: np.ndarray) -> np.ndarray:
        return np.einsum("...i,...i->...", row, phi)


def frame_components(g: SplitMetric, t: ArrayLike, x: ArrayLike, v: Sequence[ArrayLike]) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal-frame components of the coordinate vector (v_t, v_x)."""
    return g.lapse(t, x) * np.asarray(v[0], dtype=float), np.sqrt(g.spatial(t, x)) * np.asarray(v[1], dtype=float)


def sharp(g: SplitMetric, t: ArrayLike, x: ArrayLike, xi: Sequence[ArrayLike]) -> tuple[np.ndarray, np.ndarray]:
    return -np.asarray(xi[0], dtype=float) / g.lapse(t, x) ** 2, np.asarray(xi[1], dtype=float) / g.spatial(t, x)


def flat(g: SplitMetric, t: ArrayLike, x: ArrayLike, v: Sequence[ArrayLike]) -> tuple[np.ndarray, np.ndarray]:
    return -g.lapse(t, x) ** 2 * np.asarray(v[0], dtype=float), g.spatial(t, x) * np.asarray(v[1], dtype=float)


def metric_norm_sq(g: SplitMetric, t: ArrayLike, x: ArrayLike, v: Sequence[ArrayLike]) -> np.ndarray:
    v0, v1 = frame_components(g, t, x, v)
    return -(v0**2) + v1**2


def clifford_of(rep: GammaRep, g: SplitMetric, t: ArrayLike, x: ArrayLike, v: Sequence[ArrayLike]) -> np.ndarray:
    """gamma(v) for a coordinate vector; gamma(v)^2 = -g(v, v) Id."""
    g.domain.check(t, x)
    v0, v1 = frame_components(g, t, x, v)
    return rep.gamma(v0, v1)


def clifford_of_covector(rep: GammaRep, g: SplitMetric, t: ArrayLike, x: ArrayLike, xi: Sequence[ArrayLike]) -> np.ndarray:
    """gamma(xi^sharp), the Dirac principal symbol."""
    return clifford_of(rep, g, t, x, sharp(g, t, x, xi))


def future_normal(g: SplitMetric, t: ArrayLike, x: ArrayLike) -> tuple[np.ndarray, np.ndarray]:
    beta = g.lapse(t, x)
    return 1.0 / beta, np.zeros_like(beta)


def slice_product(
    rep: GammaRep,
    g: SplitMetric,
    t: float,
    x: np.ndarray,
    weights: np.ndarray,
    psi: np.ndarray,
    phi: np.ndarray,
) -> np.ndarray:
    """sum_j w_j <psi_j, gamma(nu) phi_j> with nu the future unit normal.

    psi and phi have shape (..., n, 2) on the n nodes x; leading axes broadcast.
    """
    psi = np.asarray(psi)
    phi = np.asarray(phi)
    n = np.size(x)
    if psi.shape[-2:] != (n, 2) or phi.shape[-2:] != (n, 2):
        raise ShapeError(f"slices must have trailing shape ({n}, 2), got {psi.shape} and {phi.shape}")
    nu = clifford_of(rep, g, t, x, future_normal(g, t, x))
    kernel = rep.spin_form @ nu
    return np.einsum("j,...ja,jab,...jb->...", weights, np.conj(psi), kernel, phi)
