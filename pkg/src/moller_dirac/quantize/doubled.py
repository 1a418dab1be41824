from __future__ import annotations

"""
The doubled space Sol + Upsilon Sol over a finite family of discrete solutions.

Coordinates z = (c, d) stand for u + Upsilon v with u = sum_i c_i e_i and
v = sum_i conj(d_i) e_i, so the inner product is z^dagger diag(G, conj G) z' and the
conjugation Gamma(u + Upsilon v) = v + Upsilon u acts as z -> J conj(z), J the block swap.
"""

from dataclasses import dataclass
from typing import Callable, Dict, Optional

import numpy as np

from ..errors import ContractError, ShapeError

MAX_CONDITION = 1e8


@dataclass(frozen=True)
class DoubledSpace:
    basis: np.ndarray
    gram: np.ndarray

    @property
    def k(self) -> int:
        return self.gram.shape[0]

    @property
    def dim(self) -> int:
        return 2 * self.k

    @property
    def doubled_gram(self) -> np.ndarray:
        z = np.zeros((self.k, self.k), dtype=complex)
        return np.block([[self.gram, z], [z, np.conj(self.gram)]])

    @property
    def swap(self) -> np.ndarray:
        eye = np.eye(self.k)
        z = np.zeros((self.k, self.k))
        return np.block([[z, eye], [eye, z]]).astype(complex)

    def inner(self, z1: np.ndarray, z2: np.ndarray) -> complex:
        return complex(np.conj(z1) @ self.doubled_gram @ z2)

    def gamma(self, z: np.ndarray) -> np.ndarray:
        """Gamma z = J conj(z); antilinear."""
        return self.swap @ np.conj(np.asarray(z))

    def conjugate_operator(self, Q: np.ndarray) -> np.ndarray:
        """Gamma Q Gamma as a (linear) matrix: J conj(Q) J."""
        return self.swap @ np.conj(Q) @ self.swap

    def embed(self, c: np.ndarray) -> np.ndarray:
        """u + 0 for u with coefficients c."""
        c = np.asarray(c, dtype=complex)
        return np.concatenate([c, np.zeros_like(c)])

    def coefficients(self, psi: np.ndarray, product: Callable[[np.ndarray, np.ndarray], np.ndarray]) -> np.ndarray:
        """Coefficients of the gram-orthogonal projection of a slice onto span(basis)."""
        rhs = np.asarray([product(b, psi) for b in self.basis])
        return np.linalg.solve(self.gram, rhs)

    def certify(self) -> Dict[str, float]:
        lam = np.linalg.eigvalsh(self.gram)
        rng = np.random.default_rng(0)
        z = rng.normal(size=self.dim) + 1j * rng.normal(size=self.dim)
        w = rng.normal(size=self.dim) + 1j * rng.normal(size=self.dim)
        return {
            "gram_min_eig": float(lam[0]),
            "gram_hermitian": float(np.max(np.abs(self.gram - self.gram.conj().T))),
            "gamma_involution": float(np.max(np.abs(self.gamma(self.gamma(z)) - z))),
            "gamma_antiunitary": float(abs(self.inner(self.gamma(z), self.gamma(w)) - np.conj(self.inner(z, w)))),
        }


def build_doubled_space(
    solutions: np.ndarray,
    product: Callable[[np.ndarray, np.ndarray], np.ndarray],
    max_condition: float = MAX_CONDITION,
) -> DoubledSpace:
    """solutions: (k, ...) slices; product(psi, phi) the slice scalar product."""
    solutions = np.asarray(solutions, dtype=complex)
    if solutions.ndim < 2:
        raise ShapeError("expected a stacked family of slices")
    k = solutions.shape[0]
    G = np.empty((k, k), dtype=complex)
    for i in range(k):
        for j in range(k):
            G[i, j] = product(solutions[i], solutions[j])
    G = 0.5 * (G + G.conj().T)
    lam = np.linalg.eigvalsh(G)
    if lam[0] <= 0.0 or lam[-1] / lam[0] > max_condition:
        raise ContractError(f"solution family is rank deficient (gram eigenvalues {lam[0]:.3e} .. {lam[-1]:.3e})")
    return DoubledSpace(basis=solutions, gram=G)


def orthonormal_space(k: int, basis: Optional[np.ndarray] = None) -> DoubledSpace:
    """Doubled space whose gram is the identity (e.g. W-orthonormal eigenvectors)."""
    basis = np.eye(k, dtype=complex) if basis is None else np.asarray(basis, dtype=complex)
    return DoubledSpace(basis=basis, gram=np.eye(k, dtype=complex))
