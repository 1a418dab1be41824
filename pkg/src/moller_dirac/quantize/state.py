from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict

import numpy as np
import scipy.linalg as la

from ..errors import ContractError
from .doubled import DoubledSpace


@dataclass(frozen=True)
class QuasiFreeState:
    """Quasi-free state given by Q on the doubled space: omega(Xi(z)^* Xi(z')) = (z, Q z')."""

    space: DoubledSpace
    Q: np.ndarray

    def __post_init__(self) -> None:
        if self.Q.shape != (self.space.dim, self.space.dim):
            raise ContractError(f"Q must be {self.space.dim}x{self.space.dim}, got {self.Q.shape}")

    def two_point(self, z1: np.ndarray, z2: np.ndarray) -> complex:
        return self.space.inner(z1, self.Q @ z2)

    def pair(self, z1: np.ndarray, z2: np.ndarray) -> complex:
        """omega(Xi(z1) Xi(z2)) = (Gamma z1, Q z2)."""
        return self.space.inner(self.space.gamma(z1), self.Q @ z2)

    def symmetric_form(self) -> np.ndarray:
        """Q in an orthonormal frame of the doubled gram (Hermitian iff Q is self-adjoint)."""
        L = la.cholesky(self.space.doubled_gram, lower=True)
        return L.conj().T @ self.Q @ la.solve_triangular(L.conj().T, np.eye(self.space.dim), lower=False)

    def spectrum(self) -> np.ndarray:
        q = self.symmetric_form()
        return np.linalg.eigvalsh(0.5 * (q + q.conj().T))

    def certify(self) -> Dict[str, float]:
        g = self.space.doubled_gram
        gq = g @ self.Q
        lam = self.spectrum()
        return {
            "hermitian": float(np.max(np.abs(gq - gq.conj().T))),
            "Q_spectrum_min": float(lam[0]),
            "Q_spectrum_max": float(lam[-1]),
            "gamma_residual": float(np.max(np.abs(self.Q + self.space.conjugate_operator(self.Q) - np.eye(self.space.dim)))),
            "idempotent": float(np.max(np.abs(self.Q @ self.Q - self.Q))),
        }

    def is_valid(self, tol: float = 1e-10) -> bool:
        c = self.certify()
        return c["hermitian"] <= tol and c["gamma_residual"] <= tol and c["Q_spectrum_min"] >= -tol and c["Q_spectrum_max"] <= 1.0 + tol

    def to_dict(self) -> Dict[str, Any]:
        return {"k": self.space.k, **self.certify()}


def state_from_projector(space: DoubledSpace, P: np.ndarray) -> QuasiFreeState:
    """Q = P + (Id - Upsilon P Upsilon^-1) for a gram-orthogonal projector P on Sol coordinates."""
    P = np.asarray(P, dtype=complex)
    z = np.zeros_like(P)
    Q = np.block([[P, z], [z, np.eye(space.k) - np.conj(P)]])
    return QuasiFreeState(space, Q)
