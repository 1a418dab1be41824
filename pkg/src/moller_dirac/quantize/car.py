from __future__ import annotations

"""
Finite CAR representations and quasi-free expectation values.

Xi is linear on the doubled space with Xi(z)^* = Xi(Gamma z) and
{Xi(z)^*, Xi(z')} = (z, z') 1. Given an orthonormal basis a_i of ran(Id - Q) for a pure
state, Xi(z) = sum_i (a_i, z) c_i + (Gamma a_i, z) c_i^* with Jordan-Wigner modes c_i,
and the Fock vacuum realises the state.
"""

from dataclasses import dataclass
from functools import reduce
from itertools import product as iproduct
from typing import List, Optional, Sequence

import numpy as np
import scipy.linalg as la

from ..errors import ContractError, ResourceError
from .doubled import DoubledSpace
from .state import QuasiFreeState

MAX_MODES = 6

_Z = np.diag([1.0, -1.0]).astype(complex)
_LOWER = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)


def jordan_wigner(k: int) -> List[np.ndarray]:
    """Annihilators c_0..c_{k-1} on (C^2)^{\\otimes k}."""
    if k > MAX_MODES:
        raise ResourceError(f"{k} modes exceed the limit of {MAX_MODES}")
    modes = []
    for i in range(k):
        factors = [_Z] * i + [_LOWER] + [np.eye(2, dtype=complex)] * (k - i - 1)
        modes.append(reduce(np.kron, factors))
    return modes


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b + b @ a


@dataclass(frozen=True)
class CarRep:
    space: DoubledSpace
    frame: np.ndarray
    modes: List[np.ndarray]

    @property
    def k(self) -> int:
        return len(self.modes)

    @property
    def vacuum(self) -> np.ndarray:
        v = np.zeros(2**self.k, dtype=complex)
        v[0] = 1.0
        return v

    def xi(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        out = np.zeros((2**self.k, 2**self.k), dtype=complex)
        for i, c in enumerate(self.modes):
            a = self.frame[:, i]
            out = out + self.space.inner(a, z) * c + self.space.inner(self.space.gamma(a), z) * c.conj().T
        return out

    def expectation(self, op: np.ndarray) -> complex:
        v = self.vacuum
        return complex(v.conj() @ op @ v)

    def car_residuals(self, z1: np.ndarray, z2: np.ndarray) -> dict:
        x1, x2 = self.xi(z1), self.xi(z2)
        eye = np.eye(2**self.k)
        gam = self.space.gamma
        return {
            "self_dual": float(np.max(np.abs(anticommutator(x1, x2) - self.space.inner(gam(z1), z2) * eye))),
            "adjoint": float(np.max(np.abs(anticommutator(x1.conj().T, x2) - self.space.inner(z1, z2) * eye))),
            "hermiticity": float(np.max(np.abs(x1.conj().T - self.xi(gam(z1))))),
        }

    def field_residuals(self, c1: np.ndarray, c2: np.ndarray) -> dict:
        """{Xi(psi), Xi(phi)} = 0 and {Xi(psi)^*, Xi(phi)} = <<psi, phi>> 1 for psi, phi in Sol + 0."""
        z1, z2 = self.space.embed(c1), self.space.embed(c2)
        x1, x2 = self.xi(z1), self.xi(z2)
        product = complex(np.conj(np.asarray(c1)) @ self.space.gram @ np.asarray(c2))
        return {
            "fields_anticommute": float(np.max(np.abs(anticommutator(x1, x2)))),
            "fields_adjoint": float(np.max(np.abs(anticommutator(x1.conj().T, x2) - product * np.eye(2**self.k)))),
        }


def _orthonormal_frame(space: DoubledSpace, projector: np.ndarray) -> np.ndarray:
    """Columns: a doubled-gram orthonormal basis of ran(projector)."""
    g = space.doubled_gram
    cols = la.orth(projector)
    m = cols.conj().T @ g @ cols
    m = 0.5 * (m + m.conj().T)
    w, v = np.linalg.eigh(m)
    return cols @ v @ np.diag(1.0 / np.sqrt(w))


def car_representation(space: DoubledSpace, state: Optional[QuasiFreeState] = None) -> CarRep:
    """Fock representation whose vacuum is `state` (must be pure) or, by default, Sol + 0 annihilated."""
    if space.k > MAX_MODES:
        raise ResourceError(f"{space.k} modes exceed the limit of {MAX_MODES}")
    if state is None:
        ann = np.zeros((space.dim, space.dim), dtype=complex)
        ann[: space.k, : space.k] = np.eye(space.k)
    else:
        if np.max(np.abs(state.Q @ state.Q - state.Q)) > 1e-8:
            raise ContractError("a Fock vacuum realises only pure states (Q must be a projector)")
        ann = np.eye(space.dim) - state.Q
    frame = _orthonormal_frame(space, ann)
    if frame.shape[1] != space.k:
        raise ContractError(f"annihilation subspace has dimension {frame.shape[1]}, expected {space.k}")
    return CarRep(space=space, frame=frame, modes=jordan_wigner(space.k))


def pfaffian(a: np.ndarray) -> complex:
    """Pfaffian of an antisymmetric matrix by expansion along the first row."""
    n = a.shape[0]
    if n == 0:
        return 1.0
    if n % 2:
        return 0.0
    total = 0.0
    for j in range(1, n):
        keep = [i for i in range(1, n) if i != j]
        total = total + (-1) ** (j - 1) * a[0, j] * pfaffian(a[np.ix_(keep, keep)])
    return total


def quasi_free_expectation(state: QuasiFreeState, vectors: Sequence[np.ndarray]) -> complex:
    """omega(Xi(z_1) ... Xi(z_n)): zero for odd n, otherwise the Pfaffian of the ordered pairings."""
    n = len(vectors)
    if n % 2:
        return 0.0
    a = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(i + 1, n):
            a[i, j] = state.pair(vectors[i], vectors[j])
            a[j, i] = -a[i, j]
    return complex(pfaffian(a))


def _adjoint_word(space: DoubledSpace, coef: complex, word: Sequence[np.ndarray]) -> tuple:
    return np.conj(coef), [space.gamma(z) for z in reversed(word)]


def positivity_min(state: QuasiFreeState, samples: int = 20, seed: int = 0) -> float:
    """min over random A (degree <= 2 in Xi) of omega(A^* A) / ||coefficients||^2."""
    rng = np.random.default_rng(seed)
    space = state.space
    worst = np.inf
    for _ in range(samples):
        vecs = [rng.normal(size=space.dim) + 1j * rng.normal(size=space.dim) for _ in range(3)]
        coefs = rng.normal(size=4) + 1j * rng.normal(size=4)
        words = [(coefs[0], []), (coefs[1], [vecs[0]]), (coefs[2], [vecs[1]]), (coefs[3], [vecs[1], vecs[2]])]
        value = 0.0
        for (ca, wa), (cb, wb) in iproduct(words, words):
            c_adj, w_adj = _adjoint_word(space, ca, wa)
            value = value + c_adj * cb * quasi_free_expectation(state, w_adj + list(wb))
        worst = min(worst, float(np.real(value)) / float(np.sum(np.abs(coefs) ** 2)))
    return worst
