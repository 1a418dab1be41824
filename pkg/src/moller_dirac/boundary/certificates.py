from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Any, Callable, Dict, Optional

import numpy as np

from ..geometry import SplitMetric, rescale
from ..operators import FirstOrderSystem, normal_symbol
from ..spin import GammaRep
from .spaces import BoundaryLabel, BoundarySpace, adjoint_space, chiral_projector, mit_projector

CERT_TOL = 1e-10


@dataclass(frozen=True)
class AdmissibilityCertificate:
    """Boundary form q = <., sigma(n^flat) .> on ran B, sampled over the boundary line.

    future_admissible: q <= 0 on B with rank B = #{eig <= 0}; past_admissible is the
    mirror statement. kernel_projector marks the complementary convention (B = ker pi).
    """

    side: str
    label: str
    rank: int
    q_min: float
    q_max: float
    eig_nonneg: int
    eig_nonpos: int
    future_admissible: bool
    past_admissible: bool
    self_adjoint: bool
    adjoint_distance: float
    projector_residual: float

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def projector_residuals(B: BoundarySpace, t: np.ndarray) -> Dict[str, float]:
    p = B.projector(t)
    c = B.complement(t)
    return {
        "idempotent": float(np.max(np.abs(p @ p - p))),
        "complement_product": float(np.max(np.abs(p @ c))),
        "sum": float(np.max(np.abs(p + c - np.eye(2)))),
        "trace": float(np.max(np.abs(np.trace(p, axis1=-2, axis2=-1) - 1.0))),
    }


def null_form_residual(rep: GammaRep, D: FirstOrderSystem, B: BoundarySpace, t: np.ndarray) -> float:
    """max |<psi, sigma(n^flat) psi>| over unit psi in ran B."""
    worst = 0.0
    form = rep.spin_form
    for ti in np.asarray(t, dtype=float).reshape(-1):
        u = B.basis(ti)
        q = u.conj().T @ form @ normal_symbol(D, B.side, ti) @ u
        worst = max(worst, float(np.max(np.abs(q))))
    return worst


def admissibility_certificate(D: FirstOrderSystem, B: BoundarySpace, nt: int = 17, tol: float = CERT_TOL) -> AdmissibilityCertificate:
    d = D.metric.domain
    times = np.linspace(d.t_start, d.t_end, nt)
    form = D.rep.spin_form
    q_min, q_max = np.inf, -np.inf
    ranks = set()
    nonneg, nonpos = set(), set()
    adjoint_distance = 0.0
    sigma = lambda s: normal_symbol(D, B.side, s)  # noqa: E731
    adjoint = adjoint_space(B, sigma, spin_form=form)
    for ti in times:
        s = sigma(ti)
        full = 0.5 * (form @ s + (form @ s).conj().T)
        lam = np.linalg.eigvalsh(full)
        nonneg.add(int(np.sum(lam >= -tol)))
        nonpos.add(int(np.sum(lam <= tol)))
        u = B.basis(ti)
        ranks.add(u.shape[1])
        restricted = np.linalg.eigvalsh(u.conj().T @ full @ u)
        q_min = min(q_min, float(np.min(restricted)))
        q_max = max(q_max, float(np.max(restricted)))
        adjoint_distance = max(adjoint_distance, float(np.max(np.abs(adjoint.projector(ti) - B.projector(ti)))))
    rank = ranks.pop() if len(ranks) == 1 else -1
    future = rank >= 0 and q_max <= tol and nonpos == {rank}
    past = rank >= 0 and q_min >= -tol and nonneg == {rank}
    residual = max(projector_residuals(B, times).values())
    return AdmissibilityCertificate(
        side=B.side,
        label=B.label.value,
        rank=rank,
        q_min=q_min,
        q_max=q_max,
        eig_nonneg=min(nonneg),
        eig_nonpos=min(nonpos),
        future_admissible=bool(future),
        past_admissible=bool(past),
        self_adjoint=bool(adjoint_distance <= 1e-10),
        adjoint_distance=adjoint_distance,
        projector_residual=residual,
    )


def conformal_residual(
    rep: GammaRep,
    g: SplitMetric,
    omega: Callable[[np.ndarray, np.ndarray], np.ndarray],
    kind: str = "mit",
    nt: int = 17,
) -> float:
    """max ||pi_g - pi_{Omega^2 g}|| on both sides; zero because projectors see only frame components."""
    build = {"mit": mit_projector, "chiral+": chiral_projector, "chiral-": lambda r, m, s: chiral_projector(r, m, s, sign=-1)}[kind]
    scaled = rescale(g, omega)
    times = np.linspace(g.domain.t_start, g.domain.t_end, nt)
    return max(
        float(np.max(np.abs(build(rep, g, side).projector(times) - build(rep, scaled, side).projector(times))))
        for side in ("left", "right")
    )


def kernel_projector(B: BoundarySpace, t: Optional[float] = None) -> np.ndarray:
    """Projector in the kernel convention, pi with ker pi = B."""
    t = B.metric.domain.t_start if t is None else t
    return B.complement(t)


def double_adjoint_distance(B: BoundarySpace, sigma_n: np.ndarray, spin_form: np.ndarray, t: float) -> float:
    once = adjoint_space(B, sigma_n, spin_form=spin_form)
    twice = adjoint_space(once, sigma_n, spin_form=spin_form)
    return float(np.max(np.abs(twice.projector(t) - B.projector(t))))


def random_admissible_space(rep: GammaRep, g: SplitMetric, side: str, seed: int = 0) -> BoundarySpace:
    """A rank-1 space spanned by a random null vector of the right-side form; used in adjoint checks."""
    rng = np.random.default_rng(seed)
    phase = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
    v = np.array([1.0, phase]) / np.sqrt(2.0)
    p = np.outer(v, v.conj())
    return BoundarySpace(side, BoundaryLabel.CUSTOM, lambda t: np.broadcast_to(p, np.shape(t) + (2, 2)), g)
