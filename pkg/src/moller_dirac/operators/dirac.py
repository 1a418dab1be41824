from __future__ import annotations

"""
Dirac operator D = gamma o nabla on a split metric, written as a first-order system.

With rho = beta sqrt(h):
    S = -beta^-1 gamma0,   A = h^-1/2 gamma1,
    B = -(d_t h) / (4 beta h) gamma0 + (d_x beta) / (2 beta sqrt h) gamma1 + V.
The zero-order part is gamma^a (1/2) div e_a, i.e. the spin connection in the
orthonormal frame, so that Herm(rho M B) = (1/2)(d_t(rho M S) + d_x(rho M A)).
"""

from typing import Any, Dict, Mapping, Optional

import numpy as np
from numpy.typing import ArrayLike

from ..errors import ContractError
from ..geometry import SplitMetric
from ..spin import GammaRep
from .system import FirstOrderSystem, Potential, conjugate_transpose, hermitian_part

SKEW_TOL = 1e-12


def _broadcast_matrix(scalar: np.ndarray, matrix: np.ndarray) -> np.ndarray:
    return np.asarray(scalar)[..., None, None] * matrix


def mass_potential(rep: GammaRep, mass: float):
    """V = i m Id, skew with respect to the spin form."""

    def V(t, x):
        shape = np.broadcast_shapes(np.shape(t), np.shape(x))
        return np.broadcast_to(1j * float(mass) * np.eye(2, dtype=complex), shape + (2, 2))

    return V


def potential_from_spec(rep: GammaRep, spec: Optional[Mapping[str, Any]]) -> Potential:
    if not spec:
        return None
    if "mass" in spec:
        return mass_potential(rep, float(spec["mass"]))
    raise ContractError(f"unsupported potential specification: {dict(spec)}")


def check_potential_skew(rep: GammaRep, g: SplitMetric, potential: Potential) -> float:
    """max |Herm(M V)| over a sample grid; zero for a spin-skew potential."""
    if potential is None:
        return 0.0
    tt, xx = g.sample_grid(9, 17)
    mv = rep.spin_form @ np.asarray(potential(tt, xx))
    return float(np.max(np.abs(hermitian_part(mv))))


def build_dirac(g: SplitMetric, rep: GammaRep, potential: Potential = None) -> FirstOrderSystem:
    residual = check_potential_skew(rep, g, potential)
    if residual > SKEW_TOL:
        raise ContractError(f"potential is not skew with respect to the spin form (residual {residual:.2e})")
    g0, g1 = rep.gamma0, rep.gamma1

    def sigma_dt(t, x):
        return _broadcast_matrix(-1.0 / g.lapse(t, x), g0).astype(complex)

    def A(t, x):
        return _broadcast_matrix(1.0 / np.sqrt(g.spatial(t, x)), g1).astype(complex)

    def B(t, x):
        beta = g.lapse(t, x)
        h = g.spatial(t, x)
        coef0 = -g.dh_dt(t, x) / (4.0 * beta * h)
        coef1 = g.dbeta_dx(t, x) / (2.0 * beta * np.sqrt(h))
        out = _broadcast_matrix(coef0, g0) + _broadcast_matrix(coef1, g1)
        if potential is not None:
            out = out + np.asarray(potential(t, x))
        return out.astype(complex)

    return FirstOrderSystem(sigma_dt, A, B, g, rep, label="dirac", info={"potential": potential is not None})


def check_symmetry(D: FirstOrderSystem, samples: int = 64, seed: int = 0) -> float:
    """max ||sigma(xi)^dagger M - M sigma(xi)|| over random points and covectors."""
    rng = np.random.default_rng(seed)
    d = D.metric.domain
    t = rng.uniform(d.t_start, d.t_end, samples)
    x = rng.uniform(0.0, d.length, samples)
    xi = rng.normal(size=(2, samples))
    sym = D.symbol(t, x, xi[0], xi[1])
    m = D.rep.spin_form
    return float(np.max(np.abs(conjugate_transpose(sym) @ m - m @ sym)))


def check_hyperbolicity(D: FirstOrderSystem, cone=None, nt: int = 9, nx: int = 33, ns: int = 21) -> Dict[str, float]:
    """Min eigenvalue of M sigma(tau) over future covectors tau = -dt + s c dx, |s| <= 1.

    c is the covector cone opening sqrt(h)/beta of D's own metric, or C sqrt(h_1)/beta_1
    when a ConeBound is passed. The boundary s = +-1 must be >= 0, the interior > 0.
    """
    tt, xx = D.metric.sample_grid(nt, nx)
    if cone is None:
        opening = np.sqrt(D.metric.spatial(tt, xx)) / D.metric.lapse(tt, xx)
    else:
        g1 = cone.g1
        opening = cone(tt[:, 0])[:, None] * np.sqrt(g1.spatial(tt, xx)) / g1.lapse(tt, xx)
    m = D.rep.spin_form
    edge_min = np.inf
    interior_min = np.inf
    for s in np.linspace(-1.0, 1.0, ns):
        sym = D.symbol(tt, xx, -np.ones_like(tt), s * opening)
        herm = hermitian_part(m @ sym)
        lam = float(np.min(np.linalg.eigvalsh(herm)))
        if abs(abs(s) - 1.0) < 1e-12:
            edge_min = min(edge_min, lam)
        else:
            interior_min = min(interior_min, lam)
    return {"edge_min": edge_min, "interior_min": interior_min}


def normal_symbol(D: FirstOrderSystem, side: str, t: ArrayLike) -> np.ndarray:
    """sigma_D(n^flat) for the outward unit normal on the line x = 0 ('left') or x = L ('right')."""
    g = D.metric
    x_b = 0.0 if side == "left" else g.domain.length
    sign = -1.0 if side == "left" else 1.0
    t = np.asarray(t, dtype=float)
    x = np.full_like(t, x_b)
    # n = sign h^-1/2 d_x, so n^flat = sign sqrt(h) dx
    return D.symbol(t, x, np.zeros_like(t), sign * np.sqrt(g.spatial(t, x)))


def characteristic_margin(D: FirstOrderSystem, nt: int = 33) -> float:
    """min |det sigma(n^flat)| over both boundary lines; > 0 means nowhere characteristic."""
    d = D.metric.domain
    t = np.linspace(d.t_start, d.t_end, nt)
    return float(min(np.min(np.abs(np.linalg.det(normal_symbol(D, side, t)))) for side in ("left", "right")))


def characteristic_speeds(D: FirstOrderSystem, t: ArrayLike, x: ArrayLike) -> np.ndarray:
    """Eigenvalues of S^-1 A (coordinate speeds of the system), sorted ascending."""
    s, a, _ = D.coefficients(t, x)
    speeds = np.linalg.eigvals(np.linalg.solve(s, a))
    return np.sort(speeds.real, axis=-1)


__all__ = [
    "build_dirac",
    "characteristic_margin",
    "characteristic_speeds",
    "check_hyperbolicity",
    "check_potential_skew",
    "check_symmetry",
    "mass_potential",
    "normal_symbol",
    "potential_from_spec",
]
