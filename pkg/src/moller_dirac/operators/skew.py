from __future__ import annotations

"""Discrete Green-identity residual: |int <D psi, phi> + int <psi, D phi>| on a space-time grid."""

from typing import Optional, Sequence

import numpy as np

from ..geometry.fields import bump_2d
from .system import FirstOrderSystem


def default_sections(D: FirstOrderSystem, seed: int = 0) -> list:
    """Two overlapping compactly supported test sections (bump times a random spinor)."""
    d = D.metric.domain
    rng = np.random.default_rng(seed)
    T = d.t_end - d.t_start
    L = d.length
    sections = []
    for shift in (-0.08, 0.08):
        tc = d.t_start + T * (0.5 + shift * rng.uniform(0.5, 1.0))
        xc = L * (0.5 - shift * rng.uniform(0.5, 1.0))
        spinor = rng.normal(size=2) + 1j * rng.normal(size=2)

        def section(t, x, tc=tc, xc=xc, spinor=spinor):
            return bump_2d(t, x, tc, xc, 0.3 * T, 0.3 * L)[..., None] * spinor

        sections.append(section)
    return sections


def check_skew_adjoint(
    D: FirstOrderSystem,
    cells: int = 200,
    time_cells: Optional[int] = None,
    sections: Optional[Sequence] = None,
    seed: int = 0,
) -> float:
    """Residual of skew-adjointness in L^2(vol_g) with g = D.metric.

    Derivatives use the 2-1 summation-by-parts operator in t and x, so for constant
    coefficients the residual is at round-off; variable coefficients give O(dx^2).
    """
    from ..solver.sbp import SBPOperator

    d = D.metric.domain
    T = d.t_end - d.t_start
    nt = time_cells or max(8, int(round(cells * T / d.length)))
    sx = SBPOperator(d.length, cells)
    st = SBPOperator(T, nt)
    t = d.t_start + st.x
    tt, xx = np.meshgrid(t, sx.x, indexing="ij")
    psi_fn, phi_fn = sections if sections is not None else default_sections(D, seed)
    psi = psi_fn(tt, xx)
    phi = phi_fn(tt, xx)
    s, a, b = D.coefficients(tt, xx)
    rho = D.metric.volume_density(tt, xx)
    m = D.rep.spin_form

    def apply(u):
        du_t = st.apply(u, axis=0)
        du_x = sx.apply(u, axis=1)
        return (
            np.einsum("...ab,...b->...a", s, du_t)
            + np.einsum("...ab,...b->...a", a, du_x)
            + np.einsum("...ab,...b->...a", b, u)
        )

    d_psi = apply(psi)
    d_phi = apply(phi)
    weights = st.norm[:, None] * sx.norm[None, :] * rho
    lhs = np.einsum("tx,txa,ab,txb->", weights, np.conj(d_psi), m, phi)
    rhs = np.einsum("tx,txa,ab,txb->", weights, np.conj(psi), m, d_phi)
    return float(abs(lhs + rhs))
