from __future__ import annotations

import numpy as np
import pytest

from moller_dirac.errors import ContractError
from moller_dirac.geometry import Domain, build_metric, minkowski
from moller_dirac.operators import (
    build_dirac,
    characteristic_margin,
    characteristic_speeds,
    check_hyperbolicity,
    check_skew_adjoint,
    check_symmetry,
    intertwine,
    potential_from_spec,
)
from moller_dirac.spin import make_canonical_rep

DOMAIN = Domain(t_end=1.0, length=1.0)


def _bumped():
    return build_metric({"preset": "bump", "params": {"beta_amplitude": 0.2, "h_amplitude": 0.3}}, DOMAIN)


def test_flat_coefficients() -> None:
    rep = make_canonical_rep()
    D = build_dirac(minkowski(DOMAIN), rep)
    s, a, b = D.coefficients(np.array([0.3]), np.array([0.6]))
    assert np.array_equal(s[0], -rep.gamma0)
    assert np.array_equal(a[0], rep.gamma1)
    assert np.array_equal(b[0], np.zeros((2, 2)))
    assert np.allclose(characteristic_speeds(D, 0.5, 0.5), [-1.0, 1.0])


def test_scaled_metric_speeds() -> None:
    g = build_metric({"preset": "scaled", "params": {"beta": 2.0, "h": 1.0}}, DOMAIN)
    D = build_dirac(g, make_canonical_rep())
    assert np.allclose(characteristic_speeds(D, 0.5, 0.5), [-2.0, 2.0])


def test_symbol_is_spin_symmetric_and_hyperbolic() -> None:
    D = build_dirac(_bumped(), make_canonical_rep())
    assert check_symmetry(D) < 1e-12
    cert = check_hyperbolicity(D)
    assert cert["edge_min"] >= -1e-12
    assert cert["interior_min"] > 0.0
    assert characteristic_margin(D) > 0.0


def test_potentials() -> None:
    rep = make_canonical_rep()
    g = minkowski(DOMAIN)
    assert potential_from_spec(rep, None) is None
    build_dirac(g, rep, potential_from_spec(rep, {"mass": 0.7}))
    with pytest.raises(ContractError):
        potential_from_spec(rep, {"charge": 1.0})

    def hermitian(t, x):
        shape = np.broadcast_shapes(np.shape(t), np.shape(x))
        return np.broadcast_to(np.eye(2, dtype=complex), shape + (2, 2))

    with pytest.raises(ContractError):
        build_dirac(g, rep, hermitian)


def test_flat_operator_is_skew_adjoint_to_round_off() -> None:
    D = build_dirac(minkowski(DOMAIN), make_canonical_rep())
    assert check_skew_adjoint(D, cells=40) < 1e-10


def test_curved_skew_residual_shrinks_under_refinement() -> None:
    D = build_dirac(_bumped(), make_canonical_rep(), potential_from_spec(make_canonical_rep(), {"mass": 0.5}))
    coarse = check_skew_adjoint(D, cells=40)
    fine = check_skew_adjoint(D, cells=80)
    assert fine < coarse / 2.0 or fine < 1e-12


def test_intertwined_operator_keeps_speeds_and_is_skew_for_the_target_metric() -> None:
    rep = make_canonical_rep()
    g0 = _bumped()
    D01 = intertwine(build_dirac(g0, rep), minkowski(DOMAIN))
    D0 = build_dirac(g0, rep)
    tt, xx = g0.sample_grid(5, 5)
    assert np.allclose(characteristic_speeds(D01, tt, xx), characteristic_speeds(D0, tt, xx), atol=1e-10)
    coarse = check_skew_adjoint(D01, cells=40)
    fine = check_skew_adjoint(D01, cells=80)
    assert fine < coarse / 2.0 or fine < 1e-10


def test_intertwine_needs_a_shared_domain() -> None:
    rep = make_canonical_rep()
    with pytest.raises(ContractError):
        intertwine(build_dirac(minkowski(DOMAIN), rep), minkowski(Domain(t_end=2.0, length=1.0)))
