from __future__ import annotations

import numpy as np
import pytest

from moller_dirac.geometry import Domain, MetricPath, build_metric, minkowski
from moller_dirac.spin import (
    AdjunctionMap,
    boost_lift,
    clifford_of,
    clifford_of_covector,
    make_canonical_rep,
    metric_norm_sq,
    rapidity_of,
    slice_product,
)

DOMAIN = Domain(t_end=1.0, length=1.0)


def test_canonical_rep_invariants() -> None:
    inv = make_canonical_rep().check_invariants()
    assert inv["spin_form_indefinite"] == 1.0
    for key, value in inv.items():
        if key != "spin_form_indefinite":
            assert value <= 1e-12, key


def test_clifford_square_is_minus_norm() -> None:
    rep = make_canonical_rep()
    g = build_metric({"preset": "bump", "params": {"beta_amplitude": 0.2, "h_amplitude": 0.3}}, DOMAIN)
    rng = np.random.default_rng(3)
    t = rng.uniform(0.0, 1.0, 8)
    x = rng.uniform(0.0, 1.0, 8)
    v = rng.normal(size=(2, 8))
    c = clifford_of(rep, g, t, x, (v[0], v[1]))
    expected = -metric_norm_sq(g, t, x, (v[0], v[1]))[:, None, None] * np.eye(2)
    assert np.allclose(c @ c, expected, atol=1e-12)


def test_principal_symbol_of_dt_is_lapse_scaled() -> None:
    rep = make_canonical_rep()
    g = build_metric({"preset": "scaled", "params": {"beta": 2.0, "h": 1.0}}, DOMAIN)
    sym = clifford_of_covector(rep, g, 0.5, 0.5, (1.0, 0.0))
    # dt^sharp = -beta^-2 d_t, frame component -1/beta
    assert np.allclose(sym, -0.5 * rep.gamma0)


def test_adjunction_map_round_trip() -> None:
    rep = make_canonical_rep()
    ups = AdjunctionMap(rep)
    psi = np.array([1.0 + 2.0j, -0.5j])
    phi = np.array([0.3, 1.0 - 1.0j])
    assert np.allclose(ups.inverse(ups(psi)), psi)
    assert np.isclose(ups.pair(ups(psi), phi), rep.inner(psi, phi))


def test_slice_product_is_positive_definite() -> None:
    rep = make_canonical_rep()
    g = minkowski(DOMAIN)
    x = np.linspace(0.0, 1.0, 21)
    w = np.full(21, 0.05)
    rng = np.random.default_rng(0)
    psi = rng.normal(size=(21, 2)) + 1j * rng.normal(size=(21, 2))
    value = slice_product(rep, g, 0.5, x, w, psi, psi)
    assert abs(value.imag) < 1e-12
    assert value.real > 0.0


def test_boost_lift_intertwines_lorentz_boost() -> None:
    rep = make_canonical_rep()
    theta = 0.7
    lift = boost_lift(rep, theta)
    lorentz = np.array([[np.cosh(theta), np.sinh(theta)], [np.sinh(theta), np.cosh(theta)]])
    assert np.isclose(rapidity_of(lorentz), theta)
    for a in range(2):
        image = lorentz[0, a] * rep.gamma0 + lorentz[1, a] * rep.gamma1
        generator = rep.gamma0 if a == 0 else rep.gamma1
        assert np.allclose(image @ lift, lift @ generator, atol=1e-12)


def test_same_metric_path_is_trivial() -> None:
    g = minkowski(DOMAIN)
    path = MetricPath(g, g)
    assert float(path.at(0.3).lapse(0.2, 0.4)) == pytest.approx(1.0)
