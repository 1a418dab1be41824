from __future__ import annotations

import numpy as np
import pytest

from moller_dirac.errors import ContractError
from moller_dirac.geometry import Domain, MetricPath, build_metric, minkowski
from moller_dirac.spin import (
    SpinorTransportField,
    kappa_f,
    make_canonical_rep,
    metric_norm_sq,
    transport_covector,
    transport_result,
    transport_spinor,
    transport_vector,
    transport_vector_closed,
)

DOMAIN = Domain(t_end=1.0, length=1.0)


def _pair():
    g0 = build_metric({"preset": "bump", "params": {"beta_amplitude": 0.25, "h_amplitude": -0.3}}, DOMAIN)
    g1 = build_metric({"preset": "conformal", "params": {"amplitude": 0.2}}, DOMAIN)
    return g0, g1


def _points(n: int = 12):
    rng = np.random.default_rng(11)
    return rng.uniform(0.0, 1.0, n), rng.uniform(0.0, 1.0, n), rng.normal(size=(2, n))


def test_ode_transport_matches_closed_form() -> None:
    path = MetricPath(*_pair())
    t, x, y = _points()
    ode = transport_vector(path, t, x, (y[0], y[1]))
    closed = transport_vector_closed(path, t, x, (y[0], y[1]))
    assert np.max(np.abs(ode - closed)) <= 1e-8


def test_transport_is_an_isometry() -> None:
    g0, g1 = _pair()
    path = MetricPath(g0, g1)
    t, x, y = _points()
    moved = transport_vector(path, t, x, (y[0], y[1]))
    before = metric_norm_sq(g0, t, x, (y[0], y[1]))
    after = metric_norm_sq(g1, t, x, (moved[..., 0], moved[..., 1]))
    assert np.allclose(before, after, atol=1e-8)


def test_covector_transport_is_dual() -> None:
    g0, g1 = _pair()
    path = MetricPath(g0, g1)
    t, x, y = _points()
    xi = np.random.default_rng(5).normal(size=(2, t.size))
    moved_v = transport_vector_closed(path, t, x, (y[0], y[1]))
    moved_xi = transport_covector(path, t, x, (xi[0], xi[1]))
    before = xi[0] * y[0] + xi[1] * y[1]
    after = moved_xi[..., 0] * moved_v[..., 0] + moved_xi[..., 1] * moved_v[..., 1]
    assert np.allclose(before, after, atol=1e-12)


def test_kappa_preserves_spin_form() -> None:
    rep = make_canonical_rep()
    path = MetricPath(*_pair())
    t, x, _ = _points()
    kappa = transport_result(path, t, x, rep).kappa
    m = rep.spin_form
    assert np.max(np.abs(np.conj(np.swapaxes(kappa, -1, -2)) @ m @ kappa - m)) <= 1e-8


def test_kappa_is_identity_for_split_metrics() -> None:
    # diagonal split metrics differ by a pure rescaling of the frame, no boost
    rep = make_canonical_rep()
    path = MetricPath(*_pair())
    t, x, _ = _points()
    kappa = SpinorTransportField(path, rep)(t, x)
    assert np.allclose(kappa, np.eye(2), atol=1e-12)


def test_kappa_identity_on_same_metric() -> None:
    rep = make_canonical_rep()
    g = minkowski(DOMAIN)
    t, x, _ = _points()
    kappa = transport_result(MetricPath(g, g), t, x, rep).kappa
    assert np.max(np.abs(kappa - np.eye(2))) <= 1e-12


def test_kappa_f_inverse_and_contract() -> None:
    kf = kappa_f(np.array([2.0, 0.5]), np.broadcast_to(np.eye(2), (2, 2, 2)))
    psi = np.array([[1.0, 2.0], [3.0, -1.0]], dtype=complex)
    assert np.allclose(kf.apply_inverse(kf.apply(psi)), psi)
    with pytest.raises(ContractError):
        kappa_f(np.array([0.0]), np.eye(2)[None])


def test_transport_spinor_matches_the_transport_result() -> None:
    rep = make_canonical_rep()
    path = MetricPath(*_pair())
    t, x, _ = _points(5)
    assert np.allclose(transport_spinor(path, t, x, rep), transport_result(path, t, x, rep).kappa, atol=1e-14)
