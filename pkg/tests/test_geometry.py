from __future__ import annotations

import numpy as np
import pytest

from moller_dirac.errors import ContractError, DomainError
from moller_dirac.geometry import (
    ChiProfile,
    Domain,
    MetricPath,
    build_metric,
    characteristic_speed,
    cone_bound,
    cone_contained,
    conformal_factor_f,
    constant_chi,
    intermediate_metric,
    is_ultrastatic,
    minkowski,
    rescale,
    volume_slice,
)

DOMAIN = Domain(t_end=1.0, length=1.0)


def _bumped():
    return build_metric({"preset": "bump", "params": {"beta_amplitude": 0.2, "h_amplitude": -0.3}}, DOMAIN)


def test_minkowski_coefficients_are_one() -> None:
    g = minkowski(DOMAIN)
    tt, xx = g.sample_grid(5, 7)
    assert np.array_equal(g.lapse(tt, xx), np.ones_like(tt))
    assert np.array_equal(g.spatial(tt, xx), np.ones_like(tt))
    assert np.allclose(characteristic_speed(g, tt, xx), 1.0)


def test_domain_rejects_points_outside() -> None:
    g = minkowski(DOMAIN)
    with pytest.raises(DomainError):
        characteristic_speed(g, 1.5, 0.5)
    with pytest.raises(DomainError):
        characteristic_speed(g, 0.5, -0.1)


def test_unknown_preset_and_nonpositive_metric_are_rejected() -> None:
    with pytest.raises(ContractError):
        build_metric({"preset": "wormhole"}, DOMAIN)
    with pytest.raises(ContractError):
        build_metric({"preset": "scaled", "params": {"beta": -1.0}}, DOMAIN)


def test_conformal_factor_is_exactly_one_for_the_same_metric() -> None:
    g = _bumped()
    f = conformal_factor_f(g, g)
    tt, xx = g.sample_grid(9, 9)
    assert np.array_equal(f(tt, xx), np.ones_like(tt))


def test_conformal_factor_relates_volume_densities() -> None:
    g0 = _bumped()
    g1 = minkowski(DOMAIN)
    f = conformal_factor_f(g0, g1)
    tt, xx = g0.sample_grid(9, 9)
    assert np.allclose(f(tt, xx) ** 2 * g1.volume_density(tt, xx), g0.volume_density(tt, xx), atol=1e-14)


def test_rescale_matches_conformal_preset() -> None:
    conf = build_metric({"preset": "conformal", "params": {"amplitude": 0.25}}, DOMAIN)
    omega = conf.lapse
    g = rescale(minkowski(DOMAIN), omega)
    tt, xx = g.sample_grid(9, 9)
    assert np.allclose(g.lapse(tt, xx), conf.lapse(tt, xx))
    assert np.allclose(g.spatial(tt, xx), conf.spatial(tt, xx))
    # conformal rescalings keep the causal structure
    assert np.allclose(characteristic_speed(g, tt, xx), 1.0)


def test_cone_bound_holds_on_samples() -> None:
    g0 = _bumped()
    g1 = build_metric({"preset": "conformal", "params": {"amplitude": -0.2}}, DOMAIN)
    bound = cone_bound(g0, g1)
    assert bound.residual() <= 0.0
    c = bound(np.linspace(0.0, 1.0, 11))
    assert np.all(c > 0.0)


def test_intermediate_metric_cone_inside_both() -> None:
    g0 = _bumped()
    g1 = minkowski(DOMAIN)
    bar = intermediate_metric(g0, g1)
    assert cone_contained(bar, g0) <= 0.0
    assert cone_contained(bar, g1) <= 0.0


def test_ultrastatic_detection() -> None:
    assert is_ultrastatic(minkowski(DOMAIN))
    assert is_ultrastatic(build_metric({"preset": "ultrastatic", "params": {"h_amplitude": 0.3}}, DOMAIN))
    assert not is_ultrastatic(_bumped())


def test_chi_profile_is_exact_outside_the_transition() -> None:
    chi = ChiProfile(0.3, 0.7)
    t = np.linspace(0.0, 1.0, 101)
    values = chi(t)
    assert np.all(values[t <= 0.3] == 0.0)
    assert np.all(values[t >= 0.7] == 1.0)
    assert np.all(np.diff(values) >= 0.0)
    assert np.all(chi.derivative(t) >= 0.0)


def test_chi_derivative_matches_finite_differences() -> None:
    for kind in ("smooth", "polynomial"):
        chi = ChiProfile(0.2, 0.8, kind)
        t = np.linspace(0.25, 0.75, 11)
        fd = (chi(t + 1e-6) - chi(t - 1e-6)) / 2e-6
        assert np.allclose(chi.derivative(t), fd, atol=1e-6)


def test_chi_contract() -> None:
    with pytest.raises(ContractError):
        ChiProfile(0.7, 0.3)
    with pytest.raises(ContractError):
        constant_chi(1.5)
    assert np.all(constant_chi(1.0)(np.zeros(3)) == 1.0)


def test_metric_path_endpoints() -> None:
    g0 = _bumped()
    g1 = minkowski(DOMAIN)
    path = MetricPath(g0, g1)
    tt, xx = g0.sample_grid(5, 5)
    assert np.allclose(path.at(0.0).lapse(tt, xx), g0.lapse(tt, xx))
    assert np.allclose(path.at(1.0).spatial(tt, xx), g1.spatial(tt, xx))


def test_volume_slice_uses_spatial_density() -> None:
    g = build_metric({"preset": "scaled", "params": {"h": 4.0}}, DOMAIN)
    x = np.linspace(0.0, 1.0, 11)
    w = volume_slice(g, 0.5, x)
    assert w.sum() == pytest.approx(2.0)
