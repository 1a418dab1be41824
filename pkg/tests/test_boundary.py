from __future__ import annotations

import numpy as np
import pytest

from moller_dirac.boundary import (
    BoundaryLabel,
    adjoint_space,
    admissibility_certificate,
    chiral_projector,
    conformal_residual,
    double_adjoint_distance,
    interpolate_subspace,
    interpolated_mit,
    make_boundary_condition,
    mit_projector,
    null_form_residual,
    projector_residuals,
    random_admissible_space,
    resolve_side,
)
from moller_dirac.errors import ConfigError, ContractError, DomainError
from moller_dirac.geometry import ChiProfile, Domain, MetricPath, build_metric, minkowski
from moller_dirac.operators import build_dirac, normal_symbol
from moller_dirac.spin import make_canonical_rep

DOMAIN = Domain(t_end=1.0, length=1.0)


def _deformed():
    return build_metric({"preset": "bump", "params": {"beta_amplitude": 0.2, "h_amplitude": 0.3, "x_center": 0.1}}, DOMAIN)


def test_resolve_side() -> None:
    g = minkowski(DOMAIN)
    assert resolve_side(g, 0.0) == "left"
    assert resolve_side(g, 1.0) == "right"
    with pytest.raises(DomainError):
        resolve_side(g, 0.5)
    with pytest.raises(DomainError):
        resolve_side(g, "top")


@pytest.mark.parametrize("kind", ["mit", "chiral+", "chiral-"])
def test_static_conditions_are_self_adjoint(kind: str) -> None:
    rep = make_canonical_rep()
    g = _deformed()
    D = build_dirac(g, rep)
    bc = make_boundary_condition(kind, rep, g)
    times = np.sort(np.random.default_rng(0).uniform(0.0, 1.0, 50))
    for space in (bc.left, bc.right):
        assert max(projector_residuals(space, times).values()) <= 1e-12
        assert null_form_residual(rep, D, space, times) <= 1e-12
        cert = admissibility_certificate(D, space)
        assert cert.rank == 1
        assert cert.future_admissible and cert.past_admissible
        assert cert.self_adjoint
        assert cert.adjoint_distance <= 1e-10
    assert bc.self_adjoint
    bc.require_round_trip()


def test_mit_projectors_are_conformally_invariant() -> None:
    rep = make_canonical_rep()
    g = _deformed()
    conf = build_metric({"preset": "conformal", "params": {"amplitude": 0.3}}, DOMAIN)
    for kind in ("mit", "chiral+", "chiral-"):
        assert conformal_residual(rep, g, conf.lapse, kind) <= 1e-12


def test_double_adjoint_returns_the_space() -> None:
    rep = make_canonical_rep()
    g = minkowski(DOMAIN)
    D = build_dirac(g, rep)
    sigma = normal_symbol(D, "right", 0.5)
    for seed in range(5):
        B = random_admissible_space(rep, g, "right", seed=seed)
        assert double_adjoint_distance(B, sigma, rep.spin_form, 0.5) <= 1e-10


def test_interpolated_mit_limits() -> None:
    rep = make_canonical_rep()
    g0 = _deformed()
    g1 = minkowski(DOMAIN)
    chi = ChiProfile(0.3, 0.7)
    path = MetricPath(g0, g1)
    for side in ("left", "right"):
        space = interpolated_mit(rep, path, chi, side)
        assert space.label is BoundaryLabel.INTERPOLATED
        early = np.linspace(0.0, 0.3, 7)
        late = np.linspace(0.7, 1.0, 7)
        assert np.allclose(space.projector(early), mit_projector(rep, g0, side).projector(early), atol=1e-8)
        assert np.array_equal(space.projector(late), mit_projector(rep, g1, side).projector(late))


def test_interpolated_conditions_need_path_and_chi() -> None:
    rep = make_canonical_rep()
    g = minkowski(DOMAIN)
    with pytest.raises(ConfigError):
        make_boundary_condition("interpolated-mit", rep, g)
    with pytest.raises(ConfigError):
        make_boundary_condition("robin", rep, g)


def test_interpolate_subspace_endpoints() -> None:
    q = np.diag([1.0, -1.0]).astype(complex)
    w0 = np.array([1.0, 0.0])
    w1 = np.array([1.0, 0.5]) / np.sqrt(1.25)
    family = interpolate_subspace(w0, w1, q)
    assert np.allclose(family.projector(0.0), np.outer(w0, w0))
    assert np.allclose(family.projector(1.0), np.outer(w1, w1))
    assert family.min_form(np.linspace(0.0, 1.0, 11)) > 0.0


def test_interpolate_subspace_contract() -> None:
    with pytest.raises(ContractError):
        interpolate_subspace([1.0, 0.0], [1.0, 0.0], np.array([[1.0, 1.0], [0.0, -1.0]]))
    with pytest.raises(ContractError):
        interpolate_subspace([1.0, 0.0], [0.0, 1.0], np.diag([1.0, -1.0]))


def test_chiral_projector_is_a_rank_one_projector() -> None:
    rep = make_canonical_rep()
    g = _deformed()
    times = np.linspace(0.0, 1.0, 9)
    for sign in (1, -1):
        space = chiral_projector(rep, g, "left", sign)
        P = space.projector(times)
        assert np.allclose(P @ P, P, atol=1e-12)
        assert np.allclose(np.trace(P, axis1=-2, axis2=-1), 1.0)
    plus = chiral_projector(rep, g, "left", 1).projector(times)
    minus = chiral_projector(rep, g, "left", -1).projector(times)
    assert np.allclose(plus + minus, np.eye(2))


def test_mit_space_is_its_own_adjoint() -> None:
    rep = make_canonical_rep()
    g = minkowski(DOMAIN)
    D = build_dirac(g, rep)
    B = mit_projector(rep, g, "right")
    adjoint = adjoint_space(B, lambda t: normal_symbol(D, "right", t), rep.spin_form)
    times = np.linspace(0.0, 1.0, 5)
    assert np.allclose(adjoint.projector(times), B.projector(times), atol=1e-10)
    assert adjoint.label is BoundaryLabel.ADJOINT
    with pytest.raises(ContractError):
        adjoint_space(B, np.zeros((2, 2)), rep.spin_form).projector(0.5)
