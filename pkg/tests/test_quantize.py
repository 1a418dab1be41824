from __future__ import annotations

import numpy as np
import pytest

from moller_dirac.boundary import make_boundary_condition
from moller_dirac.errors import ContractError, ShapeError
from moller_dirac.geometry import Domain, build_metric, minkowski
from moller_dirac.operators import build_dirac, potential_from_spec
from moller_dirac.quantize import (
    QuasiFreeState,
    SlicedState,
    build_doubled_space,
    discrete_hamiltonian,
    field_equation_residual,
    ground_state,
    ground_state_Q,
    lowest_positive_eigenvalue,
    mit_shooting_eigenvalue,
    orthonormal_space,
    roughness,
    state_from_projector,
    two_point,
)
from moller_dirac.spin import make_canonical_rep
from moller_dirac.suites.fixtures import bump_source

DOMAIN = Domain(t_end=1.0, length=1.0)


def _massive():
    rep = make_canonical_rep()
    g = minkowski(DOMAIN)
    potential = potential_from_spec(rep, {"mass": 1.0})
    return g, rep, potential, build_dirac(g, rep, potential), make_boundary_condition("mit", rep, g)


def _massless():
    rep = make_canonical_rep()
    g = minkowski(DOMAIN)
    return g, rep, build_dirac(g, rep), make_boundary_condition("mit", rep, g)


def test_orthonormal_space_conjugation_is_an_antiunitary_involution() -> None:
    cert = orthonormal_space(3).certify()
    assert cert["gamma_involution"] == 0.0
    assert cert["gamma_antiunitary"] < 1e-12
    assert cert["gram_min_eig"] == pytest.approx(1.0)


def test_doubled_space_rejects_degenerate_families() -> None:
    def product(a, b):
        return np.vdot(a, b)

    family = np.array([[1.0, 0.0], [2.0, 0.0]])
    with pytest.raises(ContractError):
        build_doubled_space(family, product)
    with pytest.raises(ShapeError):
        build_doubled_space(np.ones(3), product)
    space = build_doubled_space(np.array([[1.0, 0.0], [1.0, 1.0]]), product)
    assert space.k == 2
    assert np.allclose(space.gram, [[1.0, 1.0], [1.0, 2.0]])


def test_vacuum_state_is_a_valid_pure_state() -> None:
    space = orthonormal_space(3)
    vacuum = state_from_projector(space, np.zeros((3, 3)))
    cert = vacuum.certify()
    assert vacuum.is_valid()
    assert cert["idempotent"] == 0.0
    assert cert["Q_spectrum_min"] == pytest.approx(0.0, abs=1e-12)
    assert cert["Q_spectrum_max"] == pytest.approx(1.0)


def test_state_shape_is_checked() -> None:
    with pytest.raises(ContractError):
        QuasiFreeState(orthonormal_space(2), np.eye(3))


def test_discrete_hamiltonian_conserves_the_slice_energy() -> None:
    _, _, _, D, bc = _massive()
    ham = discrete_hamiltonian(D, bc, 20)
    scale = float(np.max(np.abs(ham.W @ ham.L)))
    assert ham.skew_residual <= 1e-10 * scale
    assert ham.L.shape == (42, 42)


def test_ground_state_is_a_pure_quasi_free_state() -> None:
    _, _, _, D, bc = _massive()
    gs = ground_state(D, bc, 24)
    cert = gs.state.certify()
    assert cert["hermitian"] < 1e-10
    assert cert["gamma_residual"] < 1e-10
    assert cert["Q_spectrum_min"] > -1e-10
    assert cert["Q_spectrum_max"] < 1.0 + 1e-10
    assert cert["idempotent"] < 1e-8
    assert gs.lowest_positive() > 1.0
    assert np.allclose(ground_state_Q(D, bc, 24).Q, gs.state.Q, atol=1e-8)


def test_ground_states_need_a_static_metric() -> None:
    rep = make_canonical_rep()
    g = build_metric({"preset": "bump", "params": {"beta_amplitude": 0.2}}, DOMAIN)
    D = build_dirac(g, rep)
    bc = make_boundary_condition("mit", rep, g)
    with pytest.raises(ContractError):
        ground_state(D, bc, 16)
    with pytest.raises(ContractError):
        mit_shooting_eigenvalue(g, rep)


@pytest.mark.slow
def test_lowest_eigenvalue_agrees_with_shooting() -> None:
    g, rep, potential, D, bc = _massive()
    discrete = ground_state(D, bc, 80).lowest_positive()
    oracle = mit_shooting_eigenvalue(g, rep, bracket=(0.1, 4.0), potential=potential)
    assert discrete == pytest.approx(oracle, rel=1e-2)


def test_massless_lowest_mode_sits_on_the_smooth_branch() -> None:
    _, _, D, bc = _massless()
    gs = ground_state(D, bc, 50)
    i = int(np.argmin(np.where(gs.eigenvalues > 0.0, gs.eigenvalues, np.inf)))
    assert gs.physical[i]
    assert roughness(gs.vectors[:, [i]], 50)[0] < 0.1
    assert gs.lowest_positive() == gs.lowest_positive(physical_only=False)
    assert gs.lowest_positive() == pytest.approx(np.pi / 2, abs=2e-3)
    assert 0 < int(np.sum(gs.physical)) < gs.eigenvalues.size // 2


def test_massless_eigenvalue_extrapolates_to_the_mit_root() -> None:
    g, rep, D, bc = _massless()
    study = lowest_positive_eigenvalue(D, bc, [50, 100], order=2.0)
    assert study.values[1] == pytest.approx(np.pi / 2, abs=2e-3)
    assert abs(study.extrapolated.value - np.pi / 2) <= 1e-4
    oracle = mit_shooting_eigenvalue(g, rep)
    assert oracle == pytest.approx(np.pi / 2, abs=1e-6)
    assert abs(study.extrapolated.value - oracle) <= 1e-4


def test_resolved_state_lives_on_an_orthonormal_smooth_family() -> None:
    _, _, _, D, bc = _massive()
    gs = ground_state(D, bc, 32)
    resolved = gs.resolved_state()
    assert resolved.space.k == int(np.sum(gs.physical))
    assert np.allclose(resolved.space.gram, np.eye(resolved.space.k), atol=1e-10)
    assert resolved.is_valid(tol=1e-10)
    assert resolved.certify()["idempotent"] < 1e-10
    lowest = gs.resolved_state(count=4)
    assert lowest.space.k == 4
    assert gs.to_dict()["resolved_modes"] == resolved.space.k


def test_two_point_function_of_the_ground_state() -> None:
    _, _, _, D, bc = _massive()
    sliced = SlicedState(D, bc, ground_state(D, bc, 32).state, DOMAIN.t_end, 32)
    f = bump_source(0.5, 0.5, 0.2, 0.2, np.array([1.0, 0.5j]))
    h = bump_source(0.4, 0.6, 0.2, 0.2, np.array([0.3, 1.0]))

    def zero(t, x):
        return 0.0 * f(t, x)

    value = two_point(sliced, f, f)
    assert value.real > 0.0
    assert abs(value.imag) <= 1e-8 * abs(value)
    assert two_point(sliced, f, zero) == 0.0
    assert two_point(sliced, f, h) == pytest.approx(np.conj(two_point(sliced, h, f)), rel=1e-8)


def test_field_equation_residual_shrinks_under_refinement() -> None:
    _, _, _, D, bc = _massive()
    f = bump_source(0.5, 0.5, 0.3, 0.25, np.array([1.0, 0.5j]))
    f_prime = bump_source(0.5, 0.45, 0.3, 0.25, np.array([0.5, 1.0]))
    residuals = []
    for N in (40, 80):
        sliced = SlicedState(D, bc, ground_state(D, bc, N).state, DOMAIN.t_end, N)
        residuals.append(field_equation_residual(sliced, f, f_prime))
    assert residuals[1] < residuals[0] / 2.5
