from __future__ import annotations

import numpy as np
import pytest

from moller_dirac.errors import ContractError, ResourceError
from moller_dirac.quantize import (
    MAX_MODES,
    QuasiFreeState,
    car_representation,
    jordan_wigner,
    orthonormal_space,
    pfaffian,
    positivity_min,
    quasi_free_expectation,
    state_from_projector,
    state_report,
)


def _random(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.normal(size=n) + 1j * rng.normal(size=n)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_fock_representation_satisfies_the_car(k: int) -> None:
    rng = np.random.default_rng(k)
    space = orthonormal_space(k)
    car = car_representation(space)
    residuals = car.car_residuals(_random(rng, space.dim), _random(rng, space.dim))
    assert max(residuals.values()) < 1e-12


def test_vacuum_expectations_match_the_quasi_free_formula() -> None:
    rng = np.random.default_rng(5)
    space = orthonormal_space(2)
    car = car_representation(space)
    vacuum = state_from_projector(space, np.zeros((2, 2)))
    z = [_random(rng, space.dim) for _ in range(4)]

    two = car.expectation(car.xi(z[0]).conj().T @ car.xi(z[1]))
    assert two == pytest.approx(vacuum.two_point(z[0], z[1]), abs=1e-12)

    four = car.expectation(car.xi(z[0]) @ car.xi(z[1]) @ car.xi(z[2]) @ car.xi(z[3]))
    assert four == pytest.approx(quasi_free_expectation(vacuum, z), abs=1e-11)
    assert quasi_free_expectation(vacuum, z[:3]) == 0.0


def test_mixed_states_have_no_fock_vacuum() -> None:
    space = orthonormal_space(2)
    mixed = QuasiFreeState(space, 0.5 * np.eye(4, dtype=complex))
    assert mixed.is_valid()
    with pytest.raises(ContractError):
        car_representation(space, mixed)


def test_mode_limit() -> None:
    with pytest.raises(ResourceError):
        jordan_wigner(MAX_MODES + 1)
    with pytest.raises(ResourceError):
        car_representation(orthonormal_space(MAX_MODES + 1))


def test_pfaffian_squares_to_the_determinant() -> None:
    rng = np.random.default_rng(2)
    m = rng.normal(size=(6, 6))
    a = m - m.T
    assert pfaffian(a) ** 2 == pytest.approx(np.linalg.det(a))
    assert pfaffian(np.zeros((3, 3))) == 0.0
    assert pfaffian(np.array([[0.0, 2.5], [-2.5, 0.0]])) == pytest.approx(2.5)


def test_vacuum_positivity() -> None:
    vacuum = state_from_projector(orthonormal_space(2), np.zeros((2, 2)))
    assert positivity_min(vacuum, samples=5, seed=3) >= -1e-10
    report = state_report(vacuum, [1.0 + 2.0j], positivity_samples=3)
    assert report["two_point_samples"] == [[1.0, 2.0]]



@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_fields_over_solutions_anticommute(k: int) -> None:
    rng = np.random.default_rng(10 + k)
    space = orthonormal_space(k)
    car = car_representation(space)
    c1, c2 = _random(rng, k), _random(rng, k)
    residuals = car.field_residuals(c1, c2)
    assert residuals["fields_anticommute"] < 1e-12
    assert residuals["fields_adjoint"] < 1e-12
    z1, z2 = space.embed(c1), space.embed(c2)
    assert space.inner(space.gamma(z1), z2) == 0.0
    assert np.max(np.abs(car.xi(z1) @ car.xi(z2) + car.xi(z2) @ car.xi(z1))) < 1e-12
