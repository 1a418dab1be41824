from __future__ import annotations

import numpy as np
import pytest

from moller_dirac.boundary import make_boundary_condition
from moller_dirac.errors import ConfigError, DivergenceError, DomainError, ShapeError
from moller_dirac.geometry import Domain, build_metric, minkowski
from moller_dirac.geometry.fields import bump
from moller_dirac.operators import build_dirac, potential_from_spec
from moller_dirac.runtime import get_metrics, reset
from moller_dirac.solver import (
    check_energy_identity,
    convergence_study,
    estimate_order,
    evolve,
    make_grid,
    peak_location,
    restrict,
    richardson_extrapolate,
    round_trip,
    support_envelope,
)
from moller_dirac.spin import make_canonical_rep

DOMAIN = Domain(t_end=1.0, length=1.0)


def _flat(mass: float = 0.0):
    rep = make_canonical_rep()
    g = minkowski(DOMAIN)
    D = build_dirac(g, rep, potential_from_spec(rep, {"mass": mass} if mass else None))
    return D, make_boundary_condition("mit", rep, g)


def _bump(x: np.ndarray, center: float = 0.5, width: float = 0.2, spinor=(1.0, 0.5j)) -> np.ndarray:
    return bump(((x - center) / width) ** 2)[:, None] * np.asarray(spinor, dtype=complex)


def test_grid_respects_cfl() -> None:
    D, _ = _flat()
    grid = make_grid(D, 100)
    assert grid.dt == pytest.approx(0.5 / 100)
    with pytest.raises(ConfigError):
        make_grid(D, 100, dt=0.01)
    with pytest.raises(ConfigError):
        make_grid(D, 100, cfl=0.8)
    with pytest.raises(DomainError):
        make_grid(D, 100, t1=2.0)


def test_massless_spinor_moves_right_at_unit_speed() -> None:
    D, bc = _flat()
    grid = make_grid(D, 200, t1=0.3)
    hist = evolve(D, bc, _bump(grid.x, 0.3, 0.1, (1.0, 0.0)), grid)
    assert abs(peak_location(hist, 0.3) - 0.6) <= 2.0 * grid.dx


def test_energy_is_nearly_conserved_with_mit() -> None:
    D, bc = _flat(mass=0.5)
    grid = make_grid(D, 100)
    hist = evolve(D, bc, _bump(grid.x), grid, store_every=10)
    energy = np.asarray(hist.report.energy)
    assert hist.report.is_finite()
    assert np.max(np.abs(energy - energy[0])) / energy[0] <= 1e-3
    assert check_energy_identity(hist, D, bc) <= 1e-3 * abs(energy[0])


def test_save_times_are_hit_exactly() -> None:
    D, bc = _flat()
    grid = make_grid(D, 40, t1=0.5)
    hist = evolve(D, bc, _bump(grid.x), grid, save_times=[0.1234], store_every=10**6)
    assert 0.1234 in hist.times.tolist()
    assert hist.times[-1] == 0.5
    assert restrict(hist, 0.1234).shape == (41, 2)
    with pytest.raises(DomainError):
        restrict(hist, 0.9)


def test_round_trip_recovers_data() -> None:
    D, bc = _flat()
    grid = make_grid(D, 100, t1=0.25)
    data = _bump(grid.x)
    back = round_trip(D, bc, data, grid)
    assert np.linalg.norm(back - data) / np.linalg.norm(data) <= 1e-3


def test_backward_evolution() -> None:
    D, bc = _flat()
    grid = make_grid(D, 50, t0=0.8, t1=0.2)
    assert grid.backward
    hist = evolve(D, bc, _bump(grid.x), grid)
    assert hist.times[0] == 0.8 and hist.times[-1] == 0.2


def test_batched_evolution_matches_single_runs() -> None:
    D, bc = _flat()
    grid = make_grid(D, 40, t1=0.2)
    a = _bump(grid.x, 0.4)
    b = _bump(grid.x, 0.6, spinor=(0.0, 1.0))
    batched = evolve(D, bc, np.stack([a, b]), grid).final
    assert np.allclose(batched[0], evolve(D, bc, a, grid).final, atol=1e-12)
    assert np.allclose(batched[1], evolve(D, bc, b, grid).final, atol=1e-12)


def test_evolution_errors() -> None:
    D, bc = _flat()
    grid = make_grid(D, 20, t1=0.1)
    with pytest.raises(ShapeError):
        evolve(D, bc, np.zeros((20, 2)), grid)
    with pytest.raises(ConfigError):
        evolve(D, bc, np.zeros((21, 2)), grid, penalty_sign=2)
    bad = np.zeros((21, 2), dtype=complex)
    bad[10, 0] = np.nan
    with pytest.raises(DivergenceError):
        evolve(D, bc, bad, grid)


def test_evolution_updates_telemetry() -> None:
    reset()
    D, bc = _flat()
    grid = make_grid(D, 20, t1=0.1)
    evolve(D, bc, _bump(grid.x), grid)
    metrics = get_metrics()
    assert metrics["evolutions"] == 1
    assert metrics["rhs_evaluations"] == 4 * metrics["rk4_steps"]


def test_support_envelope() -> None:
    x = np.linspace(0.0, 1.0, 11)
    assert support_envelope(x, np.zeros((11, 2))) == (1.0, 0.0)
    psi = np.zeros((11, 2))
    psi[3:6, 1] = 1.0
    assert support_envelope(x, psi) == (pytest.approx(0.3), pytest.approx(0.5))


def test_order_helpers() -> None:
    hs = [0.1, 0.05, 0.025]
    assert estimate_order(hs, [h**2 for h in hs]) == pytest.approx(2.0)
    rich = richardson_extrapolate([2.0, 1.25, 1.0625])
    assert rich.order == pytest.approx(2.0)
    assert rich.value == pytest.approx(1.0)
    with pytest.raises(ConfigError):
        estimate_order([0.1], [0.01])


def test_solver_converges_at_second_order() -> None:
    rep = make_canonical_rep()
    g = build_metric({"preset": "conformal", "params": {"amplitude": 0.2}}, DOMAIN)
    D = build_dirac(g, rep)
    bc = make_boundary_condition("mit", rep, g)
    study = convergence_study(D, bc, lambda x: _bump(x), [40, 80, 160], t_end=0.25, reference_cells=640, cfl=0.5)
    assert study.reference_cells == 640
    assert study.order >= 1.8


@pytest.mark.slow
def test_solver_order_on_acceptance_ladder() -> None:
    rep = make_canonical_rep()
    g = build_metric({"preset": "bump", "params": {"beta_amplitude": 0.1, "h_amplitude": 0.3}}, DOMAIN)
    D = build_dirac(g, rep)
    bc = make_boundary_condition("mit", rep, g)
    study = convergence_study(D, bc, lambda x: _bump(x), [100, 200, 400], t_end=1.0, reference_cells=1600, cfl=0.5)
    assert study.order >= 1.9
