from __future__ import annotations

import numpy as np
import pytest

from moller_dirac.boundary import check_compatibility, make_boundary_condition
from moller_dirac.errors import ContractError, ShapeError
from moller_dirac.geometry import Domain, minkowski
from moller_dirac.geometry.fields import bump
from moller_dirac.operators import build_dirac
from moller_dirac.spin import make_canonical_rep

DOMAIN = Domain(t_end=1.0, length=1.0)


def _setup():
    rep = make_canonical_rep()
    g = minkowski(DOMAIN)
    D = build_dirac(g, rep)
    bc = make_boundary_condition("mit", rep, g)
    return D, (bc.left, bc.right)


def test_interior_bump_is_compatible_to_order_two() -> None:
    D, spaces = _setup()
    x = np.linspace(0.0, 1.0, 41)
    data = bump(((x - 0.5) / 0.2) ** 2)[:, None] * np.array([1.0, 1.0j])
    residuals = check_compatibility(data, None, D, spaces, order=2)
    assert len(residuals) == 3
    assert max(residuals) <= 1e-12


def test_data_violating_the_condition_at_the_corner() -> None:
    D, spaces = _setup()
    data = np.tile(np.array([1.0, 0.0], dtype=complex), (41, 1))
    residuals = check_compatibility(data, None, D, spaces, order=0)
    assert residuals[0] == pytest.approx(np.sqrt(0.5))


def test_compatibility_contract() -> None:
    D, spaces = _setup()
    with pytest.raises(ContractError):
        check_compatibility(np.zeros((41, 2)), None, D, spaces, order=3)
    with pytest.raises(ShapeError):
        check_compatibility(np.zeros((41, 3)), None, D, spaces, order=1)
    with pytest.raises(ContractError):
        check_compatibility(np.zeros((5, 2)), None, D, spaces, order=1)
