from __future__ import annotations

import numpy as np
import pytest

from moller_dirac.errors import ConfigError
from moller_dirac.solver import SBPOperator


@pytest.mark.parametrize("order,cells", [(2, 10), (2, 64), (4, 16), (4, 64)])
def test_summation_by_parts_identity(order: int, cells: int) -> None:
    assert SBPOperator(2.0, cells, order).sbp_residual() <= 1e-12


def test_norm_integrates_constants() -> None:
    for order in (2, 4):
        op = SBPOperator(3.0, 32, order)
        assert op.norm.sum() == pytest.approx(3.0)


def test_exact_on_low_degree_polynomials() -> None:
    op2 = SBPOperator(1.0, 20, 2)
    assert np.allclose(op2.apply(3.0 * op2.x - 1.0), 3.0)
    op4 = SBPOperator(1.0, 20, 4)
    assert np.allclose(op4.apply(op4.x**2), 2.0 * op4.x)


def test_interior_convergence() -> None:
    errors = []
    for cells in (32, 64, 128):
        op = SBPOperator(1.0, cells, 2)
        err = op.apply(np.sin(2.0 * op.x)) - 2.0 * np.cos(2.0 * op.x)
        errors.append(np.max(np.abs(err[4:-4])))
    assert errors[0] / errors[1] > 3.5
    assert errors[1] / errors[2] > 3.5


def test_apply_along_axis() -> None:
    op = SBPOperator(1.0, 16, 2)
    u = np.stack([op.x, 2.0 * op.x], axis=-1)[None]
    du = op.apply(u, axis=-2)
    assert du.shape == u.shape
    assert np.allclose(du[0, :, 1], 2.0)


def test_invalid_operators() -> None:
    with pytest.raises(ConfigError):
        SBPOperator(1.0, 16, 3)
    with pytest.raises(ConfigError):
        SBPOperator(1.0, 4, 4)
    with pytest.raises(ConfigError):
        SBPOperator(-1.0, 16, 2)
