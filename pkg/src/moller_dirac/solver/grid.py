from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from ..errors import ConfigError
from ..operators import FirstOrderSystem, characteristic_speeds

MAX_CFL = 0.5
DEFAULT_CFL = 0.5


@dataclass(frozen=True)
class Grid:
    """N cells on [0, L] and a time step bounded by cfl * dx / max speed."""

    N: int
    dt: float
    cfl: float
    t0: float
    t1: float
    length: float
    order: int = 2

    @property
    def dx(self) -> float:
        return self.length / self.N

    @property
    def x(self) -> np.ndarray:
        return np.linspace(0.0, self.length, self.N + 1)

    @property
    def backward(self) -> bool:
        return self.t1 < self.t0

    def to_dict(self) -> Dict[str, Any]:
        return {"N": self.N, "dt": self.dt, "cfl": self.cfl, "t0": self.t0, "t1": self.t1, "order": self.order}


def max_system_speed(D: FirstOrderSystem, nt: int = 17, nx: int = 65) -> float:
    tt, xx = D.metric.sample_grid(nt, nx)
    return float(np.max(np.abs(characteristic_speeds(D, tt, xx))))


def make_grid(
    D: FirstOrderSystem,
    N: int,
    t0: Optional[float] = None,
    t1: Optional[float] = None,
    cfl: float = DEFAULT_CFL,
    dt: Optional[float] = None,
    order: int = 2,
) -> Grid:
    if N < 2:
        raise ConfigError(f"need at least 2 cells, got N={N}")
    if not 0.0 < cfl <= MAX_CFL:
        raise ConfigError(f"cfl must lie in (0, {MAX_CFL}], got {cfl}")
    d = D.metric.domain
    t0 = d.t_start if t0 is None else float(t0)
    t1 = d.t_end if t1 is None else float(t1)
    d.check(np.array([t0, t1]), np.zeros(2))
    dx = d.length / N
    limit = cfl * dx / max_system_speed(D)
    if dt is None:
        dt = limit
    elif dt <= 0.0 or dt > limit * (1.0 + 1e-12):
        raise ConfigError(f"dt={dt:.3e} violates the CFL bound {limit:.3e} (cfl={cfl}, N={N})")
    return Grid(N=N, dt=float(dt), cfl=cfl, t0=t0, t1=t1, length=d.length, order=order)
