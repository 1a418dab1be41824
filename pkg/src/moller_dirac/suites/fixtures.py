from __future__ import annotations

"""Test data shared by the suites: bump slices and sources, random metric pairs."""

from typing import Callable, List, Tuple

import numpy as np

from ..geometry import Domain, SplitMetric, build_metric
from ..geometry.fields import bump, bump_2d


def random_spinor(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return v / np.linalg.norm(v)


def bump_slice(x: np.ndarray, center: float, width: float, spinor: np.ndarray) -> np.ndarray:
    """Compactly supported (N + 1, 2) slice; identically zero near the ends when the bump sits inside."""
    return bump(((np.asarray(x) - center) / width) ** 2)[:, None] * np.asarray(spinor, dtype=complex)[None, :]


def bump_data(center: float, width: float, spinor: np.ndarray) -> Callable[[np.ndarray], np.ndarray]:
    def factory(x: np.ndarray) -> np.ndarray:
        return bump_slice(x, center, width, spinor)

    return factory


def bump_source(tc: float, xc: float, wt: float, wx: float, spinor: np.ndarray) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    spinor = np.asarray(spinor, dtype=complex)

    def source(t, x):
        return bump_2d(t, x, tc, xc, wt, wx)[..., None] * spinor

    return source


def random_bump_source(rng: np.random.Generator, domain: Domain, t_range: Tuple[float, float]) -> Callable:
    """A source supported strictly inside the time window and away from the spatial ends."""
    lo, hi = t_range
    span = hi - lo
    wt = span * rng.uniform(0.1, 0.2)
    tc = rng.uniform(lo + 1.5 * wt, hi - 1.5 * wt)
    wx = domain.length * rng.uniform(0.05, 0.1)
    xc = rng.uniform(0.35, 0.65) * domain.length
    return bump_source(tc, xc, wt, wx, random_spinor(rng))


def random_metric_pair(rng: np.random.Generator, domain: Domain) -> Tuple[SplitMetric, SplitMetric]:
    """Two deformations of the flat strip with random bump amplitudes."""
    pair: List[SplitMetric] = []
    for _ in range(2):
        if rng.uniform() < 0.5:
            spec = {"preset": "conformal", "params": {"amplitude": float(rng.uniform(-0.3, 0.3))}}
        else:
            spec = {
                "preset": "bump",
                "params": {"beta_amplitude": float(rng.uniform(-0.3, 0.3)), "h_amplitude": float(rng.uniform(-0.4, 0.4))},
            }
        pair.append(build_metric(spec, domain))
    return pair[0], pair[1]


def sample_points(rng: np.random.Generator, domain: Domain, n: int) -> Tuple[np.ndarray, np.ndarray]:
    return rng.uniform(domain.t_start, domain.t_end, n), rng.uniform(0.0, domain.length, n)
