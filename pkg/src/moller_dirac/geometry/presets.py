from __future__ import annotations

"""
Named metric presets and inline coefficient tables.

Each builder takes a parameter map (as found in a run config) and returns a
SplitMetric whose coefficients are closed-form callables.
"""

from typing import Any, Callable, Dict, Mapping

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from ..errors import ContractError
from .fields import bump, bump_2d
from .metric import Domain, SplitMetric

PresetBuilder = Callable[[Domain, Mapping[str, Any]], SplitMetric]


def _const(value: float) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    def field(t, x):
        return np.full(np.broadcast_shapes(np.shape(t), np.shape(x)), float(value))

    return field


def minkowski(domain: Domain, params: Mapping[str, Any] | None = None) -> SplitMetric:
    return SplitMetric(_const(1.0), _const(1.0), domain, name="minkowski", params={})


def scaled(domain: Domain, params: Mapping[str, Any]) -> SplitMetric:
    beta0 = float(params.get("beta", 1.0))
    h0 = float(params.get("h", 1.0))
    return SplitMetric(_const(beta0), _const(h0), domain, name="scaled", params={"beta": beta0, "h": h0})


def _bump_params(domain: Domain, params: Mapping[str, Any]) -> Dict[str, float]:
    return {
        "t_center": float(params.get("t_center", 0.5 * (domain.t_start + domain.t_end))),
        "x_center": float(params.get("x_center", 0.5 * domain.length)),
        "t_width": float(params.get("t_width", 0.5 * (domain.t_end - domain.t_start))),
        "x_width": float(params.get("x_width", 0.4 * domain.length)),
    }


def conformal(domain: Domain, params: Mapping[str, Any]) -> SplitMetric:
    """Omega^2 times Minkowski, Omega = 1 + amplitude * bump."""
    amp = float(params.get("amplitude", 0.2))
    if amp <= -1.0:
        raise ContractError("conformal amplitude must exceed -1")
    bp = _bump_params(domain, params)

    def omega(t, x):
        return 1.0 + amp * bump_2d(t, x, bp["t_center"], bp["x_center"], bp["t_width"], bp["x_width"])

    def h(t, x):
        return omega(t, x) ** 2

    return SplitMetric(omega, h, domain, name="conformal", params={"amplitude": amp, **bp})


def bump_metric(domain: Domain, params: Mapping[str, Any]) -> SplitMetric:
    """Independent bumps in lapse and spatial coefficient (not conformally flat in general)."""
    a_beta = float(params.get("beta_amplitude", 0.1))
    a_h = float(params.get("h_amplitude", 0.3))
    if a_beta <= -1.0 or a_h <= -1.0:
        raise ContractError("bump amplitudes must exceed -1")
    bp = _bump_params(domain, params)

    def b(t, x):
        return bump_2d(t, x, bp["t_center"], bp["x_center"], bp["t_width"], bp["x_width"])

    def beta(t, x):
        return 1.0 + a_beta * b(t, x)

    def h(t, x):
        return 1.0 + a_h * b(t, x)

    return SplitMetric(beta, h, domain, name="bump", params={"beta_amplitude": a_beta, "h_amplitude": a_h, **bp})


def ultrastatic(domain: Domain, params: Mapping[str, Any]) -> SplitMetric:
    """Time-independent beta(x), h(x); the default is the flat strip."""
    a_beta = float(params.get("beta_amplitude", 0.0))
    a_h = float(params.get("h_amplitude", 0.0))
    xc = float(params.get("x_center", 0.5 * domain.length))
    wx = float(params.get("x_width", 0.4 * domain.length))
    if a_beta <= -1.0 or a_h <= -1.0:
        raise ContractError("ultrastatic amplitudes must exceed -1")

    def s(t, x):
        x = np.asarray(x, dtype=float)
        out = bump(((x - xc) / wx) ** 2)
        return np.broadcast_to(out, np.broadcast_shapes(np.shape(t), np.shape(x)))

    def beta(t, x):
        return 1.0 + a_beta * s(t, x)

    def h(t, x):
        return 1.0 + a_h * s(t, x)

    return SplitMetric(
        beta, h, domain, name="ultrastatic",
        params={"beta_amplitude": a_beta, "h_amplitude": a_h, "x_center": xc, "x_width": wx},
    )


def table(domain: Domain, params: Mapping[str, Any]) -> SplitMetric:
    """Inline coefficient table on a tensor grid, interpolated (cubic when the table allows it)."""
    t_nodes = np.asarray(params["t"], dtype=float)
    x_nodes = np.asarray(params["x"], dtype=float)
    beta_tab = np.asarray(params["beta"], dtype=float)
    h_tab = np.asarray(params["h"], dtype=float)
    shape = (t_nodes.size, x_nodes.size)
    if beta_tab.shape != shape or h_tab.shape != shape:
        raise ContractError(f"coefficient tables must have shape {shape}")
    method = "cubic" if min(shape) >= 4 else "linear"
    interp_beta = RegularGridInterpolator((t_nodes, x_nodes), beta_tab, method=method, bounds_error=False, fill_value=None)
    interp_h = RegularGridInterpolator((t_nodes, x_nodes), h_tab, method=method, bounds_error=False, fill_value=None)

    def _wrap(interp: RegularGridInterpolator):
        def field(t, x):
            t, x = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(x, dtype=float))
            pts = np.stack([t.ravel(), x.ravel()], axis=-1)
            return interp(pts).reshape(t.shape)

        return field

    return SplitMetric(_wrap(interp_beta), _wrap(interp_h), domain, name="table", params={"shape": list(shape), "method": method})


PRESETS: Dict[str, PresetBuilder] = {
    "minkowski": minkowski,
    "scaled": scaled,
    "conformal": conformal,
    "bump": bump_metric,
    "ultrastatic": ultrastatic,
    "table": table,
}


def build_metric(spec: Mapping[str, Any], domain: Domain) -> SplitMetric:
    """Build a metric from {"preset": name, "params": {...}} and check positivity."""
    name = str(spec.get("preset", "minkowski"))
    builder = PRESETS.get(name)
    if builder is None:
        raise ContractError(f"unknown metric preset '{name}' (known: {', '.join(sorted(PRESETS))})")
    metric = builder(domain, dict(spec.get("params", {}) or {}))
    metric.validate()
    return metric
