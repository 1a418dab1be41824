from __future__ import annotations

from .cones import (
    ConeBound,
    characteristic_speed,
    cone_bound,
    cone_contained,
    conformal_factor_f,
    intermediate_metric,
    is_ultrastatic,
    max_speed,
    rescale,
    trapezoid_weights,
    uniform_nodes,
    volume_slice,
)
from .metric import ChiProfile, ConstantChi, Domain, MetricPath, SplitMetric, constant_chi
from .presets import PRESETS, build_metric, minkowski

__all__ = [
    "ChiProfile",
    "ConeBound",
    "ConstantChi",
    "Domain",
    "MetricPath",
    "PRESETS",
    "SplitMetric",
    "build_metric",
    "characteristic_speed",
    "cone_bound",
    "cone_contained",
    "conformal_factor_f",
    "constant_chi",
    "intermediate_metric",
    "is_ultrastatic",
    "max_speed",
    "minkowski",
    "rescale",
    "trapezoid_weights",
    "uniform_nodes",
    "volume_slice",
]
