from __future__ import annotations

from .run_config import (
    SUITE_NAMES,
    ChiSpec,
    DomainSpec,
    MetricSpec,
    RunConfig,
    RunDocument,
    load_run_config,
    parse_grid_arg,
    validate_config,
)
from .settings import ENV_PREFIX, LabSettings, load_env_file

__all__ = [
    "ENV_PREFIX",
    "SUITE_NAMES",
    "ChiSpec",
    "DomainSpec",
    "LabSettings",
    "MetricSpec",
    "RunConfig",
    "RunDocument",
    "load_env_file",
    "load_run_config",
    "parse_grid_arg",
    "validate_config",
]
