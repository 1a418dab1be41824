from __future__ import annotations

from .telemetry import get_metrics, get_suite_runs, record_metric, record_suite_run, reset

__all__ = ["get_metrics", "get_suite_runs", "record_metric", "record_suite_run", "reset"]
