from __future__ import annotations

import threading
from typing import Dict

_lock = threading.Lock()
_suite_runs: Dict[str, int] = {}
_metrics: Dict[str, int] = {}


def record_suite_run(suite_name: str) -> None:
    try:
        with _lock:
            _suite_runs[suite_name] = _suite_runs.get(suite_name, 0) + 1
    except Exception:
        pass


def get_suite_runs() -> Dict[str, int]:
    with _lock:
        return dict(_suite_runs)


def record_metric(name: str, inc: int = 1) -> None:
    try:
        with _lock:
            _metrics[name] = _metrics.get(name, 0) + int(inc)
    except Exception:
        pass


def get_metrics() -> Dict[str, int]:
    with _lock:
        return dict(_metrics)


def reset() -> None:
    with _lock:
        _suite_runs.clear()
        _metrics.clear()
