from __future__ import annotations

"""
Report persistence.

- One JSON document per suite plus `summary.json`, sorted keys, no timestamps
- CSV traces of evolution diagnostics with repr-exact floats
- Optional `.npy` snapshots of stored solution slices with a JSON header
"""

import csv
import json
import math
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional

import numpy as np

from ..config import RunConfig
from ..solver import EvolutionReport, SpinorHistory
from ..suites import SuiteResult

REPORT_SCHEMA_VERSION = "1.0.0"
TRACE_HEADER = ("t", "energy", "boundary_residual", "support_left", "support_right")
MIRRORED_FIELDS = (
    "deviation",
    "order_estimate",
    "Q_spectrum_min",
    "Q_spectrum_max",
    "gamma_residual",
    "positivity_min",
    "two_point_samples",
)


def report_schema_version() -> str:
    return REPORT_SCHEMA_VERSION


def _clean(value: Any) -> Any:
    """JSON-safe copy: numpy scalars and arrays become Python values, non-finite floats become strings."""
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, np.ndarray):
        return _clean(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else repr(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [_clean(value.real), _clean(value.imag)]
    return value


def write_json(path: Path, payload: Dict[str, Any]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_clean(payload), sort_keys=True, indent=2) + "\n", encoding="utf-8")
    return path


def suite_payload(result: SuiteResult, config: RunConfig, telemetry: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    payload = {
        "schema": REPORT_SCHEMA_VERSION,
        "config_hash": config.config_hash(),
        "grid_sizes": list(config.grids),
        "seed": config.seed,
        "telemetry": telemetry or {},
        "traces": sorted(result.traces),
        **result.to_dict(),
    }
    for key in MIRRORED_FIELDS:
        if key in result.metrics:
            payload[key] = result.metrics[key]
    return payload


def write_trace_csv(path: Path, report: EvolutionReport) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(TRACE_HEADER)
        for row in report.rows():
            writer.writerow(["%.17g" % row[key] for key in TRACE_HEADER])
    return path


def write_snapshot(out_dir: Path, suite: str, name: str, hist: SpinorHistory) -> Path:
    stem = f"{suite}_{name}"
    path = out_dir / f"{stem}.npy"
    out_dir.mkdir(parents=True, exist_ok=True)
    np.save(path, hist.slices)
    header = {"shape": list(hist.slices.shape), "dtype": str(hist.slices.dtype), "times": hist.times, "x": hist.x}
    write_json(out_dir / f"{stem}.json", header)
    return path


def write_suite_report(
    result: SuiteResult,
    config: RunConfig,
    out_dir: str | Path,
    telemetry: Optional[Dict[str, Any]] = None,
) -> List[Path]:
    """`<out>/<suite>.json`, one CSV per trace and any snapshots; returns the written paths."""
    out = Path(out_dir)
    written = [write_json(out / f"{result.suite}.json", suite_payload(result, config, telemetry))]
    for name in sorted(result.traces):
        written.append(write_trace_csv(out / f"{result.suite}_{name}.csv", result.traces[name]))
    for name in sorted(result.snapshots):
        written.append(write_snapshot(out, result.suite, name, result.snapshots[name]))
    return written


def write_summary(
    results: Iterable[SuiteResult],
    config: RunConfig,
    out_dir: str | Path,
    exit_code: int,
    telemetry: Optional[Dict[str, Any]] = None,
) -> Path:
    results = list(results)
    failed = [r for r in results if not r.passed]
    payload = {
        "schema": REPORT_SCHEMA_VERSION,
        "config_hash": config.config_hash(),
        "grid_sizes": list(config.grids),
        "seed": config.seed,
        "exit_code": exit_code,
        "passed": not failed,
        "suites": {r.suite: {"passed": r.passed, "failed_invariant": r.failed_invariant} for r in results},
        "failures": [{"suite": r.suite, "failed_invariant": r.failed_invariant, "error": r.error} for r in failed],
        "telemetry": telemetry or {},
    }
    return write_json(Path(out_dir) / "summary.json", payload)
