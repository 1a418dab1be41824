from __future__ import annotations

"""
Base suite interface.

Contract:
- Attributes: `name`, `version`, `description`
- Execution: `run(context) -> SuiteResult`
- A suite never raises for a failed check; it records it. Errors from the library
  propagate and are reported by the runner as a failed suite.
"""

import hashlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, TypeVar

import numpy as np

from ..config import LabSettings, RunConfig
from ..solver import EvolutionReport, SpinorHistory

T = TypeVar("T")
R = TypeVar("R")


@dataclass
class CheckResult:
    name: str
    value: float
    threshold: float
    passed: bool
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "value": self.value, "threshold": self.threshold, "passed": self.passed, "detail": self.detail}


@dataclass
class SuiteResult:
    suite: str
    checks: List[CheckResult] = field(default_factory=list)
    metrics: Dict[str, Any] = field(default_factory=dict)
    traces: Dict[str, EvolutionReport] = field(default_factory=dict)
    snapshots: Dict[str, SpinorHistory] = field(default_factory=dict)
    error: Optional[str] = None

    def at_most(self, name: str, value: float, threshold: float, detail: str = "") -> CheckResult:
        value = float(value)
        check = CheckResult(name, value, float(threshold), bool(np.isfinite(value) and value <= threshold), detail)
        self.checks.append(check)
        return check

    def at_least(self, name: str, value: float, threshold: float, detail: str = "") -> CheckResult:
        value = float(value)
        check = CheckResult(name, value, float(threshold), bool(np.isfinite(value) and value >= threshold), detail)
        self.checks.append(check)
        return check

    @property
    def passed(self) -> bool:
        return self.error is None and all(c.passed for c in self.checks)

    @property
    def failed_invariant(self) -> Optional[str]:
        if self.error is not None:
            return "error"
        for c in self.checks:
            if not c.passed:
                return c.name
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "failed_invariant": self.failed_invariant,
            "error": self.error,
            "checks": [c.to_dict() for c in self.checks],
            "metrics": dict(self.metrics),
        }


@dataclass
class SuiteContext:
    config: RunConfig
    settings: LabSettings
    out_dir: str
    snapshots: bool = False

    @property
    def grids(self) -> List[int]:
        return list(self.config.grids)

    @property
    def finest(self) -> int:
        return self.config.grids[-1]

    def rng(self, suite: str) -> np.random.Generator:
        """Generator seeded from (seed, suite name); independent of scheduling order."""
        digest = hashlib.sha256(f"{self.config.seed}:{suite}".encode("utf-8")).digest()
        return np.random.default_rng(int.from_bytes(digest[:8], "little"))

    def map(self, fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
        """Apply fn over a grid ladder (or similar) on the worker pool; results keep input order."""
        items = list(items)
        workers = min(self.settings.threads, len(items))
        if workers <= 1:
            return [fn(item) for item in items]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))


class BaseSuite:
    name: str = "suite"
    version: str = "1.0"
    description: str = ""

    def run(self, context: SuiteContext) -> SuiteResult:
        raise NotImplementedError

    def get_metadata(self) -> Dict[str, Any]:
        return {"name": self.name, "version": self.version, "description": self.description}
