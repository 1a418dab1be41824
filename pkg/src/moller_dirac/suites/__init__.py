from __future__ import annotations

"""
Suite registry.

Suites register under their CLI name; `default_suites()` installs the built-in
seven in the order the runner reports them.
"""

from typing import Dict, List, Optional

from .base import BaseSuite, CheckResult, SuiteContext, SuiteResult
from .boundary import BoundarySuite
from .clifford import CliffordSuite
from .convergence import ConvergenceSuite
from .evolve import EvolveSuite
from .green import GreenSuite
from .moller import MollerSuite
from .state import StateSuite

_registry: Dict[str, BaseSuite] = {}


def register_suite(suite: BaseSuite) -> None:
    _registry[suite.name] = suite


def get_suite(name: str) -> Optional[BaseSuite]:
    return _registry.get(name)


def list_suites() -> Dict[str, BaseSuite]:
    return dict(_registry)


def default_suites() -> List[BaseSuite]:
    """Register the built-in suites (idempotent) and return them in registry order."""
    builtins = [CliffordSuite(), BoundarySuite(), EvolveSuite(), GreenSuite(), MollerSuite(), StateSuite(), ConvergenceSuite()]
    for suite in builtins:
        if suite.name not in _registry:
            register_suite(suite)
    return [_registry[s.name] for s in builtins]


__all__ = [
    "BaseSuite",
    "CheckResult",
    "SuiteContext",
    "SuiteResult",
    "default_suites",
    "get_suite",
    "list_suites",
    "register_suite",
]
