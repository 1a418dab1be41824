from __future__ import annotations

"""
Exception hierarchy for the laboratory.

Library code raises these; only the CLI turns them into exit codes.
"""

from typing import Optional


class MollerDiracError(Exception):
    """Base class for all errors raised by moller_dirac."""


class DomainError(MollerDiracError, ValueError):
    """Evaluation point outside the spacetime domain, or not on the boundary."""


class ShapeError(MollerDiracError, ValueError):
    """Grid or array shape mismatch."""


class ContractError(MollerDiracError, ValueError):
    """An operation was called with inputs violating its precondition."""


class InvariantViolation(MollerDiracError, RuntimeError):
    """An internal construction produced something it must never produce."""


class ConfigError(MollerDiracError, ValueError):
    """Invalid numerical configuration (CFL, grid ladder, ...)."""


class SchemaError(ConfigError):
    """Run-config schema violation anchored to a line of the config file."""

    def __init__(self, message: str, line: Optional[int] = None, path: Optional[str] = None) -> None:
        self.message = message
        self.line = line
        self.path = path
        super().__init__(self.render())

    def render(self) -> str:
        where = self.path or "<config>"
        if self.line is not None:
            where = f"{where}:{self.line}"
        return f"{where}: {self.message}"


class DivergenceError(MollerDiracError, RuntimeError):
    """Non-finite values appeared during time stepping."""

    def __init__(self, step: int, time: float) -> None:
        self.step = step
        self.time = time
        super().__init__(f"non-finite solution at step {step} (t={time:.6g})")


class ResourceError(MollerDiracError, RuntimeError):
    """Requested object is too large to build (e.g. too many CAR modes)."""


__all__ = [
    "MollerDiracError",
    "DomainError",
    "ShapeError",
    "ContractError",
    "InvariantViolation",
    "ConfigError",
    "SchemaError",
    "DivergenceError",
    "ResourceError",
]
