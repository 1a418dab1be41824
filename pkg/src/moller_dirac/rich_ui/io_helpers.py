from __future__ import annotations

from typing import Any, Optional, Sequence

from ..run_logging import log_run_event
from .formatter import get_formatter


def print_error(message: str) -> None:
    log_run_event("print_error", {"message": message})
    get_formatter().print_error(message)


def print_info(message: str) -> None:
    log_run_event("print_info", {"message": message})
    get_formatter().print_info(message)


def print_success(message: str) -> None:
    log_run_event("print_success", {"message": message})
    get_formatter().print_success(message)


def print_rule(title: Optional[str] = None) -> None:
    get_formatter().print_rule(title)


def print_table(title: str, columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
    log_run_event("print_table", {"title": title, "columns": list(columns), "rows": [[str(v) for v in r] for r in rows]})
    get_formatter().print_table(title, columns, rows)
