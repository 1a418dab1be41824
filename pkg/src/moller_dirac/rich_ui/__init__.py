from __future__ import annotations

from .formatter import RichFormatter, SilentRichFormatter, get_formatter, set_formatter
from .io_helpers import print_error, print_info, print_rule, print_success, print_table

__all__ = [
    "RichFormatter",
    "SilentRichFormatter",
    "get_formatter",
    "print_error",
    "print_info",
    "print_rule",
    "print_success",
    "print_table",
    "set_formatter",
]
