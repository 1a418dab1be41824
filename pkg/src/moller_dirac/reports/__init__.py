from __future__ import annotations

from .writer import (
    MIRRORED_FIELDS,
    REPORT_SCHEMA_VERSION,
    TRACE_HEADER,
    report_schema_version,
    suite_payload,
    write_json,
    write_snapshot,
    write_suite_report,
    write_summary,
    write_trace_csv,
)

__all__ = [
    "MIRRORED_FIELDS",
    "REPORT_SCHEMA_VERSION",
    "TRACE_HEADER",
    "report_schema_version",
    "suite_payload",
    "write_json",
    "write_snapshot",
    "write_suite_report",
    "write_summary",
    "write_trace_csv",
]
