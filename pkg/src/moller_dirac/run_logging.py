from __future__ import annotations

import json
import threading
import time
from pathlib import Path
from typing import Any, Dict, Optional


class RunLogManager:
    """Per-run directory with a JSONL event stream and a metadata file.

    Writes are best-effort: a full disk or a closed file never aborts a run.
    """

    def __init__(self, log_dir: str = "logs") -> None:
        self._log_dir = Path(log_dir)
        self._log_dir.mkdir(parents=True, exist_ok=True)
        ts = time.strftime("%Y%m%d_%H%M%S", time.localtime())
        base_run_id = f"run_{ts}"
        run_dir = self._log_dir / base_run_id
        attempt = 1
        while run_dir.exists():
            attempt += 1
            run_dir = self._log_dir / f"{base_run_id}_{attempt}"
        self.run_id = run_dir.name
        self.run_dir = run_dir
        self.run_dir.mkdir(parents=True, exist_ok=True)
        self.started_ms = int(time.time() * 1000)
        self.events_path = self.run_dir / f"{self.run_id}_events.jsonl"
        self.metadata_path = self.run_dir / f"{self.run_id}_run.json"
        self._lock = threading.Lock()
        self._events_file = self.events_path.open("a", encoding="utf-8")
        self._metadata: Dict[str, Any] = {
            "run_id": self.run_id,
            "started_ms": self.started_ms,
            "events_path": str(self.events_path),
            "run_dir": str(self.run_dir),
        }
        self._closed = False
        self._log_event("run_started", {})

    def log_event(self, event_type: str, payload: Dict[str, Any], suite: Optional[str] = None) -> None:
        self._log_event(event_type, payload, suite)

    def suite_started(self, suite: str) -> None:
        self._log_event("suite_started", {}, suite)

    def suite_finished(self, suite: str, passed: bool, failed_invariant: Optional[str]) -> None:
        self._log_event("suite_finished", {"passed": passed, "failed_invariant": failed_invariant}, suite)

    def attach_metadata(self, key: str, value: Any) -> None:
        with self._lock:
            self._metadata[key] = value
            self._flush_metadata()

    def finalize(self, exit_code: int) -> None:
        with self._lock:
            if self._closed:
                return
            self._metadata["ended_ms"] = int(time.time() * 1000)
            self._metadata["exit_code"] = exit_code
            self._flush_metadata()
        self._log_event("run_closed", {"exit_code": exit_code})
        with self._lock:
            try:
                self._events_file.flush()
                self._events_file.close()
            except Exception:
                pass
            self._closed = True

    def _flush_metadata(self) -> None:
        try:
            self.metadata_path.write_text(json.dumps(self._metadata, ensure_ascii=False, indent=2, default=str), encoding="utf-8")
        except Exception:
            pass

    def _log_event(self, event_type: str, payload: Dict[str, Any], suite: Optional[str] = None) -> None:
        event = {
            "timestamp_ms": int(time.time() * 1000),
            "type": event_type,
            "suite": suite,
            "payload": payload,
        }
        with self._lock:
            try:
                if not self._closed:
                    self._events_file.write(json.dumps(event, ensure_ascii=False, default=str) + "\n")
                    self._events_file.flush()
            except Exception:
                pass


_active_run_logger: Optional[RunLogManager] = None


def set_active_run_logger(logger: Optional[RunLogManager]) -> None:
    global _active_run_logger
    _active_run_logger = logger


def get_active_run_logger() -> Optional[RunLogManager]:
    return _active_run_logger


def log_run_event(event_type: str, payload: Dict[str, Any], suite: Optional[str] = None) -> None:
    logger = get_active_run_logger()
    if logger:
        logger.log_event(event_type, payload, suite)
