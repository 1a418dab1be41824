from __future__ import annotations

import json

from moller_dirac.run_logging import RunLogManager, get_active_run_logger, log_run_event, set_active_run_logger


def _events(manager: RunLogManager) -> list:
    return [json.loads(line) for line in manager.events_path.read_text(encoding="utf-8").splitlines()]


def test_logs_are_written_inside_run_directory(tmp_path) -> None:
    manager = RunLogManager(log_dir=str(tmp_path))
    try:
        run_dir = tmp_path / manager.run_id
        assert run_dir.is_dir()
        assert manager.events_path.parent == run_dir

        manager.suite_started("green")
        manager.suite_finished("green", False, "causality")
        manager.attach_metadata("config_hash", "abc")
        manager.finalize(1)

        metadata = json.loads(manager.metadata_path.read_text(encoding="utf-8"))
        assert metadata["run_dir"] == str(run_dir)
        assert metadata["config_hash"] == "abc"
        assert metadata["exit_code"] == 1

        types = [e["type"] for e in _events(manager)]
        assert types == ["run_started", "suite_started", "suite_finished", "run_closed"]
        assert _events(manager)[2]["payload"] == {"passed": False, "failed_invariant": "causality"}
    finally:
        manager.finalize(0)


def test_repeated_runs_get_distinct_directories(tmp_path) -> None:
    first = RunLogManager(log_dir=str(tmp_path))
    second = RunLogManager(log_dir=str(tmp_path))
    try:
        assert first.run_dir != second.run_dir
    finally:
        first.finalize(0)
        second.finalize(0)


def test_events_after_finalize_are_dropped(tmp_path) -> None:
    manager = RunLogManager(log_dir=str(tmp_path))
    manager.finalize(0)
    manager.log_event("late", {})
    manager.finalize(2)
    assert [e["type"] for e in _events(manager)] == ["run_started", "run_closed"]
    assert json.loads(manager.metadata_path.read_text(encoding="utf-8"))["exit_code"] == 0


def test_active_logger_routing(tmp_path) -> None:
    manager = RunLogManager(log_dir=str(tmp_path))
    try:
        set_active_run_logger(manager)
        assert get_active_run_logger() is manager
        log_run_event("checkpoint", {"n": 1}, suite="evolve")
        set_active_run_logger(None)
        log_run_event("ignored", {})
        events = _events(manager)
        assert events[-1]["type"] == "checkpoint"
        assert events[-1]["suite"] == "evolve"
    finally:
        set_active_run_logger(None)
        manager.finalize(0)
