from __future__ import annotations

import json
from typing import Iterator
from unittest.mock import patch

import pytest

from moller_dirac.cli import main
from moller_dirac.cli.args import build_parser
from moller_dirac.config import ENV_PREFIX
from moller_dirac.reports import REPORT_SCHEMA_VERSION
from moller_dirac.rich_ui import SilentRichFormatter, set_formatter
from moller_dirac.suites import BaseSuite, SuiteContext, SuiteResult


class _PassingSuite(BaseSuite):
    name = "green"
    description = "always passes"

    def run(self, context: SuiteContext) -> SuiteResult:
        result = SuiteResult(self.name)
        result.at_most("causality", 0.0, 1e-8)
        result.metrics["seed_draw"] = float(context.rng(self.name).random())
        return result


class _FailingSuite(BaseSuite):
    name = "moller"
    description = "fails one check"

    def run(self, context: SuiteContext) -> SuiteResult:
        result = SuiteResult(self.name)
        result.at_most("unitarity", 1.0, 1e-4)
        return result


class _RaisingSuite(BaseSuite):
    name = "state"

    def run(self, context: SuiteContext) -> SuiteResult:
        raise RuntimeError("boom")


@pytest.fixture(autouse=True)
def _isolated_env(monkeypatch: pytest.MonkeyPatch, tmp_path) -> Iterator[None]:
    for name in ("THREADS", "LOG_DIR", "CFL", "DEBUG_ENV"):
        monkeypatch.delenv(f"{ENV_PREFIX}{name}", raising=False)
    monkeypatch.chdir(tmp_path)
    set_formatter(SilentRichFormatter())
    yield
    set_formatter(None)


def _config(tmp_path, **extra) -> str:
    payload = {
        "domain": {"t_end": 1.0, "length": 1.0},
        "g0": {"preset": "minkowski"},
        "g1": {"preset": "minkowski"},
        "chi": {"t_minus": 0.3, "t_plus": 0.7},
        "grids": [16, 32],
        "out": str(tmp_path / "out"),
        **extra,
    }
    path = tmp_path / "run.json"
    path.write_text(json.dumps(payload, indent=2), encoding="utf-8")
    return str(path)


def test_parser_shapes_run_arguments() -> None:
    args = build_parser().parse_args(["run", "cfg.json", "--suite", "green", "--suite", "moller", "--grid", "8,16", "--seed", "3"])
    assert args.command == "run"
    assert args.suite == ["green", "moller"]
    assert args.grid == "8,16"
    assert args.seed == 3
    assert args.snapshots is False
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_schema_version_command(capsys) -> None:
    assert main(["schema-version"]) == 0
    assert capsys.readouterr().out.strip() == REPORT_SCHEMA_VERSION


def test_suites_command_lists_registry() -> None:
    with patch("moller_dirac.cli.commands.print_table") as table:
        assert main(["suites"]) == 0
    names = [row[0] for row in table.call_args.args[2]]
    assert names == ["check-clifford", "check-boundary", "evolve", "green", "moller", "state", "convergence"]


def test_bad_config_exits_with_two(tmp_path) -> None:
    bad = tmp_path / "bad.json"
    bad.write_text('{"grids": [80, 40]}', encoding="utf-8")
    assert main(["run", str(bad)]) == 2
    assert main(["run", str(tmp_path / "missing.json")]) == 2
    assert main(["run", _config(tmp_path), "--suite", "nope"]) == 2
    assert main(["run", _config(tmp_path), "--grid", "40,20"]) == 2
    assert not (tmp_path / "out").exists()


def test_passing_run_writes_reports(tmp_path) -> None:
    with patch("moller_dirac.cli.commands.default_suites", return_value=[_PassingSuite()]):
        code = main(["run", _config(tmp_path), "--seed", "11"])
    assert code == 0
    out = tmp_path / "out"
    summary = json.loads((out / "summary.json").read_text(encoding="utf-8"))
    assert summary["exit_code"] == 0
    assert summary["seed"] == 11
    assert summary["suites"] == {"green": {"passed": True, "failed_invariant": None}}
    assert summary["telemetry"]["suite_runs"] == {"green": 1}
    report = json.loads((out / "green.json").read_text(encoding="utf-8"))
    assert report["checks"][0]["name"] == "causality"
    assert any((out / "logs").iterdir())


def test_reports_are_reproducible(tmp_path) -> None:
    path = _config(tmp_path)
    texts = []
    for _ in range(2):
        with patch("moller_dirac.cli.commands.default_suites", return_value=[_PassingSuite()]):
            assert main(["run", path]) == 0
        texts.append((tmp_path / "out" / "green.json").read_text(encoding="utf-8"))
    assert texts[0] == texts[1]


def test_failures_and_errors_exit_with_one(tmp_path) -> None:
    suites = [_PassingSuite(), _FailingSuite(), _RaisingSuite()]
    with patch("moller_dirac.cli.commands.default_suites", return_value=suites):
        code = main(["run", _config(tmp_path)])
    assert code == 1
    summary = json.loads((tmp_path / "out" / "summary.json").read_text(encoding="utf-8"))
    assert summary["suites"]["moller"]["failed_invariant"] == "unitarity"
    assert summary["suites"]["state"]["failed_invariant"] == "error"
    assert [f["suite"] for f in summary["failures"]] == ["moller", "state"]
    assert "RuntimeError: boom" in summary["failures"][1]["error"]


def test_suite_selection_follows_registry_order(tmp_path) -> None:
    suites = [_PassingSuite(), _FailingSuite()]
    with patch("moller_dirac.cli.commands.default_suites", return_value=suites):
        code = main(["run", _config(tmp_path), "--suite", "moller", "--suite", "green"])
    assert code == 1
    summary = json.loads((tmp_path / "out" / "summary.json").read_text(encoding="utf-8"))
    assert list(summary["suites"]) == ["green", "moller"]
