from __future__ import annotations

"""Subcommand implementations; each returns the process exit code."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence

from ..config import LabSettings, RunConfig, load_run_config, parse_grid_arg
from ..errors import ConfigError, SchemaError
from ..reports import report_schema_version, write_suite_report, write_summary
from ..rich_ui import print_error, print_info, print_rule, print_success, print_table
from ..run_logging import RunLogManager, set_active_run_logger
from ..runtime import get_metrics, get_suite_runs, record_suite_run, reset
from ..suites import BaseSuite, SuiteContext, SuiteResult, default_suites

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_SUITE_FAILURE = 1
EXIT_CONFIG_ERROR = 2


def list_suites_command() -> int:
    rows = [[s.name, s.version, s.description] for s in default_suites()]
    print_table("Suites", ["name", "version", "description"], rows)
    return EXIT_PASS


def schema_version_command() -> int:
    print(report_schema_version())
    return EXIT_PASS


def _run_one(suite: BaseSuite, context: SuiteContext, run_log: RunLogManager) -> SuiteResult:
    run_log.suite_started(suite.name)
    try:
        result = suite.run(context)
    except Exception as exc:
        logger.exception("suite %s raised", suite.name)
        result = SuiteResult(suite.name, error=f"{type(exc).__name__}: {exc}")
    record_suite_run(suite.name)
    run_log.suite_finished(suite.name, result.passed, result.failed_invariant)
    return result


def run_suites(
    suites: Sequence[BaseSuite],
    context: SuiteContext,
    run_log: RunLogManager,
) -> List[SuiteResult]:
    """Run suites concurrently; results come back in the order given."""
    workers = max(1, min(context.settings.threads, len(suites)))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_run_one, suite, context, run_log) for suite in suites]
        return [f.result() for f in futures]


def _telemetry() -> Dict[str, Dict[str, int]]:
    return {"metrics": get_metrics(), "suite_runs": get_suite_runs()}


def _resolve_config(
    path: str,
    settings: LabSettings,
    suites: Optional[Sequence[str]],
    grid: Optional[str],
    seed: Optional[int],
    out: Optional[str],
) -> RunConfig:
    config = load_run_config(path, default_cfl=settings.cfl)
    grids = parse_grid_arg(grid) if grid else None
    return config.with_overrides(grids=grids, suites=suites, seed=seed, out=out)


def run_command(
    config_path: str,
    suites: Optional[Sequence[str]] = None,
    grid: Optional[str] = None,
    out: Optional[str] = None,
    seed: Optional[int] = None,
    snapshots: bool = False,
    settings: Optional[LabSettings] = None,
) -> int:
    settings = settings or LabSettings()
    for warning in settings.warnings:
        print_info(warning)
    try:
        config = _resolve_config(config_path, settings, suites, grid, seed, out)
    except SchemaError as exc:
        print_error(exc.render())
        return EXIT_CONFIG_ERROR
    except ConfigError as exc:
        print_error(str(exc))
        return EXIT_CONFIG_ERROR

    reset()
    run_log = RunLogManager(settings.resolve_log_dir(config.out))
    set_active_run_logger(run_log)
    run_log.attach_metadata("config", {"path": config.path, "hash": config.config_hash(), "suites": config.suites})
    run_log.attach_metadata("settings", settings.to_dict())
    exit_code = EXIT_CONFIG_ERROR
    try:
        registry = {s.name: s for s in default_suites()}
        selected = [registry[name] for name in registry if name in config.suites]
        context = SuiteContext(config=config, settings=settings, out_dir=config.out, snapshots=snapshots)
        print_rule(f"moller-dirac run {config.config_hash()[:12]}")
        print_info(f"suites: {', '.join(s.name for s in selected)} | grids: {config.grids} | threads: {settings.threads}")

        results = run_suites(selected, context, run_log)
        exit_code = EXIT_PASS if all(r.passed for r in results) else EXIT_SUITE_FAILURE

        telemetry = _telemetry()
        for result in results:
            write_suite_report(result, config, config.out, telemetry)
        summary = write_summary(results, config, config.out, exit_code, telemetry)
        run_log.attach_metadata("telemetry", telemetry)

        rows = [
            [r.suite, "pass" if r.passed else "FAIL", r.failed_invariant or "", r.error or ""]
            for r in results
        ]
        print_table("Results", ["suite", "status", "failed invariant", "error"], rows)
        if exit_code == EXIT_PASS:
            print_success(f"All suites passed; reports in {summary.parent}")
        else:
            print_error(f"Suite failures; reports in {summary.parent}")
    finally:
        run_log.finalize(exit_code)
        set_active_run_logger(None)
    return exit_code
