from __future__ import annotations

from moller_dirac.config import SUITE_NAMES, LabSettings, validate_config
from moller_dirac.suites import SuiteContext, SuiteResult, default_suites, get_suite, list_suites

CONFIG = validate_config(
    {
        "domain": {"t_end": 1.0, "length": 1.0},
        "g0": {"preset": "minkowski"},
        "g1": {"preset": "minkowski"},
        "chi": {"t_minus": 0.3, "t_plus": 0.7},
        "grids": [16, 32, 64],
        "seed": 2,
    }
)


def _context(threads: int = 4) -> SuiteContext:
    settings = LabSettings()
    settings.threads = threads
    return SuiteContext(config=CONFIG, settings=settings, out_dir="unused")


def test_default_suites_match_cli_names() -> None:
    suites = default_suites()
    assert [s.name for s in suites] == list(SUITE_NAMES)
    assert default_suites()[0] is suites[0]
    assert set(list_suites()) >= set(SUITE_NAMES)
    assert get_suite("green") is not None
    assert get_suite("missing") is None
    assert all(s.get_metadata()["description"] for s in suites)


def test_first_failing_check_names_the_invariant() -> None:
    result = SuiteResult("evolve")
    result.at_most("energy_drift", 1e-14, 1e-12)
    result.at_least("order", 1.2, 1.9)
    result.at_most("boundary", float("nan"), 1.0)
    assert not result.passed
    assert result.failed_invariant == "order"
    assert result.checks[2].passed is False
    assert result.to_dict()["checks"][1]["threshold"] == 1.9

    clean = SuiteResult("evolve")
    clean.at_most("energy_drift", 0.0, 1e-12)
    assert clean.passed and clean.failed_invariant is None


def test_context_random_streams_are_per_suite() -> None:
    ctx = _context()
    a = ctx.rng("green").random(3)
    b = ctx.rng("green").random(3)
    c = ctx.rng("moller").random(3)
    assert (a == b).all()
    assert not (a == c).all()
    assert ctx.finest == 64


def test_context_map_keeps_order() -> None:
    for threads in (1, 4):
        assert _context(threads).map(lambda n: n * n, [3, 1, 2]) == [9, 1, 4]


def test_moller_suite_checks_the_exact_case() -> None:
    settings = LabSettings()
    settings.threads = 1
    context = SuiteContext(config=CONFIG.with_overrides(grids=[16, 32]), settings=settings, out_dir="unused")
    result = get_suite("moller").run(context)
    checks = {c.name: c for c in result.checks}
    for name in ("exact_case_kappa_f", "exact_case", "exact_case_gram_deviation"):
        assert checks[name].passed, name
        assert checks[name].threshold == 1e-10
    assert "exact_case_solver_drift" in result.metrics
    assert "exact_case_solver_drift" not in checks
