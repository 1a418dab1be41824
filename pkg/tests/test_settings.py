from __future__ import annotations

import os

import pytest

from moller_dirac.config import ENV_PREFIX, LabSettings, load_env_file


def _clear(monkeypatch: pytest.MonkeyPatch) -> None:
    for name in ("THREADS", "LOG_DIR", "CFL", "DEBUG_ENV"):
        monkeypatch.delenv(f"{ENV_PREFIX}{name}", raising=False)


def test_defaults_without_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    _clear(monkeypatch)
    settings = LabSettings()
    assert 1 <= settings.threads <= 8
    assert settings.cfl == 0.5
    assert settings.log_dir is None
    assert settings.debug_env is False
    assert settings.warnings == []
    assert settings.resolve_log_dir("results") == os.path.join("results", "logs")


def test_environment_overrides(monkeypatch: pytest.MonkeyPatch, tmp_path) -> None:
    _clear(monkeypatch)
    monkeypatch.setenv("MOLLER_DIRAC_THREADS", "3")
    monkeypatch.setenv("MOLLER_DIRAC_CFL", "0.25")
    monkeypatch.setenv("MOLLER_DIRAC_LOG_DIR", str(tmp_path))
    monkeypatch.setenv("MOLLER_DIRAC_DEBUG_ENV", "yes")
    settings = LabSettings()
    assert settings.threads == 3
    assert settings.cfl == 0.25
    assert settings.resolve_log_dir("results") == str(tmp_path)
    assert settings.debug_env is True
    assert settings.to_dict()["threads"] == 3


@pytest.mark.parametrize(
    "name, value",
    [("THREADS", "zero"), ("THREADS", "0"), ("CFL", "0.9"), ("CFL", "fast")],
)
def test_invalid_values_fall_back_with_a_warning(monkeypatch: pytest.MonkeyPatch, name: str, value: str) -> None:
    _clear(monkeypatch)
    monkeypatch.setenv(f"{ENV_PREFIX}{name}", value)
    settings = LabSettings()
    assert len(settings.warnings) == 1
    assert name in settings.warnings[0]
    assert settings.cfl == 0.5
    assert settings.threads >= 1


def test_env_file_is_found_in_a_parent_directory(monkeypatch: pytest.MonkeyPatch, tmp_path) -> None:
    _clear(monkeypatch)
    (tmp_path / ".env").write_text("MOLLER_DIRAC_THREADS=5\n", encoding="utf-8")
    nested = tmp_path / "a" / "b"
    nested.mkdir(parents=True)
    monkeypatch.chdir(nested)
    try:
        assert load_env_file() == str(tmp_path / ".env")
        assert LabSettings().threads == 5
    finally:
        os.environ.pop("MOLLER_DIRAC_THREADS", None)


def test_existing_variables_win_over_env_file(monkeypatch: pytest.MonkeyPatch, tmp_path) -> None:
    _clear(monkeypatch)
    (tmp_path / ".env").write_text("MOLLER_DIRAC_CFL=0.1\n", encoding="utf-8")
    monkeypatch.setenv("MOLLER_DIRAC_CFL", "0.4")
    monkeypatch.chdir(tmp_path)
    load_env_file()
    assert LabSettings().cfl == 0.4
