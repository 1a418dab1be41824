from __future__ import annotations

import json

import pytest
from pydantic import ValidationError

from moller_dirac.config import SUITE_NAMES, RunDocument, load_run_config, parse_grid_arg, validate_config
from moller_dirac.errors import ConfigError, SchemaError

BASE = {
    "domain": {"t_end": 1.0, "length": 1.0},
    "g0": {"preset": "bump", "params": {"beta_amplitude": 0.1}},
    "g1": {"preset": "minkowski"},
    "chi": {"t_minus": 0.3, "t_plus": 0.7},
    "grids": [40, 80, 160],
}


def _write(tmp_path, payload) -> str:
    path = tmp_path / "run.json"
    path.write_text(json.dumps(payload, indent=2), encoding="utf-8")
    return str(path)


def test_minimal_config_gets_defaults(tmp_path) -> None:
    config = load_run_config(_write(tmp_path, BASE))
    assert config.grids == [40, 80, 160]
    assert config.suites == list(SUITE_NAMES)
    assert config.boundary == ["mit"]
    assert config.cfl == 0.5
    assert config.sbp_order == 2
    assert config.potential_spec() is None


def test_default_cfl_applies_only_when_absent(tmp_path) -> None:
    assert load_run_config(_write(tmp_path, BASE), default_cfl=0.3).cfl == 0.3
    assert load_run_config(_write(tmp_path, {**BASE, "cfl": 0.4}), default_cfl=0.3).cfl == 0.4


def test_schema_errors_point_at_the_offending_line(tmp_path) -> None:
    path = _write(tmp_path, {**BASE, "grids": [80, 40]})
    with pytest.raises(SchemaError) as info:
        load_run_config(path)
    err = info.value
    text = (tmp_path / "run.json").read_text(encoding="utf-8")
    expected = text[: text.index('"grids"')].count("\n") + 1
    assert err.line == expected
    assert err.render().startswith(f"{path}:{expected}:")
    assert isinstance(err, ConfigError)


@pytest.mark.parametrize(
    "patch",
    [
        {"unknown": 1},
        {"grids": [4, 8]},
        {"grids": []},
        {"chi": {"t_minus": 0.7, "t_plus": 0.3}},
        {"chi": {"t_minus": 0.3, "t_plus": 0.7, "kind": "step"}},
        {"g0": {"preset": "wormhole"}},
        {"boundary": ["dirichlet"]},
        {"suites": ["everything"]},
        {"cfl": 0.9},
        {"sbp_order": 3},
        {"mass": -1.0},
        {"seed": "seven"},
        {"domain": {"t_end": 0.0}},
    ],
)
def test_invalid_documents_are_rejected(patch) -> None:
    with pytest.raises(SchemaError):
        validate_config({**BASE, **patch})


def test_missing_required_key() -> None:
    raw = dict(BASE)
    raw.pop("chi")
    with pytest.raises(SchemaError, match="chi"):
        validate_config(raw)


def test_unreadable_and_malformed_files(tmp_path) -> None:
    with pytest.raises(SchemaError):
        load_run_config(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "grids": [1,\n', encoding="utf-8")
    with pytest.raises(SchemaError) as info:
        load_run_config(str(bad))
    assert info.value.line is not None


def test_hash_ignores_output_location(tmp_path) -> None:
    a = validate_config({**BASE, "out": "one"})
    b = validate_config({**BASE, "out": "two"})
    assert a.config_hash() == b.config_hash()
    assert a.config_hash() != validate_config({**BASE, "seed": 3}).config_hash()


def test_overrides() -> None:
    config = validate_config(BASE)
    updated = config.with_overrides(grids=[20, 40], suites=["green", "green", "moller"], seed=9, out="elsewhere")
    assert updated.grids == [20, 40]
    assert updated.suites == ["green", "moller"]
    assert updated.seed == 9
    assert updated.out == "elsewhere"
    with pytest.raises(SchemaError):
        config.with_overrides(suites=["nope"])
    with pytest.raises(SchemaError):
        config.with_overrides(grids=[40, 20])


def test_parse_grid_arg() -> None:
    assert parse_grid_arg("100,200,400") == [100, 200, 400]
    assert parse_grid_arg("16, 32") == [16, 32]
    with pytest.raises(SchemaError):
        parse_grid_arg("100,abc")
    with pytest.raises(SchemaError):
        parse_grid_arg("4")


def test_nested_errors_carry_the_field_location(tmp_path) -> None:
    payload = {**BASE, "chi": {"t_minus": 0.3, "t_plus": 0.7, "kind": "step"}}
    path = _write(tmp_path, payload)
    with pytest.raises(SchemaError) as info:
        load_run_config(path)
    err = info.value
    text = (tmp_path / "run.json").read_text(encoding="utf-8")
    assert err.message.startswith("chi.kind:")
    assert err.line == text[: text.index('"kind"')].count("\n") + 1
    assert isinstance(err.__cause__, ValidationError)


@pytest.mark.parametrize("patch", [{"trials": True}, {"cfl": "0.4"}, {"grids": [40.0, 80.0]}])
def test_values_are_not_coerced(patch) -> None:
    with pytest.raises(SchemaError):
        validate_config({**BASE, **patch})


def test_document_defaults_and_conversion() -> None:
    document = RunDocument.model_validate(BASE)
    assert document.domain.t_start == 0.0
    assert document.g1.preset == "minkowski"
    config = document.to_config("cfg.json")
    assert config.path == "cfg.json"
    assert config.domain.length == 1.0
    assert config.chi.build().t_plus == 0.7
    assert config.to_dict()["g0"] == {"preset": "bump", "params": {"beta_amplitude": 0.1}}
