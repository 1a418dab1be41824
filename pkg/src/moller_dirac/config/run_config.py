"""JSON run configs: pydantic document models, line-anchored schema errors, canonical hash."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, ValidationError, ValidationInfo, field_validator, model_validator

from ..boundary import BOUNDARY_NAMES
from ..errors import SchemaError
from ..geometry import PRESETS, ChiProfile, Domain, SplitMetric, build_metric

SUITE_NAMES = ("check-clifford", "check-boundary", "evolve", "green", "moller", "state", "convergence")
MIN_CELLS = 8


def _check_ladder(values: Sequence[int]) -> List[int]:
    out = list(values)
    if not out:
        raise ValueError("expected a non-empty list of cell counts")
    if out[0] < MIN_CELLS:
        raise ValueError(f"grids need at least {MIN_CELLS} cells")
    if any(b <= a for a, b in zip(out[:-1], out[1:])):
        raise ValueError("grid ladder must be strictly increasing")
    return out


def _known(values: Sequence[str], known: Sequence[str]) -> List[str]:
    if not values:
        raise ValueError("expected a non-empty list of names")
    for item in values:
        if item not in known:
            raise ValueError(f"unknown name '{item}' (known: {', '.join(known)})")
    return list(dict.fromkeys(values))


class _Document(BaseModel):
    model_config = ConfigDict(extra="forbid", strict=True, frozen=True)


class DomainSpec(_Document):
    t_start: float = 0.0
    t_end: float = 1.0
    length: float = Field(1.0, gt=0.0)

    @model_validator(mode="after")
    def _ordered(self) -> "DomainSpec":
        if self.t_end <= self.t_start:
            raise ValueError("t_end must exceed t_start")
        return self

    def build(self) -> Domain:
        return Domain(t_end=self.t_end, length=self.length, t_start=self.t_start)


class MetricSpec(_Document):
    preset: str = "minkowski"
    params: Dict[str, Any] = Field(default_factory=dict)

    @field_validator("preset")
    @classmethod
    def _known_preset(cls, value: str) -> str:
        if value not in PRESETS:
            raise ValueError(f"unknown preset '{value}' (known: {', '.join(sorted(PRESETS))})")
        return value

    def build(self, domain: Domain) -> SplitMetric:
        return build_metric({"preset": self.preset, "params": self.params}, domain)


class ChiSpec(_Document):
    t_minus: float
    t_plus: float
    kind: Literal["smooth", "polynomial"] = "smooth"

    def build(self) -> ChiProfile:
        return ChiProfile(self.t_minus, self.t_plus, self.kind)


class RunDocument(_Document):
    """The JSON run config as written; field order matters for cross-field checks."""

    domain: DomainSpec
    g0: MetricSpec
    g1: MetricSpec
    chi: ChiSpec
    grids: List[int]
    boundary: List[str] = Field(default_factory=lambda: ["mit"])
    suites: List[str] = Field(default_factory=lambda: list(SUITE_NAMES))
    cfl: float = Field(0.5, gt=0.0, le=0.5)
    sbp_order: Literal[2, 4] = 2
    mass: float = Field(0.0, ge=0.0)
    trials: int = Field(10, ge=1)
    seed: int = 0
    out: str = "results"

    @field_validator("chi")
    @classmethod
    def _inside_domain(cls, chi: ChiSpec, info: ValidationInfo) -> ChiSpec:
        domain = info.data.get("domain")
        lo, hi = (domain.t_start, domain.t_end) if domain is not None else (float("-inf"), float("inf"))
        if not lo <= chi.t_minus < chi.t_plus <= hi:
            raise ValueError("need t_start <= t_minus < t_plus <= t_end")
        return chi

    @field_validator("grids")
    @classmethod
    def _ladder(cls, grids: List[int]) -> List[int]:
        return _check_ladder(grids)

    @field_validator("boundary")
    @classmethod
    def _boundary_names(cls, names: List[str]) -> List[str]:
        return _known(names, BOUNDARY_NAMES)

    @field_validator("suites")
    @classmethod
    def _suite_names(cls, names: List[str]) -> List[str]:
        return _known(names, SUITE_NAMES)

    def to_config(self, path: Optional[str] = None) -> "RunConfig":
        return RunConfig(
            domain=self.domain.build(),
            g0=self.g0,
            g1=self.g1,
            chi=self.chi,
            grids=list(self.grids),
            boundary=list(self.boundary),
            suites=list(self.suites),
            cfl=self.cfl,
            sbp_order=self.sbp_order,
            mass=self.mass,
            trials=self.trials,
            seed=self.seed,
            out=self.out,
            path=path,
        )


@dataclass(frozen=True)
class RunConfig:
    domain: Domain
    g0: MetricSpec
    g1: MetricSpec
    chi: ChiSpec
    grids: List[int]
    boundary: List[str] = field(default_factory=lambda: ["mit"])
    suites: List[str] = field(default_factory=lambda: list(SUITE_NAMES))
    cfl: float = 0.5
    sbp_order: int = 2
    mass: float = 0.0
    trials: int = 10
    seed: int = 0
    out: str = "results"
    path: Optional[str] = None

    def metric0(self) -> SplitMetric:
        return self.g0.build(self.domain)

    def metric1(self) -> SplitMetric:
        return self.g1.build(self.domain)

    def potential_spec(self) -> Optional[Dict[str, Any]]:
        return {"mass": self.mass} if self.mass > 0.0 else None

    def to_dict(self) -> Dict[str, Any]:
        """The validated config without output location or source path."""
        return {
            "domain": self.domain.to_dict(),
            "g0": self.g0.model_dump(),
            "g1": self.g1.model_dump(),
            "chi": self.chi.model_dump(),
            "grids": list(self.grids),
            "boundary": list(self.boundary),
            "suites": list(self.suites),
            "cfl": self.cfl,
            "sbp_order": self.sbp_order,
            "mass": self.mass,
            "trials": self.trials,
            "seed": self.seed,
        }

    def config_hash(self) -> str:
        payload = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"), default=str)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    def with_overrides(
        self,
        grids: Optional[Sequence[int]] = None,
        suites: Optional[Sequence[str]] = None,
        seed: Optional[int] = None,
        out: Optional[str] = None,
    ) -> "RunConfig":
        updates: Dict[str, Any] = {}
        try:
            if grids is not None:
                updates["grids"] = _check_ladder([int(n) for n in grids])
        except ValueError as exc:
            raise SchemaError(str(exc), path="--grid") from exc
        try:
            if suites:
                updates["suites"] = _known(list(suites), SUITE_NAMES)
        except ValueError as exc:
            raise SchemaError(str(exc), path="--suite") from exc
        if seed is not None:
            updates["seed"] = int(seed)
        if out is not None:
            updates["out"] = str(out)
        return replace(self, **updates)


class _Anchor:
    """Maps key paths of a parsed document back to lines of its source text."""

    def __init__(self, text: str, path: Optional[str]) -> None:
        self.text = text
        self.path = path

    def line(self, keys: Sequence[Any]) -> Optional[int]:
        if not self.text:
            return None
        pos = 0
        found = None
        for key in keys:
            if not isinstance(key, str):
                continue
            hit = self.text.find(f'"{key}"', pos)
            if hit < 0:
                break
            pos = hit + len(key) + 2
            found = hit
        if found is None:
            return None
        return self.text.count("\n", 0, found) + 1

    def error(self, exc: ValidationError) -> SchemaError:
        """The first pydantic error, prefixed with its dotted location."""
        first = exc.errors()[0]
        keys = list(first.get("loc", ()))
        dotted = ".".join(str(k) for k in keys)
        message = first.get("msg", str(exc))
        return SchemaError(f"{dotted}: {message}" if dotted else message, line=self.line(keys), path=self.path)


def validate_config(raw: Any, text: str = "", path: Optional[str] = None) -> RunConfig:
    try:
        document = RunDocument.model_validate(raw)
    except ValidationError as exc:
        raise _Anchor(text, path).error(exc) from exc
    return document.to_config(path)


def load_run_config(path: str, default_cfl: Optional[float] = None) -> RunConfig:
    """Read and validate a JSON run config; every failure is a SchemaError."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read config: {exc.strerror or exc}", path=path) from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg}", line=exc.lineno, path=path) from exc
    config = validate_config(raw, text, path)
    if default_cfl is not None and "cfl" not in raw:
        config = replace(config, cfl=float(default_cfl))
    return config


def parse_grid_arg(text: str) -> List[int]:
    """`--grid 100,200,400` -> [100, 200, 400]."""
    try:
        return _check_ladder([int(part) for part in text.split(",") if part.strip()])
    except ValueError as exc:
        raise SchemaError(f"bad grid ladder '{text}': {exc}", path="--grid") from exc
