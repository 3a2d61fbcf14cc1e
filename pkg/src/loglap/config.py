"""Run configuration: one YAML file describes a reproducible run."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Literal

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .errors import ConfigurationError
from .mesh import DomainSpec, WeightSpec

DEFAULT_SEED = 0x5EED


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class DomainConfig(_Strict):
    a: float = -0.5
    b: float = 0.5

    @model_validator(mode="after")
    def _ordered(self):
        if not self.a < self.b:
            raise ValueError(f"domain needs a < b, got ({self.a}, {self.b})")
        return self

    def spec(self) -> DomainSpec:
        return DomainSpec(self.a, self.b)


class WeightConfig(_Strict):
    kind: Literal["constant", "piecewise-bounded", "singular-log"] = "constant"
    params: dict = Field(default_factory=lambda: {"value": 1.0})
    lambda0: float = -10.0
    alpha: float = 1.0

    def spec(self) -> WeightSpec:
        return WeightSpec(self.kind, dict(self.params), w2_lambda0=self.lambda0, w2_alpha=self.alpha)


class OrliczConfig(_Strict):
    beta: float = Field(0.5, gt=0.0, lt=1.0)


class SolveConfig(_Strict):
    kmax: int = Field(5, ge=1)
    shift_hint: float | None = None


class VerifyConfig(_Strict):
    trials: int = Field(1000, ge=1)
    seed: int = Field(DEFAULT_SEED, ge=0, lt=2**64)
    s_list: list[float] = Field(default_factory=lambda: [0.1, 0.05, 0.025, 0.0125])
    nodal_k: list[int] = Field(default_factory=lambda: [2, 3])
    compare_weight: WeightConfig | None = None
    outer_domain: DomainConfig | None = None
    scale_factors: list[float] = Field(default_factory=lambda: [2.0, 4.0])

    @field_validator("s_list")
    @classmethod
    def _descending(cls, v):
        if not v:
            raise ValueError("s_list must not be empty")
        if any(not 0.0 < s <= 0.25 for s in v):
            raise ValueError("s_list entries must lie in (0, 1/4]")
        if any(b >= a for a, b in zip(v, v[1:])):
            raise ValueError("s_list must be strictly descending")
        return v

    @field_validator("nodal_k")
    @classmethod
    def _nodal(cls, v):
        if any(k < 2 for k in v):
            raise ValueError("nodal_k entries must be >= 2")
        return v


class OutputConfig(_Strict):
    format: Literal["csv", "json"] = "csv"
    path: str | None = None


class SweepConfig(_Strict):
    values: list[float] | None = None


class RunConfig(_Strict):
    domain: DomainConfig = Field(default_factory=DomainConfig)
    n: int = Field(128, ge=2)
    N: Literal[1] = 1
    weight: WeightConfig = Field(default_factory=WeightConfig)
    orlicz: OrliczConfig = Field(default_factory=OrliczConfig)
    solve: SolveConfig = Field(default_factory=SolveConfig)
    verify: VerifyConfig = Field(default_factory=VerifyConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)
    sweep: SweepConfig = Field(default_factory=SweepConfig)

    @model_validator(mode="after")
    def _module_preconditions(self):
        h = (self.domain.b - self.domain.a) / self.n
        if h > 1.0:
            raise ValueError(f"cell width {h:g} > 1: refine mesh or shrink domain")
        self.weight.spec()
        if self.verify.compare_weight is not None:
            self.verify.compare_weight.spec()
        return self

    def with_seed(self, seed: int | None) -> "RunConfig":
        if seed is None:
            return self
        data = self.model_dump()
        data["verify"]["seed"] = seed
        return RunConfig.model_validate(data)

    def digest(self) -> str:
        """sha256 of the canonical JSON form; output location is not part of it."""
        data = self.model_dump(exclude={"output"})
        blob = json.dumps(data, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def parse_config(data: dict | None) -> RunConfig:
    try:
        return RunConfig.model_validate(data or {})
    except ValidationError as exc:
        raise ConfigurationError(f"invalid config: {exc}") from None
    except ConfigurationError:
        raise
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from None


def load_config(path: str | Path) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc.strerror}") from None
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigurationError(f"malformed YAML in {path}: {exc}") from None
    if data is not None and not isinstance(data, dict):
        raise ConfigurationError(f"config {path} must be a mapping at the top level")
    return parse_config(data)
