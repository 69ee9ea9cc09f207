"""
Experiment configuration: the pydantic model plus the ``key = value`` file format.

Config files hold one ``key = value`` pair per line with ``#`` comments.
Values are read as YAML scalars or flow lists, so ``[1e-4, 1e-3]`` and
``true`` work; string fields keep their raw text.
"""

from __future__ import annotations

import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

import yaml
from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator

from gevrey_nls.core.diagnostics import ScheduleParams
from gevrey_nls.core.errors import ConfigError, GevreyNlsError
from gevrey_nls.core.estimates import ESTIMATES, EstimateParams
from gevrey_nls.core.solver import PicardParams
from gevrey_nls.core.spectral import GridSpec
from gevrey_nls.tools.profiles import DataProfile, parse_profile

logger = logging.getLogger(__name__)

ExperimentName = Literal["radius_decay", "conservation", "estimate_suite"]
_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
_RAW_TEXT_FIELDS = frozenset({"experiment", "method", "data_profile", "out_dir", "log_level"})


def _is_power_of_two(value: int) -> bool:
    return value > 0 and (value & (value - 1)) == 0


class ExperimentConfig(BaseModel):
    """Everything one experiment run needs; every field is a config-file key."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    experiment: ExperimentName
    dim: int = 1
    n: int = 512
    box_len: float = 40.0
    p: int = 5
    sigma0: float = 0.5
    s: float = 1.0
    T: float = 1.0
    dt: float = 1e-3
    method: Literal["splitstep", "picard"] = "splitstep"
    data_profile: str = "sech"
    sigma_list: List[float] = [1e-4, 1e-3, 1e-2]
    seed: int = 0
    out_dir: str = "results"
    c0: float = 0.1
    C_p: float = 1.0
    eps: float = 0.0
    samples: int = 100
    workers: int = 1
    stride: int = 10
    m: int = 32
    t_len: float = math.pi / 2
    b: float = 0.6
    b_prime: float = 0.8
    quad_points: int = 16
    estimates: Optional[List[str]] = None
    estimate_sigma: float = 0.1
    conj_pattern: Optional[List[bool]] = None
    min_steps: int = 16
    log_level: str = "INFO"

    @field_validator("dim")
    @classmethod
    def _check_dim(cls, value: int) -> int:
        if value not in (1, 2):
            raise ValueError("dim must be 1 or 2")
        return value

    @field_validator("n")
    @classmethod
    def _check_n(cls, value: int) -> int:
        if value < 8 or not _is_power_of_two(value):
            raise ValueError("n must be a power of two >= 8")
        return value

    @field_validator("m")
    @classmethod
    def _check_m(cls, value: int) -> int:
        if value < 2 or not _is_power_of_two(value):
            raise ValueError("m must be a power of two >= 2")
        return value

    @field_validator("p")
    @classmethod
    def _check_p(cls, value: int) -> int:
        if value < 3 or value % 2 == 0:
            raise ValueError("p must be an odd integer >= 3")
        return value

    @field_validator("box_len", "dt", "t_len", "c0", "C_p")
    @classmethod
    def _check_positive(cls, value: float) -> float:
        if not (value > 0 and math.isfinite(value)):
            raise ValueError("must be positive and finite")
        return value

    @field_validator("sigma0", "T", "eps", "estimate_sigma")
    @classmethod
    def _check_non_negative(cls, value: float) -> float:
        if not (value >= 0 and math.isfinite(value)):
            raise ValueError("must be >= 0 and finite")
        return value

    @field_validator("samples", "workers", "stride", "min_steps")
    @classmethod
    def _check_count(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be >= 1")
        return value

    @field_validator("quad_points")
    @classmethod
    def _check_quad_points(cls, value: int) -> int:
        if value < 2:
            raise ValueError("quad_points must be >= 2")
        return value

    @field_validator("data_profile")
    @classmethod
    def _check_profile(cls, value: str) -> str:
        try:
            return parse_profile(value).label()
        except GevreyNlsError as exc:
            raise ValueError(str(exc)) from exc

    @field_validator("estimates")
    @classmethod
    def _check_estimates(cls, value: Optional[List[str]]) -> Optional[List[str]]:
        if value is None:
            return value
        unknown = [item for item in value if item not in ESTIMATES]
        if unknown:
            raise ValueError(
                f"unknown estimate(s) {', '.join(unknown)}; known: {', '.join(sorted(ESTIMATES))}"
            )
        if not value:
            raise ValueError("estimates must not be empty")
        return value

    @field_validator("log_level")
    @classmethod
    def _check_log_level(cls, value: str) -> str:
        upper = value.upper()
        if upper not in _LOG_LEVELS:
            raise ValueError(f"log_level must be one of {', '.join(_LOG_LEVELS)}")
        return upper

    @model_validator(mode="after")
    def _check_combinations(self) -> "ExperimentConfig":
        if not 0.5 < self.b < self.b_prime < 1.0:
            raise ValueError(f"b, b_prime: require 1/2 < b < b' < 1, got {self.b}, {self.b_prime}")
        if self.conj_pattern is not None and len(self.conj_pattern) != self.p:
            raise ValueError(
                f"conj_pattern: has {len(self.conj_pattern)} flags but the p-linear estimates take {self.p}"
            )
        if self.experiment == "estimate_suite" and self.samples < 100:
            raise ValueError("samples: estimate_suite needs at least 100 samples")
        if self.experiment == "conservation":
            positive = [sigma for sigma in self.sigma_list if sigma > 0]
            if len(positive) < 3 or max(positive) / min(positive) < 100.0 * (1 - 1e-12):
                raise ValueError(
                    "sigma_list: conservation needs >= 3 positive values spanning >= 2 decades"
                )
        if any(sigma < 0 for sigma in self.sigma_list):
            raise ValueError("sigma_list: values must be >= 0")
        return self

    def grid(self, n: Optional[int] = None) -> GridSpec:
        return GridSpec(self.dim, n or self.n, self.box_len)

    def profile(self) -> DataProfile:
        return parse_profile(self.data_profile)

    def schedule_params(self) -> ScheduleParams:
        return ScheduleParams(c0=self.c0, C_p=self.C_p, eps=self.eps)

    def picard_params(self) -> PicardParams:
        return PicardParams(
            quad_points=self.quad_points, b=self.b, b_prime=self.b_prime, c0=self.c0, eps=self.eps
        )

    def estimate_params(self) -> EstimateParams:
        return EstimateParams(p=self.p, b=self.b, sigma=self.estimate_sigma, s=self.s)

    def estimate_ids(self) -> List[str]:
        return list(self.estimates) if self.estimates is not None else list(ESTIMATES)


def _validation_message(exc: ValidationError) -> str:
    parts = []
    for error in exc.errors():
        location = ".".join(str(item) for item in error.get("loc", ())) or "config"
        message = error.get("msg", "invalid value")
        parts.append(f"{location}: {message}")
    return "; ".join(parts)


def _build(data: Dict[str, Any]) -> ExperimentConfig:
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(f"Invalid configuration: {_validation_message(exc)}") from exc


def _parse_value(key: str, raw: str) -> Any:
    if key in _RAW_TEXT_FIELDS:
        if len(raw) >= 2 and raw[0] == raw[-1] and raw[0] in "'\"":
            return raw[1:-1]
        return raw
    try:
        return yaml.safe_load(raw)
    except yaml.YAMLError as exc:
        raise ConfigError(f"Cannot parse value for '{key}': {raw!r}") from exc


def parse_config(text: str) -> ExperimentConfig:
    """
    Parse ``key = value`` text into a validated config.

    Raises:
        ConfigError: on malformed lines, unknown or repeated keys, and any
            failed validation; the message names the offending key.
    """
    known = set(ExperimentConfig.model_fields)
    data: Dict[str, Any] = {}
    for number, line in enumerate(text.splitlines(), start=1):
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        key, sep, raw = content.partition("=")
        key, raw = key.strip(), raw.strip()
        if not sep or not key:
            raise ConfigError(f"Line {number}: expected 'key = value', got {line.strip()!r}")
        if key not in known:
            raise ConfigError(f"Unknown config key '{key}' on line {number}")
        if key in data:
            raise ConfigError(f"Config key '{key}' given twice (line {number})")
        data[key] = _parse_value(key, raw)
    return _build(data)


def load_config(path: Path | str) -> ExperimentConfig:
    source = Path(path)
    try:
        text = source.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"Cannot read config file {source}: {exc}") from exc
    return parse_config(text)


def _format(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_format(item) for item in value) + "]"
    return str(value)


def serialize_config(cfg: ExperimentConfig) -> str:
    """Canonical text: declaration order, one key per line, unset optionals omitted."""
    lines = []
    for name in ExperimentConfig.model_fields:
        value = getattr(cfg, name)
        if value is None:
            continue
        lines.append(f"{name} = {_format(value)}")
    return "\n".join(lines) + "\n"


def apply_overrides(cfg: ExperimentConfig, **overrides: Any) -> ExperimentConfig:
    """Return a re-validated copy with every non-None override applied."""
    changes = {key: value for key, value in overrides.items() if value is not None}
    unknown = sorted(set(changes) - set(ExperimentConfig.model_fields))
    if unknown:
        raise ConfigError(f"Unknown config key '{unknown[0]}'")
    if not changes:
        return cfg
    return _build({**cfg.model_dump(), **changes})


__all__ = [
    "ExperimentConfig",
    "parse_config",
    "load_config",
    "serialize_config",
    "apply_overrides",
]
