"""
Experiment registry for gevrey-nls.
Experiments register themselves by name and are executed from a validated config.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence

from gevrey_nls import __version__
from gevrey_nls.config.experiment import ExperimentConfig
from gevrey_nls.core.errors import GevreyNlsError
from gevrey_nls.tools.results import ResultTable

ExperimentHandler = Callable[["ExperimentContext", ExperimentConfig], List[ResultTable]]

# Keys that change how a run executes but not what it computes.
_EXECUTION_KEYS = frozenset({"out_dir", "workers", "log_level"})


class ExperimentError(Exception):
    """Base exception for experiment registry failures."""


class ExperimentNotFoundError(ExperimentError):
    """Raised when no experiment matches the requested name."""


class ExperimentRegistrationError(ExperimentError):
    """Raised when registration fails (e.g., duplicate name)."""


class ExperimentExecutionError(ExperimentError):
    """Raised when an experiment handler fails outside the numerical core."""


@dataclass
class ExperimentSpec:
    """A runnable experiment and the CSV schema of its primary table."""

    name: str
    summary: str
    description: str
    handler: ExperimentHandler
    columns: Sequence[str] = field(default_factory=tuple)
    metadata: Dict[str, Any] = field(default_factory=dict)


@dataclass
class ExperimentContext:
    """Context provided to experiment handlers."""

    registry: "ExperimentRegistry"
    workers: int = 1


@dataclass
class ExperimentExecutionResult:
    """Tables produced by one run; the first is the primary table."""

    spec: ExperimentSpec
    config: ExperimentConfig
    tables: List[ResultTable]

    @property
    def primary(self) -> ResultTable:
        return self.tables[0]


class ExperimentRegistry:
    """Stores registered experiments and executes them."""

    def __init__(self):
        self._lock = threading.RLock()
        self._experiments: Dict[str, ExperimentSpec] = {}

    def register(self, spec: ExperimentSpec) -> ExperimentSpec:
        with self._lock:
            if spec.name in self._experiments:
                raise ExperimentRegistrationError(f"Experiment '{spec.name}' is already registered")
            self._experiments[spec.name] = spec
        return spec

    def register_decorator(
        self,
        *,
        name: str,
        summary: str,
        description: str,
        columns: Sequence[str] = (),
        metadata: Optional[Mapping[str, Any]] = None,
    ) -> Callable[[ExperimentHandler], ExperimentHandler]:
        """Decorator to register an experiment handler."""

        def decorator(func: ExperimentHandler) -> ExperimentHandler:
            self.register(
                ExperimentSpec(
                    name=name,
                    summary=summary,
                    description=description,
                    handler=func,
                    columns=tuple(columns),
                    metadata=dict(metadata or {}),
                )
            )
            return func

        return decorator

    def get(self, name: str) -> ExperimentSpec:
        with self._lock:
            if name not in self._experiments:
                known = ", ".join(sorted(self._experiments)) or "none"
                raise ExperimentNotFoundError(f"No experiment registered for '{name}' (known: {known})")
            return self._experiments[name]

    def list(self) -> Iterable[ExperimentSpec]:
        with self._lock:
            specs = sorted(self._experiments.values(), key=lambda spec: spec.name)
        return iter(specs)

    def export_experiment_info(self) -> Iterable[Dict[str, Any]]:
        """Produce metadata dictionaries for each registered experiment."""
        for spec in self.list():
            yield {
                "name": spec.name,
                "summary": spec.summary,
                "description": spec.description,
                "columns": list(spec.columns),
                "examples": spec.metadata.get("examples", []),
            }

    def execute(
        self,
        cfg: ExperimentConfig,
        *,
        workers: Optional[int] = None,
    ) -> ExperimentExecutionResult:
        """
        Run the experiment named by ``cfg.experiment``.

        Domain errors from the numerical core propagate unchanged; anything
        else is wrapped in ExperimentExecutionError.
        """
        spec = self.get(cfg.experiment)
        context = ExperimentContext(
            registry=self,
            workers=workers if workers is not None else cfg.workers,
        )
        try:
            tables = list(spec.handler(context, cfg))
        except (ExperimentError, GevreyNlsError):
            raise
        except Exception as exc:
            raise ExperimentExecutionError(f"Experiment '{spec.name}' failed: {exc}") from exc
        if not tables:
            raise ExperimentExecutionError(f"Experiment '{spec.name}' produced no tables")
        return ExperimentExecutionResult(spec=spec, config=cfg, tables=tables)


def config_metadata(cfg: ExperimentConfig) -> Dict[str, Any]:
    """Header lines shared by every table: experiment, version, seed, config echo."""
    metadata: Dict[str, Any] = {
        "experiment": cfg.experiment,
        "version": __version__,
        "seed": cfg.seed,
    }
    for key in ExperimentConfig.model_fields:
        value = getattr(cfg, key)
        if key in _EXECUTION_KEYS or value is None:
            continue
        metadata[f"config.{key}"] = value
    return metadata


registry = ExperimentRegistry()
register_experiment = registry.register_decorator


__all__ = [
    "ExperimentError",
    "ExperimentNotFoundError",
    "ExperimentRegistrationError",
    "ExperimentExecutionError",
    "ExperimentSpec",
    "ExperimentContext",
    "ExperimentExecutionResult",
    "ExperimentRegistry",
    "register_experiment",
    "registry",
    "config_metadata",
]
