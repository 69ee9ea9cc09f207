"""Experiment registration and execution for gevrey-nls."""

import logging
from functools import lru_cache
from importlib import import_module
from pathlib import Path
from typing import Iterable

from .registry import (
    ExperimentContext,
    ExperimentError,
    ExperimentExecutionError,
    ExperimentExecutionResult,
    ExperimentNotFoundError,
    ExperimentRegistrationError,
    ExperimentRegistry,
    ExperimentSpec,
    register_experiment,
    registry,
)

logger = logging.getLogger(__name__)


def load_builtin_experiments(modules: Iterable[str] | None = None) -> None:
    """
    Import experiment modules so they self-register via @register_experiment.

    Args:
        modules: Optional module names. If not provided, every .py file in this
            directory except the registry is imported.
    """
    if modules is not None:
        module_names = tuple(modules)
    else:
        workflows_dir = Path(__file__).parent
        module_names = sorted(
            path.stem
            for path in workflows_dir.glob("*.py")
            if not path.name.startswith("_") and path.stem != "registry"
        )

    for module_name in module_names:
        try:
            import_module(f"{__name__}.{module_name}")
        except ImportError as exc:
            logger.warning("Failed to load experiment module '%s': %s", module_name, exc)


@lru_cache(maxsize=2)
def build_experiment_reference() -> str:
    """Plain-text listing of registered experiments and their CSV columns."""
    load_builtin_experiments()
    lines = ["gevrey-nls experiments:", "=======================", ""]
    for info in registry.export_experiment_info():
        lines.append(f"- {info['name']}           # {info['summary']}")
        lines.append(f"    columns: {', '.join(info['columns'])}")
        for example in info["examples"]:
            lines.append(f"    e.g. {example}")
    return "\n".join(lines).strip() + "\n"


__all__ = [
    "ExperimentContext",
    "ExperimentError",
    "ExperimentExecutionError",
    "ExperimentExecutionResult",
    "ExperimentNotFoundError",
    "ExperimentRegistrationError",
    "ExperimentRegistry",
    "ExperimentSpec",
    "register_experiment",
    "registry",
    "load_builtin_experiments",
    "build_experiment_reference",
]
