"""
Centralised numeric defaults for gevrey-nls.

Tolerances, guards and the implicit constants of the analysis live here so
that no module hard-codes them. Every value can be overridden through an
environment variable with the ``GEVREY_NLS_`` prefix.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Any, Dict


def _get_env(name: str, default: str) -> str:
    return os.getenv(name, default)


def _get_env_chain(*names: str, default: str) -> str:
    """
    Return the first environment variable value that is set from the provided names.
    Falls back to the supplied default if none are defined.
    """
    for name in names:
        if not name:
            continue
        value = os.getenv(name)
        if value is not None:
            return value
    return default


@dataclass(frozen=True)
class NumericsProfile:
    """Guards and floors used by the spectral core and the fits."""

    overflow_guard: float = 1e120
    noise_floor: float = 1e-12
    boundary_leak_tol: float = 1e-8
    drift_floor: float = 1e-13
    curvature_tol: float = 0.15
    fft_workers: int = 1

    @property
    def log_guard(self) -> float:
        """Largest admissible exponent σ·‖ξ‖."""
        return math.log(self.overflow_guard)

    def as_dict(self) -> Dict[str, Any]:
        return {
            "overflow_guard": self.overflow_guard,
            "noise_floor": self.noise_floor,
            "boundary_leak_tol": self.boundary_leak_tol,
            "drift_floor": self.drift_floor,
            "curvature_tol": self.curvature_tol,
            "fft_workers": self.fft_workers,
        }


@dataclass(frozen=True)
class PicardProfile:
    """Defaults for the Duhamel/Picard stepper."""

    max_iter: int = 50
    tol: float = 1e-12
    quad_points: int = 16
    b: float = 0.6
    b_prime: float = 0.8
    c0: float = 0.1
    eps: float = 0.0


@dataclass(frozen=True)
class ScheduleProfile:
    """Constants of the lifespan and σ-schedule formulas."""

    c0: float = 0.1
    C_p: float = 1.0
    eps: float = 0.0
    gn_constant: float = 1.0


def load_numerics_profile() -> NumericsProfile:
    """Build the numerics profile from the current environment."""
    return NumericsProfile(
        overflow_guard=float(_get_env("GEVREY_NLS_OVERFLOW_GUARD", "1e120")),
        noise_floor=float(_get_env("GEVREY_NLS_NOISE_FLOOR", "1e-12")),
        boundary_leak_tol=float(_get_env("GEVREY_NLS_BOUNDARY_LEAK_TOL", "1e-8")),
        drift_floor=float(_get_env("GEVREY_NLS_DRIFT_FLOOR", "1e-13")),
        curvature_tol=float(_get_env("GEVREY_NLS_CURVATURE_TOL", "0.15")),
        fft_workers=int(
            _get_env_chain("GEVREY_NLS_FFT_WORKERS", "GEVREY_NLS_WORKERS", default="1")
        ),
    )


def load_picard_profile() -> PicardProfile:
    """Build the Picard defaults from the current environment."""
    return PicardProfile(
        max_iter=int(_get_env("GEVREY_NLS_PICARD_MAX_ITER", "50")),
        tol=float(_get_env("GEVREY_NLS_PICARD_TOL", "1e-12")),
        quad_points=int(_get_env("GEVREY_NLS_PICARD_QUAD_POINTS", "16")),
        b=float(_get_env("GEVREY_NLS_B", "0.6")),
        b_prime=float(_get_env("GEVREY_NLS_B_PRIME", "0.8")),
        c0=float(_get_env_chain("GEVREY_NLS_PICARD_C0", "GEVREY_NLS_C0", default="0.1")),
        eps=float(_get_env("GEVREY_NLS_EPS", "0.0")),
    )


def load_schedule_profile() -> ScheduleProfile:
    """Build the schedule constants from the current environment."""
    return ScheduleProfile(
        c0=float(_get_env("GEVREY_NLS_C0", "0.1")),
        C_p=float(_get_env("GEVREY_NLS_C_P", "1.0")),
        eps=float(_get_env("GEVREY_NLS_EPS", "0.0")),
        gn_constant=float(_get_env("GEVREY_NLS_GN_CONSTANT", "1.0")),
    )


NUMERICS = load_numerics_profile()
PICARD_DEFAULTS = load_picard_profile()
SCHEDULE_DEFAULTS = load_schedule_profile()


def reload_profiles() -> None:
    """Re-read every profile from the environment (after autotune or overrides)."""
    global NUMERICS, PICARD_DEFAULTS, SCHEDULE_DEFAULTS
    NUMERICS = load_numerics_profile()
    PICARD_DEFAULTS = load_picard_profile()
    SCHEDULE_DEFAULTS = load_schedule_profile()


__all__ = [
    "NumericsProfile",
    "PicardProfile",
    "ScheduleProfile",
    "load_numerics_profile",
    "load_picard_profile",
    "load_schedule_profile",
    "NUMERICS",
    "PICARD_DEFAULTS",
    "SCHEDULE_DEFAULTS",
    "reload_profiles",
]
