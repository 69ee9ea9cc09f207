"""Time evolution driver producing sampled trajectories with diagnostics."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence

from gevrey_nls.config import runtime
from gevrey_nls.core.diagnostics import (
    RadiusFit,
    RadiusFitConfig,
    almost_conserved_quantity,
    estimate_radius,
)
from gevrey_nls.core.errors import ParameterError
from gevrey_nls.core.solver import (
    PicardParams,
    energy,
    mass,
    step_duhamel_picard,
    step_splitstep,
    validate_power,
)
from gevrey_nls.core.spectral import Field, boundary_mass_fraction

logger = logging.getLogger(__name__)


class IntegratorMethod(str, Enum):
    SPLITSTEP = "splitstep"
    PICARD = "picard"


@dataclass(frozen=True)
class DiagnosticsConfig:
    """What to record at each sampled step."""

    stride: int = 1
    sigma_values: Sequence[float] = ()
    estimate_radius: bool = False
    fit: Optional[RadiusFitConfig] = None

    def __post_init__(self) -> None:
        if self.stride < 1:
            raise ParameterError("stride must be >= 1")


@dataclass
class DiagnosticsRow:
    t: float
    mass: float
    energy: float
    a_sigma: Dict[float, float] = field(default_factory=dict)
    radius: Optional[RadiusFit] = None


@dataclass
class Trajectory:
    """Sampled (t, field) pairs with one diagnostics row per sample."""

    times: List[float] = field(default_factory=list)
    fields: List[Field] = field(default_factory=list)
    rows: List[DiagnosticsRow] = field(default_factory=list)

    @property
    def final(self) -> Field:
        return self.fields[-1]

    def max_drift(self, attribute: str) -> float:
        values = [getattr(row, attribute) for row in self.rows]
        return max(abs(value - values[0]) for value in values)

    def a_sigma_series(self, sigma: float) -> List[float]:
        return [row.a_sigma[sigma] for row in self.rows]


def _diagnose(t: float, u: Field, p: int, cfg: DiagnosticsConfig) -> DiagnosticsRow:
    row = DiagnosticsRow(t=t, mass=mass(u), energy=energy(u, p))
    for sigma in cfg.sigma_values:
        row.a_sigma[sigma] = almost_conserved_quantity(u, sigma, p)
    if cfg.estimate_radius and not u.is_zero():
        row.radius = estimate_radius(u, cfg.fit)
    return row


def evolve(
    field: Field,
    T: float,
    dt: float,
    p: int,
    method: IntegratorMethod | str = IntegratorMethod.SPLITSTEP,
    diagnostics_config: Optional[DiagnosticsConfig] = None,
    picard: Optional[PicardParams] = None,
) -> Trajectory:
    """
    Evolve ``field`` to time T and sample it every ``stride`` steps.

    The step count is round(T/dt) and the step is shrunk to T/steps so the
    final sample lands exactly on T. The last step is always sampled.
    """
    if T < 0:
        raise ParameterError(f"T must be >= 0, got {T}")
    if not dt > 0:
        raise ParameterError(f"dt must be positive, got {dt}")
    p = validate_power(p)
    method = IntegratorMethod(method)
    cfg = diagnostics_config or DiagnosticsConfig()
    picard = picard or PicardParams()

    trajectory = Trajectory()
    leak_reported = False

    def record(t: float, u: Field) -> None:
        nonlocal leak_reported
        trajectory.times.append(t)
        trajectory.fields.append(u)
        trajectory.rows.append(_diagnose(t, u, p, cfg))
        if not leak_reported:
            leak = boundary_mass_fraction(u)
            if leak > runtime.NUMERICS.boundary_leak_tol:
                logger.warning(
                    "%.2e of the mass sits within box_len/4 of the boundary at t=%.4g; "
                    "enlarge box_len for localized data",
                    leak,
                    t,
                )
                leak_reported = True

    record(0.0, field)
    if T == 0:
        return trajectory

    steps = max(1, int(round(T / dt)))
    step_dt = T / steps
    if abs(step_dt - dt) > 1e-12 * dt:
        logger.info("adjusted dt from %.6g to %.6g to land on T=%.6g", dt, step_dt, T)

    u = field
    for index in range(1, steps + 1):
        if method is IntegratorMethod.SPLITSTEP:
            u = step_splitstep(u, step_dt, p)
        else:
            u = step_duhamel_picard(u, step_dt, p, picard)
        if index % cfg.stride == 0 or index == steps:
            record(index * step_dt, u)

    logger.debug("evolved %d %s steps to T=%.6g", steps, method.value, T)
    return trajectory


__all__ = [
    "IntegratorMethod",
    "DiagnosticsConfig",
    "DiagnosticsRow",
    "Trajectory",
    "evolve",
]
