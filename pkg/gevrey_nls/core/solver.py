"""
Steppers for the defocusing equation iu_t + Δu = |u|^{p-1}u and its invariants.

Two integrators are provided: a Strang split-step Fourier method and a
Duhamel/Picard fixed-point stepper that mirrors the local existence argument.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import List

import numpy as np
from scipy.integrate import cumulative_trapezoid

from gevrey_nls.config import runtime
from gevrey_nls.core.errors import ContractionError, InstabilityError, ParameterError
from gevrey_nls.core.spectral import (
    Field,
    GevreyParams,
    GridSpec,
    free_symbol,
    gevrey_sobolev_norm,
    lebesgue_power,
    pad_spectrum,
    spectrum_to_values,
    truncate_spectrum,
    values_to_spectrum,
)

logger = logging.getLogger(__name__)


def validate_power(p: int) -> int:
    if isinstance(p, bool) or int(p) != p or p < 3 or int(p) % 2 == 0:
        raise ParameterError(f"Nonlinearity power must be an odd integer >= 3, got {p}")
    return int(p)


@dataclass(frozen=True)
class NlsParams:
    """Power of the defocusing nonlinearity |u|^{p-1}u."""

    p: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", validate_power(self.p))

    @property
    def pad_factor(self) -> int:
        return math.ceil((self.p + 1) / 2)


@dataclass(frozen=True)
class PicardParams:
    """Controls for the Duhamel/Picard stepper."""

    max_iter: int = field(default_factory=lambda: runtime.PICARD_DEFAULTS.max_iter)
    tol: float = field(default_factory=lambda: runtime.PICARD_DEFAULTS.tol)
    quad_points: int = field(default_factory=lambda: runtime.PICARD_DEFAULTS.quad_points)
    b: float = field(default_factory=lambda: runtime.PICARD_DEFAULTS.b)
    b_prime: float = field(default_factory=lambda: runtime.PICARD_DEFAULTS.b_prime)
    c0: float = field(default_factory=lambda: runtime.PICARD_DEFAULTS.c0)
    eps: float = field(default_factory=lambda: runtime.PICARD_DEFAULTS.eps)
    enforce_threshold: bool = False

    def __post_init__(self) -> None:
        if self.max_iter < 1:
            raise ParameterError("max_iter must be >= 1")
        if not self.tol > 0:
            raise ParameterError("tol must be positive")
        if self.quad_points < 2:
            raise ParameterError("quad_points must be >= 2")
        if not 0.5 < self.b < self.b_prime < 1.0:
            raise ParameterError(
                f"Require 1/2 < b < b' < 1, got b={self.b}, b'={self.b_prime}"
            )
        if not self.c0 > 0:
            raise ParameterError("c0 must be positive")


@dataclass
class PicardOutcome:
    """Fixed point of one Picard step with its residual history."""

    field: Field
    residuals: List[float]

    @property
    def iterations(self) -> int:
        return len(self.residuals)

    def contraction_ratios(self) -> List[float]:
        pairs = zip(self.residuals, self.residuals[1:])
        return [later / earlier for earlier, later in pairs if earlier > 0]


def _nonlinear_spectrum(coeffs: np.ndarray, grid: GridSpec, p: int) -> np.ndarray:
    """Spectrum of |u|^{p-1}u, dealiased on a grid padded by ceil((p+1)/2)."""
    dim = grid.dim
    big_n = NlsParams(p).pad_factor * grid.n
    values = spectrum_to_values(pad_spectrum(coeffs, dim, big_n), dim)
    product = np.abs(values) ** (p - 1) * values
    return truncate_spectrum(values_to_spectrum(product, dim), dim, grid.n)


def nonlinearity(field: Field, p: int) -> Field:
    p = validate_power(p)
    return Field.from_spectrum(field.grid, _nonlinear_spectrum(field.spectrum, field.grid, p))


def mass(field: Field) -> float:
    """M(u) = ‖u‖²_{L²}."""
    return field.grid.volume * float(np.sum(np.abs(field.spectrum) ** 2))


def gradient_energy(field: Field) -> float:
    """‖∇u‖²_{L²}, computed spectrally."""
    return field.grid.volume * float(np.sum(field.grid.xi_sq * np.abs(field.spectrum) ** 2))


def energy(field: Field, p: int) -> float:
    """E(u) = ‖∇u‖²_{L²} + 2/(p+1)·‖u‖^{p+1}_{L^{p+1}}."""
    p = validate_power(p)
    return gradient_energy(field) + 2.0 / (p + 1) * lebesgue_power(field, p + 1)


def _require_finite(values: np.ndarray, what: str) -> None:
    if not np.all(np.isfinite(values)):
        raise InstabilityError(f"{what} produced non-finite values; reduce dt")


def _nonlinear_phase(values: np.ndarray, p: int, dt: float) -> np.ndarray:
    return values * np.exp(-1j * np.abs(values) ** (p - 1) * dt)


def step_splitstep(field: Field, dt: float, p: int) -> Field:
    """One Strang step: half nonlinear phase, free flow, half nonlinear phase."""
    if not dt > 0:
        raise ParameterError(f"dt must be positive, got {dt}")
    p = validate_power(p)
    grid = field.grid
    values = _nonlinear_phase(field.values, p, 0.5 * dt)
    coeffs = values_to_spectrum(values, grid.dim) * free_symbol(grid, dt)
    values = _nonlinear_phase(spectrum_to_values(coeffs, grid.dim), p, 0.5 * dt)
    _require_finite(values, "split-step")
    return Field(grid, values)


def _h1_norm(coeffs: np.ndarray, grid: GridSpec) -> np.ndarray:
    """G^{0,1} norm over the trailing spatial axes (batched)."""
    axes = tuple(range(-grid.dim, 0))
    weighted = (1.0 + grid.xi_sq) * np.abs(coeffs) ** 2
    return np.sqrt(grid.volume * np.sum(weighted, axis=axes))


def contraction_threshold(field: Field, p: int, pp: PicardParams) -> float:
    """dt_max = c0 (1 + ‖u0‖_{G^{0,1}})^{-(2(p-1) - eps)}."""
    p = validate_power(p)
    norm = gevrey_sobolev_norm(field, GevreyParams(0.0, 1.0))
    return pp.c0 * (1.0 + norm) ** (-(2 * (p - 1) - pp.eps))


def picard_iterate(field: Field, dt: float, p: int, pp: PicardParams | None = None) -> PicardOutcome:
    """
    Solve the Duhamel equation on [0, dt] by Picard iteration.

    Iterates are stored at ``quad_points`` equispaced nodes; the Duhamel
    integral is a cumulative trapezoid in the interaction picture, so every
    node of the next iterate is available at once.

    Raises:
        ContractionError: if the iteration does not settle within ``max_iter``,
            or if ``enforce_threshold`` is set and dt exceeds the threshold.
    """
    if not dt > 0:
        raise ParameterError(f"dt must be positive, got {dt}")
    p = validate_power(p)
    pp = pp or PicardParams()
    grid = field.grid

    threshold = contraction_threshold(field, p, pp)
    if dt > threshold:
        if pp.enforce_threshold:
            raise ContractionError(f"dt={dt} exceeds contraction threshold {threshold:.3e}")
        logger.debug("dt=%s above contraction threshold %.3e", dt, threshold)

    nodes = np.linspace(0.0, dt, pp.quad_points)
    node_axes = (slice(None),) + (None,) * grid.dim
    propagator = np.exp(-1j * nodes[node_axes] * grid.xi_sq)
    free = propagator * field.spectrum
    current = free
    residuals: List[float] = []

    for _ in range(pp.max_iter):
        forcing = _nonlinear_spectrum(current, grid, p)
        integral = cumulative_trapezoid(np.conj(propagator) * forcing, nodes, axis=0, initial=0)
        updated = free - 1j * propagator * integral
        if not np.all(np.isfinite(updated)):
            raise ContractionError("Picard iterates diverged; reduce dt")
        residual = float(np.max(_h1_norm(updated - current, grid)))
        residuals.append(residual)
        current = updated
        if residual <= pp.tol:
            return PicardOutcome(Field.from_spectrum(grid, current[-1]), residuals)

    raise ContractionError(
        f"Picard iteration did not converge in {pp.max_iter} iterations "
        f"(last residual {residuals[-1]:.3e}); dt={dt} is too large"
    )


def step_duhamel_picard(field: Field, dt: float, p: int, pp: PicardParams | None = None) -> Field:
    return picard_iterate(field, dt, p, pp).field


__all__ = [
    "NlsParams",
    "PicardParams",
    "PicardOutcome",
    "validate_power",
    "nonlinearity",
    "mass",
    "gradient_energy",
    "energy",
    "step_splitstep",
    "step_duhamel_picard",
    "picard_iterate",
    "contraction_threshold",
]
