"""
Analyticity diagnostics: the almost conserved quantity A_σ, the Gevrey
commutator f(v), the spectrum-decay radius estimator, and the closed-form
lifespan and σ-schedule.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from gevrey_nls.config import runtime
from gevrey_nls.core.errors import DegenerateInputError, ParameterError
from gevrey_nls.core.solver import _nonlinear_spectrum, validate_power
from gevrey_nls.core.spectral import (
    Field,
    GevreyParams,
    check_overflow,
    gevrey_sobolev_norm,
    gevrey_weight,
    integer_modes,
    lebesgue_power,
)

logger = logging.getLogger(__name__)


def critical_indices(p: int, d: int) -> Tuple[float, float]:
    """
    Regularity indices (s0, s1) of the multilinear estimates.

    d = 1: s0 = (p-3)/(2(p-1)), s1 = (p-5)/(2(p-2))
    d = 2: s0 = (p-2)/(p-1),    s1 = (p-3)/(p-2)
    """
    p = validate_power(p)
    if d == 1:
        s0 = Fraction(p - 3, 2 * (p - 1))
        s1 = Fraction(p - 5, 2 * (p - 2))
    elif d == 2:
        s0 = Fraction(p - 2, p - 1)
        s1 = Fraction(p - 3, p - 2)
    else:
        raise ParameterError(f"Dimension must be 1 or 2, got {d}")
    assert s1 <= s0 <= 1
    return float(s0), float(s1)


def almost_conserved_quantity(field: Field, sigma: float, p: int) -> float:
    """A_σ = ‖u‖²_{G^{σ,1}} + 2/(p+1)·‖e^{σ‖D‖}u‖^{p+1}_{L^{p+1}}."""
    p = validate_power(p)
    if sigma < 0:
        raise ParameterError(f"sigma must be >= 0, got {sigma}")
    grid = field.grid
    if sigma == 0:
        lifted = field
    else:
        lifted = Field.from_spectrum(grid, field.spectrum * gevrey_weight(grid, sigma))
    weighted = gevrey_weight(grid, 0.0, 1.0) * lifted.spectrum
    sobolev_sq = grid.volume * float(np.sum(np.abs(weighted) ** 2))
    return sobolev_sq + 2.0 / (p + 1) * lebesgue_power(lifted, p + 1)


def gevrey_commutator(v: Field, sigma: float, p: int) -> Field:
    """f(v) = -{|v|^{p-1}v - e^{σ‖D‖}(|e^{-σ‖D‖}v|^{p-1} e^{-σ‖D‖}v)}."""
    p = validate_power(p)
    grid = v.grid
    if sigma == 0:
        return Field.zeros(grid)
    check_overflow(sigma, grid)
    direct = _nonlinear_spectrum(v.spectrum, grid, p)
    lowered = v.spectrum * np.exp(-sigma * grid.xi_l1)
    conjugated = _nonlinear_spectrum(lowered, grid, p) * np.exp(sigma * grid.xi_l1)
    return Field.from_spectrum(grid, conjugated - direct)


def commutator_sigma_slope(v: Field, p: int, sigma_list: Sequence[float]) -> float:
    """Least-squares slope of log‖f(v)‖_{L²} against log σ."""
    sigmas = np.asarray(sorted(sigma_list), dtype=float)
    if sigmas.size < 3 or sigmas[0] <= 0 or sigmas[-1] / sigmas[0] < 100.0 * (1 - 1e-12):
        raise ParameterError("sigma_list needs >= 3 positive values spanning >= 2 decades")
    norms = np.array(
        [gevrey_sobolev_norm(gevrey_commutator(v, float(s), p), GevreyParams()) for s in sigmas]
    )
    if np.any(norms <= 0):
        raise DegenerateInputError("Commutator vanishes; the slope is undefined for this field")
    slope, _ = np.polyfit(np.log(sigmas), np.log(norms), 1)
    return float(slope)


@dataclass(frozen=True)
class RadiusFitConfig:
    """Band selection for the spectrum-decay fit."""

    noise_floor: float = field(default_factory=lambda: runtime.NUMERICS.noise_floor)
    low_mode_divisor: int = 16
    min_points: int = 4
    sigma_max: Optional[float] = None
    curvature_tol: float = field(default_factory=lambda: runtime.NUMERICS.curvature_tol)


@dataclass(frozen=True)
class RadiusFit:
    sigma_est: float
    band: Tuple[int, int]
    residual: float
    saturated: bool


def _decay_slope(xi: np.ndarray, log_mag: np.ndarray) -> Tuple[float, float]:
    slope, intercept = np.polyfit(xi, log_mag, 1)
    residual = float(np.sqrt(np.mean((log_mag - (slope * xi + intercept)) ** 2)))
    return -float(slope), residual


def _fit_axis(
    magnitudes: np.ndarray,
    modes: np.ndarray,
    xi: np.ndarray,
    floor: float,
    k_min: int,
    cap: float,
    cfg: RadiusFitConfig,
) -> RadiusFit:
    usable = (np.abs(modes) >= k_min) & (magnitudes > floor)
    k_max = int(np.max(np.abs(modes)))
    if np.count_nonzero(usable) < cfg.min_points:
        return RadiusFit(cap, (k_min, k_max), 0.0, True)

    used_modes = np.abs(modes[usable])
    band = (int(used_modes.min()), int(used_modes.max()))
    if band[0] == band[1]:
        return RadiusFit(cap, (k_min, k_max), 0.0, True)
    x = np.abs(xi[usable])
    y = np.log(magnitudes[usable])
    sigma, residual = _decay_slope(x, y)

    # Super-exponential decay shows up as a slope that steepens across the band.
    distinct = np.unique(used_modes)
    if distinct.size >= 4:
        split = distinct[distinct.size // 2]
        lower, upper = used_modes < split, used_modes >= split
        lower_sigma, _ = _decay_slope(x[lower], y[lower])
        upper_sigma, _ = _decay_slope(x[upper], y[upper])
        if lower_sigma > 0 and upper_sigma > (1.0 + cfg.curvature_tol) * lower_sigma:
            logger.debug("decay steepens from %.4g to %.4g; flagging saturated", lower_sigma, upper_sigma)
            return RadiusFit(cap, band, residual, True)

    if sigma >= cap:
        return RadiusFit(cap, band, residual, True)
    return RadiusFit(max(sigma, 0.0), band, residual, False)


def estimate_radius(field: Field, fit_config: Optional[RadiusFitConfig] = None) -> RadiusFit:
    """
    Read the strip half-width off the exponential decay of |c_k|.

    Fits log|c_k| against -‖ξ_k‖ over modes above the noise floor, skipping the
    lowest octave (|k| < n/16). In two dimensions each axis direction is fitted
    and the smallest rate wins.

    Raises:
        DegenerateInputError: for the all-zero field.
    """
    cfg = fit_config or RadiusFitConfig()
    grid = field.grid
    magnitudes = np.abs(field.spectrum)
    peak = float(np.max(magnitudes))
    if peak == 0.0:
        raise DegenerateInputError("Cannot estimate the radius of the zero field")

    cap = cfg.sigma_max if cfg.sigma_max is not None else grid.box_len / 4.0
    floor = cfg.noise_floor * peak
    k_min = max(1, grid.n // cfg.low_mode_divisor)
    modes = integer_modes(grid.n)
    xi = grid.axis_wavenumbers()

    fits = []
    for axis in range(grid.dim):
        index = [0] * grid.dim
        index[axis] = slice(None)
        fits.append(_fit_axis(magnitudes[tuple(index)], modes, xi, floor, k_min, cap, cfg))
    best = min(fits, key=lambda fit: fit.sigma_est)
    if best.saturated:
        logger.debug("radius fit saturated at cap %.4g", cap)
    return best


@dataclass(frozen=True)
class ScheduleParams:
    """Constants of the lifespan and σ-schedule formulas."""

    c0: float = field(default_factory=lambda: runtime.SCHEDULE_DEFAULTS.c0)
    C_p: float = field(default_factory=lambda: runtime.SCHEDULE_DEFAULTS.C_p)
    eps: float = field(default_factory=lambda: runtime.SCHEDULE_DEFAULTS.eps)

    def __post_init__(self) -> None:
        if not self.c0 > 0 or not self.C_p > 0:
            raise ParameterError("c0 and C_p must be positive")
        if self.eps < 0:
            raise ParameterError("eps must be >= 0")


def lifespan(norm_u0: float, p: int, sp: Optional[ScheduleParams] = None) -> float:
    """δ = c0 (1 + ‖u0‖)^{-(2(p-1) - eps)}."""
    p = validate_power(p)
    sp = sp or ScheduleParams()
    if norm_u0 < 0:
        raise ParameterError("norm_u0 must be >= 0")
    return sp.c0 * (1.0 + norm_u0) ** (-(2.0 * (p - 1) - sp.eps))


def _growth_factor(A0: float, p: int) -> float:
    half_power = A0 ** ((p - 1) / 2)
    return half_power * (1.0 + half_power)


def sigma_schedule(
    T: float, delta: float, A0: float, p: int, sp: Optional[ScheduleParams] = None
) -> float:
    """σ(T) = δ / (2^{p+1} C_p A0^{(p-1)/2}(1 + A0^{(p-1)/2})) · 1/T."""
    p = validate_power(p)
    sp = sp or ScheduleParams()
    if not T > 0 or not delta > 0:
        raise ParameterError("T and delta must be positive")
    if A0 < 0:
        raise ParameterError("A0 must be >= 0")
    if A0 == 0:
        raise DegenerateInputError("A0 = 0: zero data is analytic for all time; no schedule")
    constant = delta / (2.0 ** (p + 1) * sp.C_p * _growth_factor(A0, p))
    return constant / T


def schedule_constraint(
    sigma: float, T: float, delta: float, A0: float, p: int, sp: Optional[ScheduleParams] = None
) -> float:
    """Left side of 2^{p+1}(T/δ) C_p σ A0^{(p-1)/2}(1 + A0^{(p-1)/2}) ≤ 1."""
    sp = sp or ScheduleParams()
    return 2.0 ** (p + 1) * (T / delta) * sp.C_p * sigma * _growth_factor(A0, p)


def almost_conservation_bound(
    A0: float, sigma: float, p: int, sp: Optional[ScheduleParams] = None
) -> float:
    """A0 + C_p σ A0^{(p+1)/2}(1 + A0^{(p-1)/2}), the bound on sup_{[0,δ]} A_σ."""
    sp = sp or ScheduleParams()
    return A0 + sp.C_p * sigma * A0 ** ((p + 1) / 2) * (1.0 + A0 ** ((p - 1) / 2))


def induction_bound(
    A0: float, sigma: float, k: int, p: int, sp: Optional[ScheduleParams] = None
) -> float:
    """Bound on sup_{[0,kδ]} A_σ after k local steps, valid while A_σ ≤ 2A0."""
    sp = sp or ScheduleParams()
    return A0 + 2.0**p * sp.C_p * sigma * k * A0 ** ((p + 1) / 2) * (1.0 + A0 ** ((p - 1) / 2))


def reduced_sigma(sigma0: float, s: float) -> float:
    """
    Working strip width for data in G^{σ0,s}.

    Data with s ≥ 1 is already in G^{σ0,1}; otherwise G^{σ0,s} ⊂ G^{σ0/2,1}.
    """
    if sigma0 < 0:
        raise ParameterError("sigma0 must be >= 0")
    return sigma0 if s >= 1 else 0.5 * sigma0


def _interpolation_factors(field: Field, sigma0: float, p: int) -> Tuple[float, float, float]:
    grid = field.grid
    alpha = grid.dim * (p - 1) / (2.0 * (p + 1))
    lifted = field.spectrum * gevrey_weight(grid, sigma0)
    grad = math.sqrt(grid.volume * float(np.sum(grid.xi_sq * np.abs(lifted) ** 2)))
    l2 = math.sqrt(grid.volume * float(np.sum(np.abs(lifted) ** 2)))
    interpolation = grad ** (alpha * (p + 1)) * l2 ** ((1.0 - alpha) * (p + 1))
    potential = 2.0 / (p + 1) * lebesgue_power(Field.from_spectrum(grid, lifted), p + 1)
    return interpolation, potential, alpha


def gagliardo_nirenberg_bound(
    field: Field, sigma0: float, p: int, constant: Optional[float] = None
) -> float:
    """‖u0‖²_{G^{σ0,1}} + C‖∇v‖^{α(p+1)}‖v‖^{(1-α)(p+1)}, v = e^{σ0‖D‖}u0."""
    p = validate_power(p)
    constant = runtime.SCHEDULE_DEFAULTS.gn_constant if constant is None else constant
    interpolation, _, _ = _interpolation_factors(field, sigma0, p)
    sobolev = gevrey_sobolev_norm(field, GevreyParams(sigma0, 1.0)) ** 2
    return sobolev + constant * interpolation


def fit_gagliardo_nirenberg_constant(fields: Iterable[Field], sigma0: float, p: int) -> float:
    """Largest ratio potential / interpolation over the given fields."""
    p = validate_power(p)
    ratios = []
    for candidate in fields:
        interpolation, potential, _ = _interpolation_factors(candidate, sigma0, p)
        if interpolation > 0:
            ratios.append(potential / interpolation)
    if not ratios:
        raise DegenerateInputError("No field with a nonzero interpolation factor")
    return max(ratios)


__all__ = [
    "critical_indices",
    "almost_conserved_quantity",
    "gevrey_commutator",
    "commutator_sigma_slope",
    "RadiusFitConfig",
    "RadiusFit",
    "estimate_radius",
    "ScheduleParams",
    "lifespan",
    "sigma_schedule",
    "schedule_constraint",
    "almost_conservation_bound",
    "induction_bound",
    "reduced_sigma",
    "gagliardo_nirenberg_bound",
    "fit_gagliardo_nirenberg_constant",
]
