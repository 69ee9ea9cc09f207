"""
Space-time fields on a periodized slab and the Bourgain-type norms on them.

Space-time coefficients follow the spatial series convention in x and
a_j = m^{-1} Σ_l f(t_l) e^{-iτ_j t_l} in time, with t_l = l·t_len/m and
τ_j = 2πj/t_len, so that ‖f‖²_{L²_{t,x}} = t_len·L^d·Σ|ĉ|².
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Tuple

import numpy as np
from scipy import fft as sp_fft

from gevrey_nls.config import runtime
from gevrey_nls.core.errors import FieldError, GridError, ParameterError
from gevrey_nls.core.spectral import (
    Field,
    GevreyParams,
    GridSpec,
    gevrey_sobolev_norm,
    gevrey_weight,
    integer_modes,
    spectrum_to_values,
    values_to_spectrum,
)


@dataclass(frozen=True, eq=False)
class SpaceTimeField:
    """Samples u(t_l, x_j) on [0, t_len) × grid, time axis first."""

    grid: GridSpec
    m: int
    t_len: float
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.m < 2 or (self.m & (self.m - 1)) != 0:
            raise GridError(f"Time samples m={self.m} must be a power of two >= 2")
        if not self.t_len > 0:
            raise GridError(f"Slab length must be positive, got {self.t_len}")
        array = np.array(self.values, dtype=np.complex128)
        if array.shape != (self.m,) + self.grid.shape:
            raise FieldError(
                f"Space-time shape {array.shape} does not match {(self.m,) + self.grid.shape}"
            )
        if not np.all(np.isfinite(array)):
            raise FieldError("Space-time field contains non-finite values")
        array.setflags(write=False)
        object.__setattr__(self, "values", array)

    @property
    def dt(self) -> float:
        return self.t_len / self.m

    def times(self) -> np.ndarray:
        return self.dt * np.arange(self.m)

    def time_frequencies(self) -> np.ndarray:
        return 2.0 * np.pi * sp_fft.fftfreq(self.m, d=self.dt)

    @cached_property
    def spectrum(self) -> np.ndarray:
        in_time = sp_fft.fft(self.values, axis=0, workers=runtime.NUMERICS.fft_workers) / self.m
        coeffs = values_to_spectrum(in_time, self.grid.dim)
        coeffs.setflags(write=False)
        return coeffs

    @classmethod
    def from_spectrum(cls, grid: GridSpec, m: int, t_len: float, coeffs: np.ndarray) -> "SpaceTimeField":
        in_space = spectrum_to_values(np.asarray(coeffs, dtype=np.complex128), grid.dim)
        values = sp_fft.ifft(in_space, axis=0, workers=runtime.NUMERICS.fft_workers) * m
        return cls(grid, m, t_len, values)

    @classmethod
    def zeros(cls, grid: GridSpec, m: int, t_len: float) -> "SpaceTimeField":
        return cls(grid, m, t_len, np.zeros((m,) + grid.shape, dtype=np.complex128))

    def conj(self) -> "SpaceTimeField":
        return SpaceTimeField(self.grid, self.m, self.t_len, np.conj(self.values))

    def scaled(self, factor: complex) -> "SpaceTimeField":
        return SpaceTimeField(self.grid, self.m, self.t_len, self.values * factor)

    def time_slice(self, index: int) -> Field:
        return Field(self.grid, self.values[index])

    def with_spatial_multiplier(self, symbol: np.ndarray) -> "SpaceTimeField":
        return SpaceTimeField.from_spectrum(self.grid, self.m, self.t_len, self.spectrum * symbol)


@dataclass(frozen=True)
class BourgainParams:
    """Weight e^{σ‖ξ‖}⟨ξ⟩^s⟨τ + |ξ|²⟩^b."""

    sigma: float = 0.0
    s: float = 0.0
    b: float = 0.0

    def __post_init__(self) -> None:
        if not self.sigma >= 0:
            raise ParameterError(f"sigma must be >= 0, got {self.sigma}")
        if not abs(self.b) < 1:
            raise ParameterError(f"|b| must be < 1, got {self.b}")


def xsb_weight(f: SpaceTimeField, bp: BourgainParams) -> np.ndarray:
    spatial = gevrey_weight(f.grid, bp.sigma, bp.s)
    time_axes = (slice(None),) + (None,) * f.grid.dim
    tau = f.time_frequencies()[time_axes]
    modulation = np.sqrt(1.0 + (tau + f.grid.xi_sq[None]) ** 2) ** bp.b
    return spatial[None] * modulation


def xsb_norm(f: SpaceTimeField, bp: BourgainParams) -> float:
    """‖f‖_{X^{σ,s,b}} under the series convention."""
    weighted = xsb_weight(f, bp) * f.spectrum
    return math.sqrt(f.t_len * f.grid.volume * float(np.sum(np.abs(weighted) ** 2)))


def spacetime_l2(f: SpaceTimeField) -> float:
    return math.sqrt(f.dt * f.grid.cell * float(np.sum(np.abs(f.values) ** 2)))


def window(f: SpaceTimeField, a: float, c: float) -> SpaceTimeField:
    """Multiply by the indicator of a ≤ t < c."""
    if not (0.0 <= a < c <= f.t_len * (1 + 1e-12)):
        raise ParameterError(f"Window [{a}, {c}] must satisfy 0 <= a < c <= {f.t_len}")
    t = f.times()
    mask = ((t >= a) & (t < c)).astype(float)
    time_axes = (slice(None),) + (None,) * f.grid.dim
    return SpaceTimeField(f.grid, f.m, f.t_len, f.values * mask[time_axes])


def admissible_pair(q: float, r: float, d: int) -> bool:
    """2 ≤ q, r ≤ ∞, 2/q + d/r = d/2 and (q, r, d) ≠ (2, ∞, 2)."""
    if not (2 <= q <= math.inf and 2 <= r <= math.inf):
        return False
    if q == 2 and math.isinf(r) and d == 2:
        return False
    return abs(2.0 / q + d / r - d / 2.0) <= 1e-12


def mixed_lebesgue_norm(f: SpaceTimeField, q: float, r: float) -> float:
    """Riemann-sum L^r in space per slice, then L^q in time."""
    if q < 1 or r < 1:
        raise ParameterError("Lebesgue exponents must be >= 1")
    spatial_axes = tuple(range(1, 1 + f.grid.dim))
    magnitude = np.abs(f.values)
    if math.isinf(r):
        slices = np.max(magnitude, axis=spatial_axes)
    else:
        slices = (f.grid.cell * np.sum(magnitude**r, axis=spatial_axes)) ** (1.0 / r)
    if math.isinf(q):
        return float(np.max(slices))
    return float((f.dt * np.sum(slices**q)) ** (1.0 / q))


def trace_sup_norm(f: SpaceTimeField, sigma: float, s: float) -> float:
    """sup_t ‖f(t)‖_{G^{σ,s}} over the time samples."""
    params = GevreyParams(sigma, s)
    return max(gevrey_sobolev_norm(f.time_slice(index), params) for index in range(f.m))


def pad_spacetime(f: SpaceTimeField, factor: int) -> SpaceTimeField:
    """Re-sample f on a grid ``factor`` times finer in both t and x (exact for its interpolant)."""
    big_m = factor * f.m
    big_grid = f.grid.with_size(factor * f.grid.n)
    coeffs = np.zeros((big_m,) + big_grid.shape, dtype=np.complex128)
    time_index = integer_modes(f.m) % big_m
    space_index = integer_modes(f.grid.n) % big_grid.n
    if f.grid.dim == 1:
        coeffs[np.ix_(time_index, space_index)] = f.spectrum
    else:
        coeffs[np.ix_(time_index, space_index, space_index)] = f.spectrum
    return SpaceTimeField.from_spectrum(big_grid, big_m, f.t_len, coeffs)


def product_pad_factor(arity: int) -> int:
    """Smallest power of two ≥ arity; holds a degree-``arity`` product without aliasing."""
    factor = 1
    while factor < arity:
        factor *= 2
    return factor


def spacetime_product(
    inputs: Tuple[SpaceTimeField, ...], conj_flags: Tuple[bool, ...], factor: int
) -> SpaceTimeField:
    """∏ U_j with U_j = u_j or its conjugate, evaluated on the padded slab."""
    padded = [pad_spacetime(u, factor) for u in inputs]
    values = np.ones_like(padded[0].values)
    for u, flag in zip(padded, conj_flags):
        values = values * (np.conj(u.values) if flag else u.values)
    head = padded[0]
    return SpaceTimeField(head.grid, head.m, head.t_len, values)


__all__ = [
    "SpaceTimeField",
    "BourgainParams",
    "xsb_weight",
    "xsb_norm",
    "spacetime_l2",
    "window",
    "admissible_pair",
    "mixed_lebesgue_norm",
    "trace_sup_norm",
    "pad_spacetime",
    "product_pad_factor",
    "spacetime_product",
]
