"""
Periodic-grid fields, Fourier multipliers and the Gevrey-Sobolev / Lebesgue norms.

Spectra use the Fourier-series convention

    c_k = L^{-d} ∫ f(x) e^{-i ξ_k·x} dx,   ξ_k = 2πk / L,

on the box [-L/2, L/2)^d, so that ‖f‖²_{L²} = L^d Σ_k |c_k|² and a plane wave
e^{ix} on a 2π box has c_1 = 1 exactly. The grid starts at -L/2, which puts a
(-1)^k phase between c_k and the raw FFT output.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from typing import Callable, Tuple

import numpy as np
from scipy import fft as sp_fft

from gevrey_nls.config import runtime
from gevrey_nls.core.errors import FieldError, GridError, OverflowGuardError, ParameterError

logger = logging.getLogger(__name__)


def _is_power_of_two(value: int) -> bool:
    return value > 0 and (value & (value - 1)) == 0


@lru_cache(maxsize=64)
def integer_modes(n: int) -> np.ndarray:
    """Integer wavevector indices in FFT order, covering [-n/2, n/2)."""
    modes = np.rint(sp_fft.fftfreq(n) * n).astype(np.int64)
    modes.setflags(write=False)
    return modes


@lru_cache(maxsize=64)
def _phase_nd(n: int, dim: int) -> np.ndarray:
    axis_phase = np.where(integer_modes(n) % 2 == 0, 1.0, -1.0)
    phase = axis_phase
    for _ in range(dim - 1):
        phase = np.multiply.outer(phase, axis_phase)
    phase.setflags(write=False)
    return phase


def _spatial_axes(dim: int) -> Tuple[int, ...]:
    return tuple(range(-dim, 0))


def values_to_spectrum(values: np.ndarray, dim: int) -> np.ndarray:
    """
    Forward transform over the trailing ``dim`` axes.

    Leading axes are treated as a batch, which lets the Picard stepper and the
    space-time fields transform many slices at once.
    """
    n = values.shape[-1]
    coeffs = sp_fft.fftn(values, axes=_spatial_axes(dim), workers=runtime.NUMERICS.fft_workers)
    return coeffs * (_phase_nd(n, dim) / float(n) ** dim)


def spectrum_to_values(coeffs: np.ndarray, dim: int) -> np.ndarray:
    """Inverse of :func:`values_to_spectrum`."""
    n = coeffs.shape[-1]
    scaled = coeffs * (_phase_nd(n, dim) * float(n) ** dim)
    return sp_fft.ifftn(scaled, axes=_spatial_axes(dim), workers=runtime.NUMERICS.fft_workers)


def _embedding_index(n: int, big_n: int, dim: int) -> tuple:
    idx = integer_modes(n) % big_n
    if dim == 1:
        return (Ellipsis, idx)
    return (Ellipsis, *np.ix_(*([idx] * dim)))


def pad_spectrum(coeffs: np.ndarray, dim: int, big_n: int) -> np.ndarray:
    """Embed an n-point spectrum into a big_n-point one (same box, zero high modes)."""
    n = coeffs.shape[-1]
    if big_n < n:
        raise GridError(f"Cannot pad {n} modes into {big_n}")
    out = np.zeros(coeffs.shape[:-dim] + (big_n,) * dim, dtype=np.complex128)
    out[_embedding_index(n, big_n, dim)] = coeffs
    return out


def truncate_spectrum(coeffs: np.ndarray, dim: int, n: int) -> np.ndarray:
    """Keep the modes k ∈ [-n/2, n/2)^d of a larger spectrum."""
    big_n = coeffs.shape[-1]
    return np.array(coeffs[_embedding_index(n, big_n, dim)], dtype=np.complex128)


@dataclass(frozen=True)
class GridSpec:
    """Uniform periodic grid on [-box_len/2, box_len/2)^dim."""

    dim: int
    n: int
    box_len: float

    def __post_init__(self) -> None:
        if self.dim not in (1, 2):
            raise GridError(f"Invalid dimension {self.dim}; expected 1 or 2")
        if not isinstance(self.n, (int, np.integer)) or not _is_power_of_two(int(self.n)) or self.n < 8:
            raise GridError(f"Grid size {self.n} must be a power of two >= 8")
        if not (self.box_len > 0 and math.isfinite(self.box_len)):
            raise GridError(f"Box length must be positive, got {self.box_len}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "box_len", float(self.box_len))

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.n,) * self.dim

    @property
    def spacing(self) -> float:
        return self.box_len / self.n

    @property
    def volume(self) -> float:
        return self.box_len**self.dim

    @property
    def cell(self) -> float:
        return self.spacing**self.dim

    def axis_points(self) -> np.ndarray:
        return -0.5 * self.box_len + self.spacing * np.arange(self.n)

    def coordinates(self) -> Tuple[np.ndarray, ...]:
        axis = self.axis_points()
        return tuple(np.meshgrid(*([axis] * self.dim), indexing="ij"))

    def axis_wavenumbers(self) -> np.ndarray:
        return 2.0 * np.pi * sp_fft.fftfreq(self.n, d=self.spacing)

    def with_size(self, n: int) -> "GridSpec":
        return GridSpec(self.dim, n, self.box_len)

    @cached_property
    def wavevectors(self) -> Tuple[np.ndarray, ...]:
        axis = self.axis_wavenumbers()
        return tuple(np.meshgrid(*([axis] * self.dim), indexing="ij"))

    @cached_property
    def xi_l1(self) -> np.ndarray:
        """‖ξ‖ = Σ_i |ξ_i|, the frequency norm defining the Gevrey strip."""
        return sum(np.abs(component) for component in self.wavevectors)

    @cached_property
    def xi_sq(self) -> np.ndarray:
        return sum(component**2 for component in self.wavevectors)

    @cached_property
    def bracket(self) -> np.ndarray:
        """⟨ξ⟩ = (1 + |ξ|²)^{1/2}."""
        return np.sqrt(1.0 + self.xi_sq)


def make_grid(dim: int, n: int, box_len: float) -> GridSpec:
    """Validate and build a grid specification."""
    return GridSpec(dim=dim, n=n, box_len=box_len)


@dataclass(frozen=True)
class GevreyParams:
    """Strip half-width σ and Sobolev index s of a G^{σ,s} weight."""

    sigma: float = 0.0
    s: float = 0.0

    def __post_init__(self) -> None:
        if not self.sigma >= 0:
            raise ParameterError(f"sigma must be >= 0, got {self.sigma}")


def check_overflow(sigma: float, grid: GridSpec) -> None:
    """Reject e^{σ‖ξ‖} beyond the configured overflow guard."""
    if sigma <= 0:
        return
    exponent = sigma * float(np.max(grid.xi_l1))
    if exponent > runtime.NUMERICS.log_guard:
        raise OverflowGuardError(
            f"e^(sigma*|xi|) reaches e^{exponent:.1f} for sigma={sigma} on n={grid.n}; "
            f"guard is {runtime.NUMERICS.overflow_guard:.0e}"
        )


def gevrey_weight(grid: GridSpec, sigma: float, s: float = 0.0) -> np.ndarray:
    """The symbol e^{σ‖ξ‖}⟨ξ⟩^s."""
    check_overflow(sigma, grid)
    weight = np.exp(sigma * grid.xi_l1) if sigma else np.ones(grid.shape)
    if s:
        weight = weight * grid.bracket**s
    return weight


@dataclass(frozen=True, eq=False)
class Field:
    """Immutable complex samples on a grid, with the spectrum computed on demand."""

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self) -> None:
        array = np.array(self.values, dtype=np.complex128)
        if array.shape != self.grid.shape:
            raise FieldError(f"Field shape {array.shape} does not match grid {self.grid.shape}")
        if not np.all(np.isfinite(array)):
            raise FieldError("Field contains non-finite values")
        array.setflags(write=False)
        object.__setattr__(self, "values", array)

    @cached_property
    def spectrum(self) -> np.ndarray:
        coeffs = values_to_spectrum(self.values, self.grid.dim)
        coeffs.setflags(write=False)
        return coeffs

    @classmethod
    def from_spectrum(cls, grid: GridSpec, coeffs: np.ndarray) -> "Field":
        coeffs = np.array(coeffs, dtype=np.complex128)
        if coeffs.shape != grid.shape:
            raise FieldError(f"Spectrum shape {coeffs.shape} does not match grid {grid.shape}")
        field = cls(grid, spectrum_to_values(coeffs, grid.dim))
        coeffs.setflags(write=False)
        field.__dict__["spectrum"] = coeffs
        return field

    @classmethod
    def from_function(cls, grid: GridSpec, func: Callable[..., np.ndarray]) -> "Field":
        values = np.broadcast_to(func(*grid.coordinates()), grid.shape)
        return cls(grid, values)

    @classmethod
    def zeros(cls, grid: GridSpec) -> "Field":
        return cls(grid, np.zeros(grid.shape, dtype=np.complex128))

    def scaled(self, factor: complex) -> "Field":
        return Field(self.grid, self.values * factor)

    def conj(self) -> "Field":
        return Field(self.grid, np.conj(self.values))

    def is_zero(self) -> bool:
        return not np.any(self.values)


def transform_roundtrip(field: Field) -> Field:
    """Forward then inverse transform; the identity up to roundoff."""
    dim = field.grid.dim
    return Field(field.grid, spectrum_to_values(values_to_spectrum(field.values, dim), dim))


class MultiplierKind(str, Enum):
    GEVREY_EXP = "gevrey_exp"
    BRACKET_POW = "bracket_pow"
    GRADIENT_COMPONENT = "gradient_component"
    LAPLACIAN = "laplacian"
    FREE_PROPAGATOR = "free_propagator"


@dataclass(frozen=True)
class MultiplierSpec:
    """A diagonal Fourier multiplier m(ξ)."""

    kind: MultiplierKind
    sigma: float = 0.0
    sign: int = 1
    s: float = 0.0
    axis: int = 0
    t: float = 0.0

    @classmethod
    def gevrey_exp(cls, sigma: float, sign: int = 1) -> "MultiplierSpec":
        if sign not in (1, -1):
            raise ParameterError(f"sign must be +1 or -1, got {sign}")
        if sigma < 0:
            raise ParameterError(f"sigma must be >= 0, got {sigma}")
        return cls(MultiplierKind.GEVREY_EXP, sigma=sigma, sign=sign)

    @classmethod
    def bracket_pow(cls, s: float) -> "MultiplierSpec":
        return cls(MultiplierKind.BRACKET_POW, s=s)

    @classmethod
    def gradient_component(cls, axis: int) -> "MultiplierSpec":
        return cls(MultiplierKind.GRADIENT_COMPONENT, axis=axis)

    @classmethod
    def laplacian(cls) -> "MultiplierSpec":
        return cls(MultiplierKind.LAPLACIAN)

    @classmethod
    def free_propagator(cls, t: float) -> "MultiplierSpec":
        return cls(MultiplierKind.FREE_PROPAGATOR, t=t)

    def symbol(self, grid: GridSpec) -> np.ndarray:
        if self.kind is MultiplierKind.GEVREY_EXP:
            if self.sign > 0:
                check_overflow(self.sigma, grid)
            return np.exp(self.sign * self.sigma * grid.xi_l1)
        if self.kind is MultiplierKind.BRACKET_POW:
            return grid.bracket**self.s
        if self.kind is MultiplierKind.GRADIENT_COMPONENT:
            if not 0 <= self.axis < grid.dim:
                raise ParameterError(f"axis {self.axis} outside a {grid.dim}-d grid")
            return 1j * grid.wavevectors[self.axis]
        if self.kind is MultiplierKind.LAPLACIAN:
            return -grid.xi_sq
        return free_symbol(grid, self.t)


@lru_cache(maxsize=32)
def free_symbol(grid: GridSpec, t: float) -> np.ndarray:
    """e^{-it|ξ|²}, the symbol of e^{itΔ}."""
    symbol = np.exp(-1j * t * grid.xi_sq)
    symbol.setflags(write=False)
    return symbol


def apply_multiplier(field: Field, m: MultiplierSpec) -> Field:
    return Field.from_spectrum(field.grid, field.spectrum * m.symbol(field.grid))


def gevrey_sobolev_norm(field: Field, gp: GevreyParams) -> float:
    """‖f‖_{G^{σ,s}} = L^{d/2} (Σ_k e^{2σ‖ξ_k‖}⟨ξ_k⟩^{2s}|c_k|²)^{1/2}."""
    weight = gevrey_weight(field.grid, gp.sigma, gp.s)
    return math.sqrt(field.grid.volume * float(np.sum(np.abs(weight * field.spectrum) ** 2)))


def lebesgue_power(field: Field, q: float) -> float:
    """Riemann sum (L/n)^d Σ_j |f(x_j)|^q, i.e. ‖f‖_{L^q}^q."""
    return field.grid.cell * float(np.sum(np.abs(field.values) ** q))


def lebesgue_norm(field: Field, q: float) -> float:
    if math.isinf(q):
        return float(np.max(np.abs(field.values)))
    if q < 1:
        raise ParameterError(f"Lebesgue exponent must be >= 1, got {q}")
    return lebesgue_power(field, q) ** (1.0 / q)


def boundary_mass_fraction(field: Field) -> float:
    """Share of the L² mass lying within box_len/4 of the box boundary."""
    grid = field.grid
    near = np.zeros(grid.shape, dtype=bool)
    for coordinate in grid.coordinates():
        near |= np.abs(coordinate) >= 0.25 * grid.box_len
    density = np.abs(field.values) ** 2
    total = float(np.sum(density))
    if total == 0.0:
        return 0.0
    return float(np.sum(density[near])) / total


__all__ = [
    "GridSpec",
    "GevreyParams",
    "Field",
    "MultiplierKind",
    "MultiplierSpec",
    "make_grid",
    "transform_roundtrip",
    "apply_multiplier",
    "gevrey_sobolev_norm",
    "gevrey_weight",
    "check_overflow",
    "lebesgue_norm",
    "lebesgue_power",
    "boundary_mass_fraction",
    "free_symbol",
    "integer_modes",
    "values_to_spectrum",
    "spectrum_to_values",
    "pad_spectrum",
    "truncate_spectrum",
]
