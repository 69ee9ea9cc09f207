"""
Initial data profiles.

Profiles are named in config files as ``plane_wave``, ``sech``, ``gaussian``,
``zero`` or ``random_gevrey(sigma_star, seed)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from gevrey_nls.core.errors import ParameterError
from gevrey_nls.core.spectral import Field, GridSpec

_RANDOM_PATTERN = re.compile(
    r"^random_gevrey\(\s*(?P<sigma>[-+0-9.eE]+)\s*,\s*(?P<seed>[-+]?\d+)\s*\)$"
)


class ProfileKind(str, Enum):
    PLANE_WAVE = "plane_wave"
    SECH = "sech"
    GAUSSIAN = "gaussian"
    ZERO = "zero"
    RANDOM_GEVREY = "random_gevrey"


ANALYTIC_KINDS = frozenset({ProfileKind.SECH, ProfileKind.RANDOM_GEVREY})


@dataclass(frozen=True)
class DataProfile:
    kind: ProfileKind
    sigma_star: Optional[float] = None
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind is ProfileKind.RANDOM_GEVREY:
            if self.sigma_star is None or not self.sigma_star > 0:
                raise ParameterError("random_gevrey needs a positive sigma_star")
            if self.seed is None:
                raise ParameterError("random_gevrey needs a seed")

    @property
    def is_analytic(self) -> bool:
        """True for data with a finite, measurable strip of analyticity."""
        return self.kind in ANALYTIC_KINDS

    def label(self) -> str:
        if self.kind is ProfileKind.RANDOM_GEVREY:
            return f"random_gevrey({self.sigma_star!r}, {self.seed})"
        return self.kind.value


def parse_profile(text: str) -> DataProfile:
    """Parse a profile name; raises ParameterError for anything unknown."""
    raw = str(text).strip()
    match = _RANDOM_PATTERN.match(raw)
    if match:
        try:
            sigma_star = float(match.group("sigma"))
        except ValueError as exc:
            raise ParameterError(f"Invalid sigma_star in '{raw}'") from exc
        return DataProfile(ProfileKind.RANDOM_GEVREY, sigma_star, int(match.group("seed")))
    try:
        kind = ProfileKind(raw)
    except ValueError as exc:
        raise ParameterError(
            f"Unknown data profile '{raw}'; expected plane_wave, sech, gaussian, zero "
            "or random_gevrey(sigma_star, seed)"
        ) from exc
    if kind is ProfileKind.RANDOM_GEVREY:
        raise ParameterError("random_gevrey takes arguments: random_gevrey(sigma_star, seed)")
    return DataProfile(kind)


def _random_gevrey(grid: GridSpec, sigma_star: float, seed: int) -> Field:
    # Complex Gaussian coefficients with |c_k| ~ e^{-σ*‖ξ‖}⟨ξ⟩^{-1}, unit mass.
    rng = np.random.default_rng(seed)
    draws = rng.standard_normal((2,) + grid.shape)
    coeffs = (draws[0] + 1j * draws[1]) * np.exp(-sigma_star * grid.xi_l1) / grid.bracket
    total = grid.volume * float(np.sum(np.abs(coeffs) ** 2))
    return Field.from_spectrum(grid, coeffs / np.sqrt(total))


def build_initial_data(profile: DataProfile | str, grid: GridSpec) -> Field:
    """Sample u0 for ``profile`` on ``grid``."""
    if isinstance(profile, str):
        profile = parse_profile(profile)

    if profile.kind is ProfileKind.ZERO:
        return Field.zeros(grid)
    if profile.kind is ProfileKind.RANDOM_GEVREY:
        return _random_gevrey(grid, float(profile.sigma_star), int(profile.seed))

    coords = grid.coordinates()
    if profile.kind is ProfileKind.PLANE_WAVE:
        # Lowest nonzero mode along the first axis: e^{ix} on a 2π box.
        xi1 = 2.0 * np.pi / grid.box_len
        return Field(grid, np.exp(1j * xi1 * coords[0]))
    if profile.kind is ProfileKind.SECH:
        values = np.ones(grid.shape)
        for axis in coords:
            values = values / np.cosh(axis)
        return Field(grid, values)
    values = np.exp(-0.5 * sum(axis**2 for axis in coords))
    return Field(grid, values)


__all__ = [
    "ProfileKind",
    "DataProfile",
    "parse_profile",
    "build_initial_data",
]
