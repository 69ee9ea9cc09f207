"""
Tests for A_sigma, the Gevrey commutator, the radius estimator and the
lifespan / schedule formulas.

Run with:
    python -m pytest tests/test_diagnostics.py -v
"""

import numpy as np
import pytest

from gevrey_nls.config import runtime
from gevrey_nls.core.diagnostics import (
    RadiusFitConfig,
    ScheduleParams,
    almost_conservation_bound,
    almost_conserved_quantity,
    commutator_sigma_slope,
    critical_indices,
    estimate_radius,
    fit_gagliardo_nirenberg_constant,
    gagliardo_nirenberg_bound,
    gevrey_commutator,
    induction_bound,
    lifespan,
    reduced_sigma,
    schedule_constraint,
    sigma_schedule,
)
from gevrey_nls.core.errors import DegenerateInputError, ParameterError
from gevrey_nls.core.solver import energy, mass
from gevrey_nls.core.spectral import Field, GevreyParams, GridSpec, gevrey_sobolev_norm
from gevrey_nls.tools.profiles import build_initial_data

SIGMAS = [1e-4, 1e-3, 1e-2]
UNIT = ScheduleParams(c0=1.0, C_p=1.0, eps=0.0)


@pytest.mark.parametrize(
    "p, d, expected",
    [(5, 1, (0.25, 0.0)), (3, 1, (0.0, -1.0)), (7, 1, (1 / 3, 0.2)), (5, 2, (0.75, 2 / 3))],
)
def test_critical_indices(p, d, expected):
    assert critical_indices(p, d) == pytest.approx(expected)


def test_critical_indices_reject_bad_dimension():
    with pytest.raises(ParameterError):
        critical_indices(5, 3)


def test_a_zero_is_mass_plus_energy(sech_field):
    value = almost_conserved_quantity(sech_field, 0.0, 5)
    assert value == pytest.approx(mass(sech_field) + energy(sech_field, 5), rel=1e-12)


def test_a_sigma_grows_with_sigma(sech_field):
    values = [almost_conserved_quantity(sech_field, sigma, 5) for sigma in (0.0, 0.1, 0.5)]
    assert values == sorted(values)
    with pytest.raises(ParameterError):
        almost_conserved_quantity(sech_field, -0.1, 5)


def test_commutator_vanishes_at_zero_sigma(sech_field):
    assert gevrey_commutator(sech_field, 0.0, 5).is_zero()


def test_commutator_slope_single_mode(plane_wave):
    assert commutator_sigma_slope(plane_wave, 5, SIGMAS) == pytest.approx(1.0, abs=0.01)


def test_commutator_slope_sech(sech_field):
    assert 0.9 <= commutator_sigma_slope(sech_field, 5, SIGMAS) <= 1.1


def test_commutator_slope_needs_two_decades(plane_wave):
    with pytest.raises(ParameterError):
        commutator_sigma_slope(plane_wave, 5, [1e-3, 1e-2])
    with pytest.raises(ParameterError):
        commutator_sigma_slope(plane_wave, 5, [1e-3, 2e-3, 5e-3])


def test_radius_of_constructed_spectrum():
    grid = GridSpec(dim=1, n=256, box_len=2 * np.pi)
    field = Field.from_spectrum(grid, np.exp(-0.3 * grid.xi_l1))
    fit = estimate_radius(field)
    assert not fit.saturated
    assert fit.sigma_est == pytest.approx(0.3, rel=1e-6)
    assert fit.band[0] >= 256 // 16


def test_radius_of_sech(sech_field):
    fit = estimate_radius(sech_field)
    assert not fit.saturated
    assert fit.sigma_est == pytest.approx(np.pi / 2, rel=0.05)


def test_gaussian_saturates():
    grid = GridSpec(dim=1, n=512, box_len=40.0)
    field = build_initial_data("gaussian", grid)
    assert np.allclose(field.values, np.exp(-0.5 * grid.axis_points() ** 2))
    fit = estimate_radius(field)
    assert fit.saturated
    assert fit.sigma_est == pytest.approx(10.0)


def test_radius_cap_override(plane_wave):
    fit = estimate_radius(plane_wave, RadiusFitConfig(sigma_max=2.0))
    assert fit.saturated
    assert fit.sigma_est == 2.0


def test_radius_of_zero_field(torus_grid):
    with pytest.raises(DegenerateInputError):
        estimate_radius(Field.zeros(torus_grid))


def test_lifespan_and_schedule_values():
    assert lifespan(1.0, 5, UNIT) == pytest.approx(2.0**-8)
    assert sigma_schedule(1.0, 1.0, 1.0, 5, UNIT) == pytest.approx(2.0**-7)


def test_schedule_decays_like_inverse_time():
    products = [T * sigma_schedule(T, 0.01, 2.0, 5, UNIT) for T in (1.0, 10.0, 100.0)]
    assert products == pytest.approx([products[0]] * 3, rel=1e-12)


def test_schedule_saturates_constraint():
    sigma = sigma_schedule(7.0, 0.01, 2.0, 5, UNIT)
    assert schedule_constraint(sigma, 7.0, 0.01, 2.0, 5, UNIT) == pytest.approx(1.0)


def test_schedule_edge_cases():
    with pytest.raises(DegenerateInputError):
        sigma_schedule(1.0, 1.0, 0.0, 5, UNIT)
    with pytest.raises(ParameterError):
        sigma_schedule(0.0, 1.0, 1.0, 5, UNIT)
    with pytest.raises(ParameterError):
        ScheduleParams(c0=0.0)


def test_conservation_and_induction_bounds():
    assert almost_conservation_bound(1.0, 0.1, 5, UNIT) == pytest.approx(1.2)
    assert induction_bound(1.0, 0.1, 3, 5, UNIT) == pytest.approx(20.2)


def test_reduced_sigma():
    assert reduced_sigma(0.5, 1.0) == 0.5
    assert reduced_sigma(0.5, 0.5) == 0.25
    with pytest.raises(ParameterError):
        reduced_sigma(-0.1, 1.0)


def _gn_fields():
    grid = GridSpec(dim=1, n=512, box_len=40.0)
    sech = build_initial_data("sech", grid)
    fields = [sech.scaled(amplitude) for amplitude in (0.1, 1.0, 3.0, 10.0)]
    fields += [build_initial_data(f"random_gevrey({sigma_star}, {seed})", grid)
               for sigma_star in (0.3, 0.5) for seed in range(3)]
    fields.append(build_initial_data("random_gevrey(0.5, 7)", grid).scaled(4.0))
    return fields


@pytest.mark.parametrize("index", range(11))
def test_frozen_gagliardo_nirenberg_constant_bounds_a0(index):
    """The default constant dominates A_{σ0}(u0) for analytic data of any size."""
    u0 = _gn_fields()[index]
    sigma0 = 0.1
    assert almost_conserved_quantity(u0, sigma0, 5) <= gagliardo_nirenberg_bound(u0, sigma0, 5)


def test_fitted_gagliardo_nirenberg_constant_sits_below_the_frozen_one():
    fitted = fit_gagliardo_nirenberg_constant(_gn_fields(), 0.1, 5)
    assert 0 < fitted < runtime.SCHEDULE_DEFAULTS.gn_constant
    # Equality is reached on the maximizing field.
    slack = [gagliardo_nirenberg_bound(u0, 0.1, 5, fitted) / almost_conserved_quantity(u0, 0.1, 5) - 1.0
             for u0 in _gn_fields()]
    assert min(slack) == pytest.approx(0.0, abs=1e-10)


def test_gagliardo_nirenberg_needs_nonzero_field(torus_grid):
    with pytest.raises(DegenerateInputError):
        fit_gagliardo_nirenberg_constant([Field.zeros(torus_grid)], 0.1, 5)


def test_commutator_of_single_mode_matches_closed_form(plane_wave):
    f = gevrey_commutator(plane_wave, 0.1, 5)
    shrink = 1.0 - np.exp(-0.4)
    assert np.allclose(f.values, -shrink * plane_wave.values, rtol=0, atol=1e-12)
    norm = gevrey_sobolev_norm(f, GevreyParams(0.0, 0.0))
    assert norm == pytest.approx(shrink * np.sqrt(2 * np.pi), rel=1e-12)
    assert norm == pytest.approx(0.82638, abs=1e-5)


def _cubic_coefficients(coeffs):
    """Coefficients of |v|²v by direct convolution over the listed modes."""
    out = {}
    for a, ca in coeffs.items():
        for b, cb in coeffs.items():
            for d, cd in coeffs.items():
                out[a + b - d] = out.get(a + b - d, 0.0) + ca * cb * np.conj(cd)
    return out


def test_commutator_of_two_modes_matches_direct_convolution(torus_grid):
    sigma = 0.05
    coeffs = {1: 1.0 + 0.0j, 2: 1.0 + 0.0j}
    spectrum = np.zeros(torus_grid.shape, dtype=np.complex128)
    for k, c in coeffs.items():
        spectrum[k] = c
    v = Field.from_spectrum(torus_grid, spectrum)

    direct = _cubic_coefficients(coeffs)
    lowered = _cubic_coefficients({k: c * np.exp(-sigma * abs(k)) for k, c in coeffs.items()})
    expected = np.zeros(torus_grid.shape, dtype=np.complex128)
    for k in set(direct) | set(lowered):
        expected[k % torus_grid.n] = np.exp(sigma * abs(k)) * lowered.get(k, 0.0) - direct.get(k, 0.0)

    f = gevrey_commutator(v, sigma, 3)
    assert np.abs(f.spectrum - expected).max() <= 1e-10
