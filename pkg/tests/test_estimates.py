"""
Tests for the Monte-Carlo estimate harness and its seeded sampler.

Run with:
    python -m pytest tests/test_estimates.py -v
"""

import numpy as np
import pytest

from gevrey_nls.core.bourgain import BourgainParams, SpaceTimeField, xsb_norm
from gevrey_nls.core.diagnostics import critical_indices
from gevrey_nls.core.errors import EstimateError
from gevrey_nls.core.estimates import (
    ESTIMATES,
    EstimateDefinition,
    EstimateParams,
    EstimateReport,
    SamplerConfig,
    check_estimate,
    default_conj_pattern,
    evaluate_estimate,
    get_estimate,
    ladder_estimate,
    ladder_strichartz_pair,
    random_spacetime_field,
    resolve_conj_pattern,
    sample_inputs,
    time_samples_for,
    wave_packet_field,
)
from gevrey_nls.core.spectral import GridSpec, integer_modes

GRID = GridSpec(dim=1, n=16, box_len=2 * np.pi)
M = 16
T_LEN = np.pi / 2


def test_registry_lists_every_estimate():
    assert set(ESTIMATES) == {
        "strichartz_8_4",
        "strichartz_4_4",
        "l2_product",
        "x0minusb_product",
        "gevrey_product",
        "commutator_l2",
        "commutator_grad",
        "trace_embedding",
    }
    with pytest.raises(EstimateError):
        get_estimate("bilinear_refined")


def test_default_conj_pattern():
    assert default_conj_pattern(5) == (False, False, False, True, True)
    assert default_conj_pattern(1) == (False,)


def test_conj_pattern_must_match_arity():
    definition = get_estimate("l2_product")
    params = EstimateParams(p=5)
    with pytest.raises(EstimateError):
        resolve_conj_pattern(definition, params, [True, False])
    assert resolve_conj_pattern(definition, params, [True] * 5) == (True,) * 5


def test_params_validation():
    with pytest.raises(EstimateError):
        EstimateParams(b=0.5)


def test_evaluate_rejects_wrong_inputs():
    u = SpaceTimeField.zeros(GRID, M, T_LEN)
    with pytest.raises(EstimateError):
        evaluate_estimate("l2_product", [u])
    with pytest.raises(EstimateError):
        evaluate_estimate("strichartz_4_4", [u])


def test_zero_rhs_samples_are_excluded():
    zero = (SpaceTimeField.zeros(GRID, M, T_LEN),)
    live = sample_inputs("trace_embedding", GRID, M, T_LEN, seed=3)
    report = check_estimate("trace_embedding", [zero, live, zero])
    assert report.sample_count == 3
    assert report.excluded_zero_rhs == 2
    assert len(report.ratios) == 1
    with pytest.raises(EstimateError):
        check_estimate("trace_embedding", [zero, zero])


def test_samples_are_seeded():
    first = sample_inputs("l2_product", GRID, M, T_LEN, seed=11)
    again = sample_inputs("l2_product", GRID, M, T_LEN, seed=11)
    other = sample_inputs("l2_product", GRID, M, T_LEN, seed=12)
    assert len(first) == 5
    assert all(np.array_equal(a.values, b.values) for a, b in zip(first, again))
    assert not np.array_equal(first[0].values, other[0].values)


def test_sampler_is_band_limited():
    u = random_spacetime_field(GRID, M, T_LEN, np.random.default_rng(0), k_band=3)
    modes = np.abs(integer_modes(GRID.n))
    assert np.allclose(u.spectrum[:, modes > 3], 0.0, atol=1e-14)
    with pytest.raises(EstimateError):
        random_spacetime_field(GRID, M, T_LEN, np.random.default_rng(0), k_band=8)


def test_refined_sample_is_the_same_field():
    coarse = random_spacetime_field(GRID, M, T_LEN, np.random.default_rng(5), k_band=4)
    fine = random_spacetime_field(GRID.with_size(32), M, T_LEN, np.random.default_rng(5), k_band=4)
    assert np.allclose(fine.values[:, ::2], coarse.values, atol=1e-12)


def test_check_estimate_independent_of_workers():
    samples = [sample_inputs("strichartz_8_4", GRID, M, T_LEN, seed=i) for i in range(6)]
    serial = check_estimate("strichartz_8_4", samples)
    threaded = check_estimate("strichartz_8_4", samples, workers=3)
    assert serial.ratios == threaded.ratios
    assert serial.max_ratio >= serial.median_ratio > 0


def test_commutator_estimate_scales_with_sigma():
    sample = sample_inputs("commutator_l2", GRID, M, T_LEN, seed=1)
    small = evaluate_estimate("commutator_l2", sample, params=EstimateParams(sigma=1e-4))
    large = evaluate_estimate("commutator_l2", sample, params=EstimateParams(sigma=1e-3))
    assert small[0] > 0
    assert large[0] / small[0] == pytest.approx(10.0, rel=0.02)


def test_growth_factor():
    report = EstimateReport("x", 1, 0, [1.0], 1.5, 1.0, per_resolution={64: 1.5, 32: 1.0})
    assert report.growth_factor() == pytest.approx(1.5)
    single = EstimateReport("x", 1, 0, [1.0], 1.0, 1.0, per_resolution={32: 1.0})
    assert single.growth_factor() == 1.0


def test_trace_embedding_ladder_is_resolution_stable():
    report = ladder_estimate(
        "trace_embedding", EstimateParams(), box_len=2 * np.pi, resolutions=(16, 32),
        m=M, t_len=T_LEN, samples=4, seed=0,
    )
    assert sorted(report.per_resolution) == [16, 32]
    assert report.params["k_band"] == {16: 2, 32: 4}
    assert report.params["m"][16] >= M
    assert 0.5 < report.growth_factor() < 2.0


def test_ladder_band_follows_resolution():
    grid = GridSpec(dim=1, n=128, box_len=2 * np.pi)
    band = SamplerConfig().band_for(grid)
    assert band == 16
    m = time_samples_for(grid, band, T_LEN, tau_band=2)
    assert m == 256
    u = random_spacetime_field(grid, m, T_LEN, np.random.default_rng(0))
    modes = np.abs(integer_modes(grid.n))
    assert np.abs(u.spectrum[:, modes == 16]).max() > 0
    with pytest.raises(EstimateError, match="time samples"):
        random_spacetime_field(grid, 64, T_LEN, np.random.default_rng(0))


def test_ladder_flags_a_derivative_losing_estimate(monkeypatch):
    def lhs(inputs, conj, params):
        return xsb_norm(inputs[0], BourgainParams(s=2.0))

    def rhs(inputs, conj, params):
        return xsb_norm(inputs[0], BourgainParams(b=params.b))

    losing = EstimateDefinition("derivative_loss", "‖u‖_{X^{2,0}} ≤ C‖u‖_{X^{0,b}}", lambda params: 1, lhs, rhs)
    monkeypatch.setitem(ESTIMATES, "derivative_loss", losing)
    ladder = dict(box_len=2 * np.pi, resolutions=(32, 64), m=M, t_len=T_LEN, samples=20, seed=0)
    false_growth = ladder_estimate("derivative_loss", EstimateParams(), **ladder).growth_factor()
    true_growth = ladder_estimate("strichartz_8_4", EstimateParams(), **ladder).growth_factor()
    assert false_growth > 2.0
    assert true_growth < 1.5


def test_wave_packet_is_a_free_solution():
    grid = GridSpec(dim=1, n=64, box_len=2 * np.pi)
    m = time_samples_for(grid, 8, T_LEN, tau_band=2)
    packet = wave_packet_field(grid, m, T_LEN, band=8)
    assert np.abs(packet.values).max() == pytest.approx(np.abs(packet.values[m // 2]).max())
    # Half a slab away from focus the bump has cut the packet off.
    assert np.abs(packet.values[0]).max() == 0.0
    near = np.abs(packet.time_frequencies()[:, None] + grid.xi_sq[None]) <= 16
    energy = np.abs(packet.spectrum) ** 2
    assert np.sum(energy[near]) > 0.99 * np.sum(energy)


def test_inadmissible_strichartz_pair_grows_with_frequency():
    ladder = dict(box_len=2 * np.pi, resolutions=(64, 256), m=16, t_len=T_LEN)
    control = ladder_strichartz_pair(np.inf, np.inf, **ladder)
    admissible = ladder_strichartz_pair(8.0, 4.0, **ladder)
    assert not control.params["admissible"]
    assert admissible.params["admissible"]
    # The packet width shrinks fourfold, so L^∞ picks up band^{1/2} = 2.
    assert control.growth_factor() == pytest.approx(2.0, rel=0.1)
    assert admissible.growth_factor() < 1.3
    assert control.growth_factor() > 1.5 * admissible.growth_factor()


def _single_mode(k: int, j: int, amplitude: complex = 1.0) -> SpaceTimeField:
    coeffs = np.zeros((M,) + GRID.shape, dtype=np.complex128)
    coeffs[j % M, k % GRID.n] = amplitude
    return SpaceTimeField.from_spectrum(GRID, M, T_LEN, coeffs)


def test_l2_product_on_one_mode_matches_closed_form():
    params = EstimateParams(p=5, b=0.6)
    k, j = 1, -1
    tau = 2 * np.pi * j / T_LEN
    u = _single_mode(k, j)
    lhs, rhs = evaluate_estimate("l2_product", [u] * 5, params=params)
    s0, _ = critical_indices(5, 1)
    volume = T_LEN * GRID.box_len
    bracket = np.sqrt(1 + k**2)
    modulation = np.sqrt(1 + (tau + k**2) ** 2)
    assert lhs == pytest.approx(np.sqrt(volume), rel=1e-10)
    expected = volume ** 2.5 * bracket ** (4 * float(s0)) * modulation ** (5 * 0.6)
    assert rhs == pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize("sigma", [1e-3, 0.05, 0.1])
def test_commutator_estimate_on_one_mode_matches_closed_form(sigma):
    params = EstimateParams(p=5, b=0.6, sigma=sigma)
    k, j = 2, -1
    tau = 2 * np.pi * j / T_LEN
    lhs, rhs = evaluate_estimate("commutator_l2", [_single_mode(k, j)], params=params)
    s0, _ = critical_indices(5, 1)
    volume = T_LEN * GRID.box_len
    weight = volume**2 * np.sqrt(1 + k**2) ** (4 * float(s0) + 1) * np.sqrt(1 + (tau + k**2) ** 2) ** 3.0
    expected = (1 - np.exp(-4 * sigma * k)) / (sigma * weight)
    assert lhs / rhs == pytest.approx(expected, rel=1e-10)
    assert lhs / rhs <= 4 * k / weight


@pytest.mark.slow
def test_product_estimate_ratio_is_stable_under_refinement():
    report = ladder_estimate(
        "l2_product", EstimateParams(), box_len=40.0, resolutions=(64, 128),
        m=32, t_len=np.pi / 2, samples=100, seed=0,
    )
    assert report.sample_count == 100
    assert report.growth_factor() < 2.0
