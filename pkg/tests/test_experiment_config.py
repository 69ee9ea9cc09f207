"""
Tests for the experiment config model and its key = value file format.

Run with:
    python -m pytest tests/test_experiment_config.py -v
"""

import math

import pytest

from gevrey_nls.config.experiment import (
    ExperimentConfig,
    apply_overrides,
    load_config,
    parse_config,
    serialize_config,
)
from gevrey_nls.core.errors import ConfigError
from gevrey_nls.core.estimates import ESTIMATES

RADIUS_TEXT = """
# radius decay on a 1-D sech
experiment = radius_decay
n = 256          # points per axis
box_len = 40.0
sigma_list = [1e-4, 1e-3, 1e-2]
data_profile = random_gevrey(0.5, 3)
"""


def _expect_error(text: str, needle: str) -> str:
    with pytest.raises(ConfigError) as excinfo:
        parse_config(text)
    message = str(excinfo.value)
    assert needle in message
    return message


def test_parse_reads_values_and_comments():
    cfg = parse_config(RADIUS_TEXT)
    assert cfg.experiment == "radius_decay"
    assert cfg.n == 256
    assert cfg.sigma_list == [1e-4, 1e-3, 1e-2]
    assert cfg.data_profile == "random_gevrey(0.5, 3)"
    assert cfg.t_len == pytest.approx(math.pi / 2)


def test_serialized_config_parses_back():
    cfg = parse_config(
        RADIUS_TEXT
        + "conj_pattern = [true, true, false, false, true]\nestimates = [l2_product]\ndt = 1e-05\n"
    )
    assert cfg.conj_pattern == [True, True, False, False, True]
    assert cfg.dt == 1e-5
    assert parse_config(serialize_config(cfg)) == cfg


def test_serialization_omits_unset_optionals():
    text = serialize_config(parse_config("experiment = conservation"))
    assert "estimates" not in text
    assert "conj_pattern" not in text
    assert text.splitlines()[0] == "experiment = conservation"


def test_quoted_strings_and_log_level():
    cfg = parse_config('experiment = radius_decay\nout_dir = "runs/a b"\nlog_level = debug')
    assert cfg.out_dir == "runs/a b"
    assert cfg.log_level == "DEBUG"


def test_unknown_key_is_named():
    _expect_error("experiment = radius_decay\nresolution = 64", "resolution")


def test_repeated_key():
    _expect_error("experiment = radius_decay\nn = 64\nn = 128", "given twice")


def test_malformed_line():
    _expect_error("experiment = radius_decay\njust some words", "Line 2")


def test_missing_experiment():
    _expect_error("n = 64", "experiment")


@pytest.mark.parametrize(
    "line, needle",
    [
        ("n = 100", "n"),
        ("p = 4", "p"),
        ("dim = 3", "dim"),
        ("m = 12", "m"),
        ("dt = 0", "dt"),
        ("b = 0.9", "b_prime"),
        ("conj_pattern = [true, false]", "conj_pattern"),
        ("data_profile = triangle", "data_profile"),
        ("estimates = [bilinear_refined]", "estimates"),
        ("sigma_list = [-1e-3, 1e-3]", "sigma_list"),
        ("log_level = LOUD", "log_level"),
    ],
)
def test_invalid_values_name_their_key(line, needle):
    _expect_error(f"experiment = radius_decay\n{line}", needle)


def test_estimate_suite_needs_enough_samples():
    _expect_error("experiment = estimate_suite\nsamples = 50", "samples")


def test_conservation_needs_two_decades():
    _expect_error("experiment = conservation\nsigma_list = [1e-3, 1e-2]", "sigma_list")
    _expect_error("experiment = conservation\nsigma_list = [1e-3, 2e-3, 1e-2]", "sigma_list")


def test_load_config(tmp_path):
    path = tmp_path / "radius.cfg"
    path.write_text(RADIUS_TEXT, encoding="utf-8")
    assert load_config(path).n == 256
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.cfg")


def test_apply_overrides():
    cfg = parse_config(RADIUS_TEXT)
    assert apply_overrides(cfg, n=None) is cfg
    changed = apply_overrides(cfg, n=64, method="picard", seed=None)
    assert changed.n == 64
    assert changed.method == "picard"
    assert changed.seed == cfg.seed
    with pytest.raises(ConfigError):
        apply_overrides(cfg, n=65)
    with pytest.raises(ConfigError):
        apply_overrides(cfg, resolution=64)


def test_derived_parameter_objects():
    cfg = parse_config("experiment = estimate_suite\nb = 0.55\nb_prime = 0.9\nestimate_sigma = 0.2")
    assert cfg.grid(64).n == 64
    assert cfg.picard_params().b_prime == 0.9
    assert cfg.estimate_params().sigma == 0.2
    assert cfg.schedule_params().c0 == cfg.c0
    assert cfg.estimate_ids() == list(ESTIMATES)


def test_config_is_frozen():
    cfg = ExperimentConfig(experiment="radius_decay")
    with pytest.raises(Exception):
        cfg.n = 64
