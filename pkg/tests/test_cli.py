"""
Tests for the gevrey-nls command line and its environment-driven defaults.

Run with:
    python -m pytest tests/test_cli.py -v
"""

import math

import pytest
from typer.testing import CliRunner

from gevrey_nls import cli
from gevrey_nls.config import runtime
from gevrey_nls.config.autotune import apply_runtime_autotune
from gevrey_nls.state import get_run_logger
from gevrey_nls.tools.results import read_csv

runner = CliRunner()

RADIUS_CONFIG = f"""
experiment = radius_decay
data_profile = plane_wave
n = 32
box_len = {2 * math.pi!r}
T = 0.1
dt = 0.01
stride = 5
"""


@pytest.fixture(autouse=True)
def quiet_logging(monkeypatch):
    monkeypatch.setattr(cli, "setup_logging", lambda level: None)


@pytest.fixture
def radius_config(tmp_path):
    path = tmp_path / "radius.cfg"
    path.write_text(RADIUS_CONFIG, encoding="utf-8")
    return path


def test_experiments_lists_builtins():
    result = runner.invoke(cli.app, ["experiments"])
    assert result.exit_code == 0
    for name in ("radius_decay", "conservation", "estimate_suite"):
        assert name in result.output


def test_info_runs():
    result = runner.invoke(cli.app, ["info"])
    assert result.exit_code == 0
    assert "gevrey-nls environment" in result.output


def test_run_writes_artifacts_and_history(tmp_path, radius_config):
    out_dir = tmp_path / "run"
    result = runner.invoke(
        cli.app, ["run", "-c", str(radius_config), "--out", str(out_dir), "--seed", "3", "--workers", "1"]
    )
    assert result.exit_code == 0, result.output
    for name in ("radius_decay.csv", "radius_decay_asigma.csv", "radius_decay.gp", "config.txt"):
        assert (out_dir / name).exists()
    table = read_csv(out_dir / "radius_decay.csv")
    assert table.metadata["seed"] == "3"
    assert "config.out_dir" not in table.metadata
    assert "seed = 3" in (out_dir / "config.txt").read_text()

    entry = get_run_logger().get_history()[0]
    assert entry["experiment"] == "radius_decay"
    assert entry["status"] == "ok"
    assert entry["metadata"]["alpha"] == 0.0


def test_run_without_plots(tmp_path, radius_config):
    out_dir = tmp_path / "run"
    result = runner.invoke(cli.app, ["run", "-c", str(radius_config), "--out", str(out_dir), "--no-plots"])
    assert result.exit_code == 0, result.output
    assert not list(out_dir.glob("*.gp"))


def test_overrides_are_validated(tmp_path, radius_config):
    result = runner.invoke(cli.app, ["run", "-c", str(radius_config), "--n", "30", "--out", str(tmp_path)])
    assert result.exit_code == 1
    assert "n" in result.output


def test_bad_config_exits_nonzero(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("experiment = radius_decay\nbogus = 1\n", encoding="utf-8")
    result = runner.invoke(cli.app, ["run", "-c", str(path), "--out", str(tmp_path / "run")])
    assert result.exit_code == 1
    assert "bogus" in result.output
    assert not (tmp_path / "run").exists()


def test_failed_run_is_logged(tmp_path, radius_config):
    text = radius_config.read_text().replace("plane_wave", "zero")
    radius_config.write_text(text, encoding="utf-8")
    result = runner.invoke(cli.app, ["run", "-c", str(radius_config), "--out", str(tmp_path / "run")])
    assert result.exit_code == 1
    entry = get_run_logger().get_history()[0]
    assert entry["status"] == "error"
    assert "A0 = 0" in entry["metadata"]["error"]


def test_history_stats_and_clear():
    get_run_logger().log_run("conservation", "experiment = conservation\n", ["a.csv"])
    listing = runner.invoke(cli.app, ["history", "-e", "conservation"])
    assert listing.exit_code == 0
    assert "CONSERVATION (ok)" in listing.output

    stats = runner.invoke(cli.app, ["history", "--stats"])
    assert "Total runs logged: 1/100" in stats.output

    cleared = runner.invoke(cli.app, ["history", "--clear"])
    assert cleared.exit_code == 0
    assert get_run_logger().get_history() == []


def test_autotune_respects_explicit_settings(monkeypatch):
    monkeypatch.delenv("GEVREY_NLS_WORKERS", raising=False)
    monkeypatch.setenv("GEVREY_NLS_FFT_WORKERS", "2")
    changes = apply_runtime_autotune()
    assert "GEVREY_NLS_WORKERS" in changes
    assert int(changes["GEVREY_NLS_WORKERS"]) >= 1
    assert "GEVREY_NLS_FFT_WORKERS" not in changes


def test_profiles_follow_environment(monkeypatch):
    monkeypatch.setenv("GEVREY_NLS_NOISE_FLOOR", "1e-10")
    monkeypatch.setenv("GEVREY_NLS_PICARD_TOL", "1e-9")
    runtime.reload_profiles()
    assert runtime.NUMERICS.noise_floor == 1e-10
    assert runtime.PICARD_DEFAULTS.tol == 1e-9
