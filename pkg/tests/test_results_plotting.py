"""
Tests for CSV result tables, gnuplot scripts and the output layout.

Run with:
    python -m pytest tests/test_results_plotting.py -v
"""

import math

import numpy as np
import pytest

from gevrey_nls.core.errors import ResultError
from gevrey_nls.system_artifacts import ArtifactsLayout
from gevrey_nls.tools.plotting import emit_plot_script
from gevrey_nls.tools.results import (
    CONSERVATION_COLUMNS,
    ESTIMATE_SUITE_COLUMNS,
    RADIUS_DECAY_ASIGMA_COLUMNS,
    RADIUS_DECAY_COLUMNS,
    ResultTable,
    format_value,
    read_csv,
)


def _conservation_table() -> ResultTable:
    table = ResultTable(
        name="conservation",
        experiment="conservation",
        columns=CONSERVATION_COLUMNS,
        metadata={"experiment": "conservation", "seed": 0},
    )
    table.add_row([0.0, 0.01, 1e-14, 1e-15, 1e-14])
    table.add_row([1e-3, 0.01, 2e-9, 1e-15, 1e-14])
    table.add_row({"sigma": 1e-2, "delta": 0.01, "sup_drift_A": 2e-8, "mass_drift": 0.0, "energy_drift": 0.0})
    return table


@pytest.mark.parametrize(
    "value, text",
    [
        (True, "1"),
        (np.bool_(False), "0"),
        (np.int64(7), "7"),
        (0.1, "0.10000000000000001"),
        (np.float64(2.0), "2"),
        ([1, 0.5], "[1, 0.5]"),
        (None, ""),
        ("sech", "sech"),
    ],
)
def test_format_value(value, text):
    assert format_value(value) == text


@pytest.mark.parametrize("value", [math.nan, math.inf, np.float64(-np.inf)])
def test_non_finite_values_rejected(value):
    with pytest.raises(ResultError):
        format_value(value)


def test_rows_must_match_columns():
    table = _conservation_table()
    with pytest.raises(ResultError):
        table.add_row([1.0, 2.0])
    with pytest.raises(ResultError):
        table.add_row({"sigma": 1.0})
    with pytest.raises(ResultError):
        table.column("alpha")


def test_csv_layout_and_read_back(tmp_path):
    table = _conservation_table()
    text = table.to_csv_text()
    lines = text.splitlines()
    assert lines[0] == "# experiment: conservation"
    assert lines[2] == ",".join(CONSERVATION_COLUMNS)
    assert lines[4].startswith("0.001,")
    assert text.endswith("\n") and "\r" not in text

    path = table.write_csv(tmp_path / "out" / "conservation.csv")
    loaded = read_csv(path)
    assert loaded.experiment == "conservation"
    assert loaded.metadata["seed"] == "0"
    assert [float(value) for value in loaded.column("sup_drift_A")] == table.column("sup_drift_A")


def test_csv_text_is_stable():
    assert _conservation_table().to_csv_text() == _conservation_table().to_csv_text()


def test_empty_table_has_no_plot(tmp_path):
    table = ResultTable(name="conservation", experiment="conservation", columns=CONSERVATION_COLUMNS)
    with pytest.raises(ResultError):
        emit_plot_script(table, tmp_path / "conservation.gp")


def test_conservation_script_has_slope_guide(tmp_path):
    script = emit_plot_script(_conservation_table(), tmp_path / "plots" / "conservation.gp",
                              tmp_path / "conservation.csv").read_text()
    assert 'data = "../conservation.csv"' in script
    assert 'set datafile separator ","' in script
    assert "set logscale xy" in script
    (guide,) = [line for line in script.splitlines() if line.startswith("guide(x) = ")]
    assert float(guide.split("=")[1].split("*")[0]) == pytest.approx(2e-6)
    assert 'title "slope 1"' in script


def test_radius_script_is_log_log(tmp_path):
    table = ResultTable(name="radius_decay", experiment="radius_decay", columns=RADIUS_DECAY_COLUMNS)
    table.add_row([0.0, 2.0, 1.0, 3.0, 1.5, 0.01, 0.5, False])
    table.add_row([1.0, 2.0, 1.0, 3.0, 1.4, 0.01, 0.1, False])
    script = emit_plot_script(table, tmp_path / "radius_decay.gp").read_text()
    assert 'data = "radius_decay.csv"' in script
    assert "set logscale xy" in script
    assert 'title "sigma_est"' in script
    assert "radius_decay_saturated_flag.png" in script


def test_asigma_and_suite_scripts(tmp_path):
    asigma = ResultTable(name="radius_decay_asigma", experiment="radius_decay",
                         columns=RADIUS_DECAY_ASIGMA_COLUMNS)
    asigma.add_row([0.0, 0.001, 3.0])
    asigma.add_row([0.0, 0.01, 3.1])
    script = emit_plot_script(asigma, tmp_path / "radius_decay_asigma.gp").read_text()
    assert "($2 == 0.001 ? $3 : 1/0)" in script

    suite = ResultTable(name="estimate_suite", experiment="estimate_suite", columns=ESTIMATE_SUITE_COLUMNS)
    suite.add_row(["l2_product", 64, 100, 0, 1.2, 0.8])
    suite.add_row(["l2_product", 128, 100, 0, 1.25, 0.8])
    script = emit_plot_script(suite, tmp_path / "estimate_suite.gp").read_text()
    assert 'strcol(1) eq "l2_product"' in script
    assert "estimate_suite_median_ratio.png" in script


def test_layout_writes_tables_and_config(tmp_path):
    layout = ArtifactsLayout(tmp_path / "run")
    empty = ResultTable(name="conservation_extra", experiment="conservation", columns=("x",))
    written = layout.write_tables([_conservation_table(), empty])
    assert [path.name for path in written["csv"]] == ["conservation.csv", "conservation_extra.csv"]
    assert [path.name for path in written["plots"]] == ["conservation.gp"]
    config = layout.write_config("experiment = conservation\n")
    assert config.name == "config.txt"
    assert not layout.write_tables([_conservation_table()], plots=False)["plots"]
