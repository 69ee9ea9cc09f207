"""
Tests for the JSON run history.

Run with:
    python -m pytest tests/test_run_logger.py -v
"""

import json

from gevrey_nls.state import RunLogger, format_history_list, get_run_logger


def test_history_is_a_bounded_buffer(tmp_path):
    run_logger = RunLogger(tmp_path / "history.json", max_entries=3)
    for index in range(5):
        run_logger.log_run("conservation", f"seed = {index}\n", [f"out/{index}.csv"])
    entries = run_logger.get_history()
    assert len(entries) == 3
    assert entries[0]["config"] == "seed = 4\n"
    assert len(json.loads((tmp_path / "history.json").read_text())) == 3


def test_history_survives_reload(tmp_path):
    path = tmp_path / "history.json"
    RunLogger(path).log_run("radius_decay", "", [], metadata={"alpha": 1.0})
    entries = RunLogger(path).get_history()
    assert entries[0]["metadata"] == {"alpha": 1.0}
    assert entries[0]["status"] == "ok"


def test_filter_stats_and_clear(tmp_path):
    run_logger = RunLogger(tmp_path / "history.json")
    run_logger.log_run("radius_decay", "", [])
    run_logger.log_run("conservation", "", [], status="error")
    run_logger.log_run("radius_decay", "", [])
    assert len(run_logger.get_history(experiment="radius_decay")) == 2
    assert len(run_logger.get_history(limit=1)) == 1
    stats = run_logger.get_stats()
    assert stats["total_runs"] == 3
    assert stats["experiments"] == {"radius_decay": 2, "conservation": 1}
    run_logger.clear_history()
    assert run_logger.get_stats()["total_runs"] == 0
    assert run_logger.get_stats()["newest_entry"] is None


def test_corrupt_history_starts_fresh(tmp_path):
    path = tmp_path / "history.json"
    path.write_text("{not json", encoding="utf-8")
    assert RunLogger(path).get_history() == []


def test_global_logger_uses_data_dir(tmp_path):
    run_logger = get_run_logger()
    assert run_logger.log_path == tmp_path / "home" / "run_history.json"
    assert get_run_logger() is run_logger


def test_format_history_list():
    assert format_history_list([]) == "No runs recorded."
    text = format_history_list(
        [{"timestamp": "2025-01-01T10:00:00", "experiment": "conservation", "status": "ok",
          "outputs": ["a.csv"], "metadata": {"slope": 1.0}}]
    )
    assert "CONSERVATION (ok)" in text
    assert "slope: 1.0" in text
