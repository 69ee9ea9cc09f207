"""
Output directory layout for experiment runs.

    <out_dir>/
        <experiment>.csv            primary table
        <experiment>_<extra>.csv    companion tables
        <table>.gp                  gnuplot script per table
        config.txt                  canonical config echo
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, List

from gevrey_nls.core.errors import ResultError
from gevrey_nls.tools.plotting import emit_plot_script
from gevrey_nls.tools.results import ResultTable

logger = logging.getLogger(__name__)


class ArtifactsLayout:
    """Resolves and writes every file a run produces under one directory."""

    CONFIG_NAME = "config.txt"

    def __init__(self, out_dir: Path | str):
        self.out_dir = Path(out_dir)

    def initialize(self) -> Path:
        try:
            self.out_dir.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise ResultError(f"Cannot create output directory {self.out_dir}: {exc}") from exc
        return self.out_dir

    def csv_path(self, table: ResultTable) -> Path:
        return self.out_dir / f"{table.name}.csv"

    def plot_path(self, table: ResultTable) -> Path:
        return self.out_dir / f"{table.name}.gp"

    def config_path(self) -> Path:
        return self.out_dir / self.CONFIG_NAME

    def write_config(self, text: str) -> Path:
        self.initialize()
        target = self.config_path()
        try:
            target.write_text(text, encoding="utf-8")
        except OSError as exc:
            raise ResultError(f"Could not write {target}: {exc}") from exc
        return target

    def write_tables(self, tables: List[ResultTable], plots: bool = True) -> Dict[str, List[Path]]:
        """
        Write each table as CSV and, when it has rows, its plot script.

        Returns:
            {"csv": [...], "plots": [...]} in table order.
        """
        self.initialize()
        written: Dict[str, List[Path]] = {"csv": [], "plots": []}
        for table in tables:
            csv_path = table.write_csv(self.csv_path(table))
            written["csv"].append(csv_path)
            if plots and not table.is_empty:
                written["plots"].append(emit_plot_script(table, self.plot_path(table), csv_path))
            elif plots:
                logger.warning("table %s is empty; no plot script written", table.name)
        return written


__all__ = ["ArtifactsLayout"]
