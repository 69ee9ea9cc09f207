"""
Result tables and their CSV persistence.

A table is written as ``# key: value`` metadata lines, a header line, then
one line per row. Floats carry 17 significant digits so a table read back
reproduces the computed doubles exactly; no timestamps are written, so two
runs with the same configuration produce byte-identical files.
"""

from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Sequence

import numpy as np

from gevrey_nls.core.errors import ResultError

logger = logging.getLogger(__name__)

RADIUS_DECAY_COLUMNS = (
    "t",
    "mass",
    "energy",
    "A_sigma0",
    "sigma_est",
    "sigma_fit_residual",
    "sigma_schedule",
    "saturated_flag",
)
RADIUS_DECAY_ASIGMA_COLUMNS = ("t", "sigma", "A_sigma")
CONSERVATION_COLUMNS = ("sigma", "delta", "sup_drift_A", "mass_drift", "energy_drift")
ESTIMATE_SUITE_COLUMNS = (
    "estimate_id",
    "n",
    "samples",
    "excluded_zero_rhs",
    "max_ratio",
    "median_ratio",
)


def format_value(value: Any) -> str:
    """Render one cell. Raises ResultError for NaN or infinity."""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        number = float(value)
        if not math.isfinite(number):
            raise ResultError(f"Non-finite value {number!r} cannot be written")
        return format(number, ".17g")
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(format_value(item) for item in value) + "]"
    if value is None:
        return ""
    return str(value)


@dataclass
class ResultTable:
    """Ordered rows under a fixed column schema plus a metadata header."""

    name: str
    experiment: str
    columns: Sequence[str]
    rows: List[List[Any]] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def add_row(self, row: Sequence[Any] | Mapping[str, Any]) -> None:
        if isinstance(row, Mapping):
            missing = [column for column in self.columns if column not in row]
            if missing:
                raise ResultError(f"Row for '{self.name}' lacks columns: {', '.join(missing)}")
            values = [row[column] for column in self.columns]
        else:
            values = list(row)
        if len(values) != len(self.columns):
            raise ResultError(
                f"Row has {len(values)} values but '{self.name}' has {len(self.columns)} columns"
            )
        self.rows.append(values)

    def column(self, name: str) -> List[Any]:
        try:
            index = list(self.columns).index(name)
        except ValueError as exc:
            raise ResultError(f"Table '{self.name}' has no column '{name}'") from exc
        return [row[index] for row in self.rows]

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def is_empty(self) -> bool:
        return not self.rows

    def to_csv_text(self) -> str:
        buffer = io.StringIO()
        for key, value in self.metadata.items():
            buffer.write(f"# {key}: {format_value(value)}\n")
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([format_value(value) for value in row])
        return buffer.getvalue()

    def write_csv(self, path: Path | str) -> Path:
        target = Path(path)
        text = self.to_csv_text()
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(text, encoding="utf-8")
        except OSError as exc:
            raise ResultError(f"Could not write {target}: {exc}") from exc
        logger.info("wrote %d rows to %s", len(self.rows), target)
        return target


def read_csv(path: Path | str) -> ResultTable:
    """Load a table written by :meth:`ResultTable.write_csv`; cells stay strings."""
    source = Path(path)
    try:
        lines = source.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise ResultError(f"Could not read {source}: {exc}") from exc

    metadata: Dict[str, Any] = {}
    body: List[str] = []
    for line in lines:
        if line.startswith("# ") and not body:
            key, _, value = line[2:].partition(": ")
            metadata[key] = value
        else:
            body.append(line)
    if not body:
        raise ResultError(f"{source} has no header line")
    reader = csv.reader(body)
    columns = next(reader)
    table = ResultTable(
        name=source.stem,
        experiment=str(metadata.get("experiment", "")),
        columns=columns,
        metadata=metadata,
    )
    for row in reader:
        table.add_row(row)
    return table


__all__ = [
    "RADIUS_DECAY_COLUMNS",
    "RADIUS_DECAY_ASIGMA_COLUMNS",
    "CONSERVATION_COLUMNS",
    "ESTIMATE_SUITE_COLUMNS",
    "ResultTable",
    "format_value",
    "read_csv",
]
