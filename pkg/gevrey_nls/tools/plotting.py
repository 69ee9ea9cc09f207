"""Gnuplot script emission for result tables."""

from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import List, Optional

from gevrey_nls.core.errors import ResultError
from gevrey_nls.tools.results import ResultTable, format_value

logger = logging.getLogger(__name__)

_PREAMBLE = """\
# gnuplot script for {name} ({experiment})
set datafile separator ","
set datafile commentschars "#"
set key autotitle columnhead
set grid
set terminal pngcairo size 900,600
data = "{csv}"
"""


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _column_plot(stem: str, x_col: int, y_col: int, x_label: str, y_label: str, log: str = "") -> str:
    lines = [
        f"set output {_quote(f'{stem}_{y_label}.png')}",
        f"set xlabel {_quote(x_label)}",
        f"set ylabel {_quote(y_label)}",
        f"set logscale {log}" if log else "unset logscale",
        f"plot data using {x_col}:{y_col} with linespoints title {_quote(y_label)}",
        "",
    ]
    return "\n".join(lines)


def _radius_decay(table: ResultTable, stem: str) -> List[str]:
    columns = list(table.columns)
    est, sched = columns.index("sigma_est") + 1, columns.index("sigma_schedule") + 1
    blocks = [
        "\n".join(
            [
                f"set output {_quote(stem + '_radius.png')}",
                'set xlabel "t"',
                'set ylabel "sigma"',
                "set logscale xy",
                f'plot data using 1:{est} with linespoints title "sigma_est", \\',
                f'     data using 1:{sched} with lines title "sigma_schedule (c/t)"',
                "",
            ]
        )
    ]
    for index, name in enumerate(columns[1:], start=2):
        blocks.append(_column_plot(stem, 1, index, "t", name))
    return blocks


def _conservation(table: ResultTable, stem: str) -> List[str]:
    # Anchor the slope-1 guide at the largest σ with a positive drift.
    anchor = 1.0
    for sigma, drift in sorted(zip(table.column("sigma"), table.column("sup_drift_A")), reverse=True):
        if float(sigma) > 0 and float(drift) > 0:
            anchor = float(drift) / float(sigma)
            break
    blocks = [
        "\n".join(
            [
                f"set output {_quote(stem + '_drift.png')}",
                'set xlabel "sigma"',
                'set ylabel "D(sigma)"',
                "set logscale xy",
                f"guide(x) = {format_value(anchor)} * x",
                'plot data using 1:3 with linespoints title "sup_drift_A", \\',
                '     guide(x) with lines dashtype 2 title "slope 1"',
                "",
            ]
        )
    ]
    for index, name in enumerate(table.columns[3:], start=4):
        blocks.append(_column_plot(stem, 1, index, "sigma", name, log="x"))
    return blocks


def _estimate_suite(table: ResultTable, stem: str) -> List[str]:
    ids = list(dict.fromkeys(table.column("estimate_id")))
    blocks = []
    for index, name in ((5, "max_ratio"), (6, "median_ratio")):
        terms = [
            f'data using 2:(strcol(1) eq {_quote(estimate)} ? ${index} : 1/0) '
            f"with linespoints title {_quote(estimate)}"
            for estimate in ids
        ]
        blocks.append(
            "\n".join(
                [
                    f"set output {_quote(f'{stem}_{name}.png')}",
                    'set xlabel "n"',
                    f"set ylabel {_quote(name)}",
                    "set logscale x 2",
                    "plot " + ", \\\n     ".join(terms),
                    "",
                ]
            )
        )
    return blocks


def _asigma(table: ResultTable, stem: str) -> List[str]:
    sigmas = list(dict.fromkeys(float(value) for value in table.column("sigma")))
    terms = [
        f"data using 1:($2 == {format_value(sigma)} ? $3 : 1/0) "
        f"with lines title {_quote('sigma=' + format_value(sigma))}"
        for sigma in sigmas
    ]
    return [
        "\n".join(
            [
                f"set output {_quote(stem + '_A_sigma.png')}",
                'set xlabel "t"',
                'set ylabel "A_sigma"',
                "unset logscale",
                "plot " + ", \\\n     ".join(terms),
                "",
            ]
        )
    ]


def _generic(table: ResultTable, stem: str) -> List[str]:
    first = table.columns[0]
    return [
        _column_plot(stem, 1, index, first, name)
        for index, name in enumerate(table.columns[1:], start=2)
    ]


def emit_plot_script(table: ResultTable, out_path: Path | str, csv_path: Optional[Path | str] = None) -> Path:
    """
    Write a gnuplot script for ``table`` to ``out_path``.

    The CSV is referenced relative to the script's directory; by default it is
    ``<table.name>.csv`` next to the script.

    Raises:
        ResultError: for an empty table or when the script cannot be written.
    """
    if table.is_empty:
        raise ResultError(f"Table '{table.name}' is empty; nothing to plot")

    target = Path(out_path)
    data = Path(csv_path) if csv_path is not None else target.with_name(f"{table.name}.csv")
    relative = os.path.relpath(data, start=target.parent).replace(os.sep, "/")
    stem = table.name

    if table.name.endswith("_asigma"):
        blocks = _asigma(table, stem)
    elif table.experiment == "radius_decay":
        blocks = _radius_decay(table, stem)
    elif table.experiment == "conservation":
        blocks = _conservation(table, stem)
    elif table.experiment == "estimate_suite":
        blocks = _estimate_suite(table, stem)
    else:
        blocks = _generic(table, stem)

    script = _PREAMBLE.format(name=table.name, experiment=table.experiment, csv=relative)
    script += "\n" + "\n".join(blocks)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(script, encoding="utf-8")
    except OSError as exc:
        raise ResultError(f"Could not write plot script {target}: {exc}") from exc
    logger.info("wrote plot script %s", target)
    return target


__all__ = ["emit_plot_script"]
