"""File renderings of analysis results: delimited tables and figures."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from causalbench.core.types import Direction

from .errors import UnknownColumn
from .pareto import table_pareto
from .table import RunTable, slice_table


def write_csv(table: RunTable, path: Path | str) -> Path:
    """Write the table as comma-separated text, missing cells as ``null``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(table.to_csv(), encoding="utf-8")
    return path


def plot_group_means(
    table: RunTable, group_by: str, value: str, path: Path | str
) -> Path:
    """Bar chart of a value column's mean per group."""
    summary = slice_table(table, group_by=[group_by], aggregates=[(value, "mean")])
    labels = [str(row[group_by]) for row in summary.rows]
    means = [row[f"mean.{value}"] for row in summary.rows]
    plotted = [(l, m) for l, m in zip(labels, means) if m is not None]
    if not plotted:
        raise UnknownColumn(f"no non-null {value!r} values to plot")

    fig, ax = plt.subplots(figsize=(max(4.0, 1.2 * len(plotted)), 4.0))
    ax.bar([l for l, _ in plotted], [m for _, m in plotted], color="#4878a8")
    ax.set_xlabel(group_by)
    ax.set_ylabel(f"mean {value}")
    ax.set_title(f"{value} by {group_by}")
    ax.tick_params(axis="x", labelrotation=30)
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_tradeoff(
    table: RunTable,
    objectives: Sequence[tuple[str, Direction | str]],
    path: Path | str,
    id_column: str = "scenario_key",
) -> Path:
    """Scatter of two objectives with the non-dominated points highlighted."""
    if len(objectives) != 2:
        raise UnknownColumn("tradeoff plot needs exactly two objectives")
    (x_col, _), (y_col, _) = objectives
    table.require(id_column, x_col, y_col)
    front = set(table_pareto(table, id_column, objectives))

    xs, ys, on_front = [], [], []
    for row in table.rows:
        x, y = row.get(x_col), row.get(y_col)
        if x is None or y is None:
            continue
        xs.append(x)
        ys.append(y)
        on_front.append(row.get(id_column) in front)
    if not xs:
        raise UnknownColumn(f"no rows carry both {x_col!r} and {y_col!r}")

    fig, ax = plt.subplots(figsize=(5.0, 4.0))
    rest = [(x, y) for x, y, f in zip(xs, ys, on_front) if not f]
    best = [(x, y) for x, y, f in zip(xs, ys, on_front) if f]
    if rest:
        ax.scatter(*zip(*rest), color="#9aa5b1", label="dominated", s=30)
    if best:
        ax.scatter(*zip(*best), color="#c0392b", label="pareto front", s=45, zorder=3)
    ax.set_xlabel(x_col)
    ax.set_ylabel(y_col)
    ax.set_title(f"{y_col} vs {x_col}")
    ax.legend(loc="best", frameon=False)
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
