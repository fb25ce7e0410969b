"""Flattening runs into a filterable, groupable table.

Column scheme: plain names for provenance (run_id, scenario_key, status,
executed_by) and the two component identities (dataset, model); dotted
prefixes for everything that fans out per run content: ``data.<property>``
from the dataset's config, ``hyper.<param>``, ``hw.<field>`` and
``sw.<runtime>`` from the system profile, ``accuracy.<metric id>``,
``time.<key>``, ``res.<key>``. Missing readings are None cells, rendered
as ``null`` in CSV, never coerced to 0.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from typing import Iterable, Mapping

from causalbench.core.context import scenario_key
from causalbench.core.types import (
    RESOURCE_KEYS,
    TIMING_KEYS,
    BenchmarkRun,
    DatasetDescriptor,
)

from .errors import UnknownColumn

FACTOR = "factor"
OUTCOME = "outcome"

_HW_COLUMNS = (
    ("hw.cpu_model", lambda p: p.cpu_model),
    ("hw.physical_cores", lambda p: p.physical_cores),
    ("hw.total_memory_bytes", lambda p: p.total_memory_bytes),
    ("hw.os", lambda p: p.os_name_version),
    ("hw.gpu_model", lambda p: p.gpu_model),
    ("hw.profile_hash", lambda p: p.profile_hash),
)

_META_COLUMNS = ("run_id", "scenario_key", "status", "executed_by")


@dataclass(frozen=True)
class RunTable:
    """An ordered set of named columns over flat scalar rows.

    ``catalog`` classifies the analysis-relevant columns as factor or
    outcome; provenance columns are deliberately uncatalogued so they never
    enter causal computations.
    """

    columns: tuple[str, ...]
    rows: tuple[dict, ...]
    catalog: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        if len(set(self.columns)) != len(self.columns):
            raise ValueError("duplicate column names in table")

    def column_kind(self, column: str) -> str | None:
        return dict(self.catalog).get(column)

    def factor_columns(self) -> tuple[str, ...]:
        return tuple(c for c, kind in self.catalog if kind == FACTOR)

    def outcome_columns(self) -> tuple[str, ...]:
        return tuple(c for c, kind in self.catalog if kind == OUTCOME)

    def values(self, column: str) -> list:
        self.require(column)
        return [row.get(column) for row in self.rows]

    def require(self, *columns: str) -> None:
        for column in columns:
            if column not in self.columns:
                raise UnknownColumn(f"no column named {column!r}")

    def to_obj(self) -> dict:
        return {
            "columns": list(self.columns),
            "rows": [[row.get(c) for c in self.columns] for row in self.rows],
            "catalog": {c: kind for c, kind in self.catalog},
        }

    @classmethod
    def from_obj(cls, obj: Mapping) -> "RunTable":
        columns = tuple(obj["columns"])
        rows = tuple(dict(zip(columns, row)) for row in obj["rows"])
        return cls(columns=columns, rows=rows, catalog=tuple(obj.get("catalog", {}).items()))

    def to_csv(self) -> str:
        def cell(value) -> str:
            if value is None:
                return "null"
            if isinstance(value, bool):
                return "true" if value else "false"
            text = str(value)
            if any(ch in text for ch in ",\"\n"):
                text = '"' + text.replace('"', '""') + '"'
            return text

        lines = [",".join(self.columns)]
        for row in self.rows:
            lines.append(",".join(cell(row.get(c)) for c in self.columns))
        return "\n".join(lines) + "\n"


def build_table(
    runs: Iterable[BenchmarkRun],
    datasets: Iterable[DatasetDescriptor] = (),
) -> RunTable:
    """Flatten runs into one row per scenario result.

    Dataset descriptors, when supplied, contribute ``data.<property>``
    columns from their config; results referencing datasets without a
    descriptor keep those cells null. Rows appear in run order, results in
    each run's recorded order, so repeated builds are identical.
    """
    by_id = {str(d.id): d for d in datasets}
    runs = list(runs)

    data_cols: set[str] = set()
    hyper_cols: set[str] = set()
    sw_cols: set[str] = set()
    accuracy_cols: set[str] = set()
    for run in runs:
        for key, _ in run.profile.runtime_versions:
            sw_cols.add(f"sw.{key}")
        for result in run.results:
            descriptor = by_id.get(str(result.scenario.dataset))
            if descriptor is not None:
                data_cols.update(f"data.{k}" for k in descriptor.config)
            hyper_cols.update(f"hyper.{k}" for k, _ in result.scenario.hyper.values)
            accuracy_cols.update(f"accuracy.{k}" for k, _ in result.accuracy)

    factor_cols = (
        ["dataset", "model"]
        + sorted(data_cols)
        + sorted(hyper_cols)
        + [name for name, _ in _HW_COLUMNS]
        + sorted(sw_cols)
    )
    outcome_cols = (
        sorted(accuracy_cols)
        + [f"time.{k}" for k in TIMING_KEYS]
        + [f"res.{k}" for k in RESOURCE_KEYS]
    )
    columns = tuple(list(_META_COLUMNS) + factor_cols + outcome_cols)
    catalog = tuple(
        [(c, FACTOR) for c in factor_cols] + [(c, OUTCOME) for c in outcome_cols]
    )

    rows = []
    for run in runs:
        profile_cells = {name: getter(run.profile) for name, getter in _HW_COLUMNS}
        for key, version in run.profile.runtime_versions:
            profile_cells[f"sw.{key}"] = version
        for result in run.results:
            row = dict.fromkeys(columns)
            row.update(profile_cells)
            row["run_id"] = run.run_id
            row["scenario_key"] = scenario_key(result.scenario)
            row["status"] = result.status.value
            row["executed_by"] = run.executed_by
            row["dataset"] = str(result.scenario.dataset)
            row["model"] = str(result.scenario.model)
            descriptor = by_id.get(str(result.scenario.dataset))
            if descriptor is not None:
                for key, value in descriptor.config.items():
                    row[f"data.{key}"] = value
            for key, value in result.scenario.hyper.values:
                row[f"hyper.{key}"] = value
            for key, value in result.accuracy:
                row[f"accuracy.{key}"] = value
            for key, value in result.timing:
                row[f"time.{key}"] = value
            for key, value in result.resources:
                row[f"res.{key}"] = value
            rows.append(row)
    return RunTable(columns=columns, rows=tuple(rows), catalog=catalog)


_OPS = {
    "eq": lambda cell, target: cell == target,
    "ne": lambda cell, target: cell != target,
    "lt": lambda cell, target: cell < target,
    "le": lambda cell, target: cell <= target,
    "gt": lambda cell, target: cell > target,
    "ge": lambda cell, target: cell >= target,
    "in": lambda cell, target: cell in target,
}

AGGREGATES = ("mean", "median", "min", "max", "count")


def _matches(row: dict, column: str, op: str, value) -> bool:
    cell = row.get(column)
    if op == "isnull":
        return cell is None
    if op == "notnull":
        return cell is not None
    # null cells satisfy no comparison, mirroring their exclusion from aggregates
    if cell is None:
        return False
    try:
        return bool(_OPS[op](cell, value))
    except TypeError:
        return False


def _group_sort_key(values: tuple) -> tuple:
    key = []
    for v in values:
        if v is None:
            key.append((2, 0, ""))
        elif isinstance(v, bool):
            key.append((0, float(v), ""))
        elif isinstance(v, (int, float)):
            key.append((0, float(v), ""))
        else:
            key.append((1, 0.0, str(v)))
    return tuple(key)


def _aggregate(fn: str, cells: list) -> float | int | None:
    if fn == "count":
        return len(cells)
    if not cells:
        return None
    if fn == "mean":
        return float(statistics.fmean(cells))
    if fn == "median":
        return float(statistics.median(cells))
    if fn == "min":
        return min(cells)
    return max(cells)


def slice_table(
    table: RunTable,
    filters: Iterable[tuple[str, str, object]] = (),
    group_by: Iterable[str] = (),
    aggregates: Iterable[tuple[str, str]] = (),
) -> RunTable:
    """Filter rows, group, and aggregate: the slicing/dicing primitive.

    Filters are (column, op, value) triples over eq/ne/lt/le/gt/ge/in plus
    isnull/notnull; null cells fail every comparison. Aggregates emit one
    ``<fn>.<column>`` column each plus an ``n.<column>`` count of non-null
    contributing cells, so a null-heavy mean is never mistaken for a
    well-supported one. Without group_by or aggregates the result is just
    the filtered table.
    """
    filters = list(filters)
    group_by = list(group_by)
    aggregates = [(column, fn) for column, fn in aggregates]
    for column, op, _ in filters:
        table.require(column)
        if op not in _OPS and op not in ("isnull", "notnull"):
            raise UnknownColumn(f"unknown filter op {op!r}")
    table.require(*group_by)
    for column, fn in aggregates:
        table.require(column)
        if fn not in AGGREGATES:
            raise UnknownColumn(f"unknown aggregate {fn!r}")

    kept = [
        row
        for row in table.rows
        if all(_matches(row, column, op, value) for column, op, value in filters)
    ]
    if not group_by and not aggregates:
        return RunTable(columns=table.columns, rows=tuple(kept), catalog=table.catalog)

    groups: dict[tuple, list[dict]] = {}
    for row in kept:
        groups.setdefault(tuple(row.get(c) for c in group_by), []).append(row)

    agg_columns: list[str] = []
    for column, fn in aggregates:
        agg_columns.append(f"{fn}.{column}")
        counted = f"n.{column}"
        if fn != "count" and counted not in agg_columns:
            agg_columns.append(counted)

    out_columns = tuple(group_by + agg_columns)
    out_rows = []
    for key in sorted(groups, key=_group_sort_key):
        members = groups[key]
        row = dict(zip(group_by, key))
        for column, fn in aggregates:
            cells = [r.get(column) for r in members if r.get(column) is not None]
            row[f"{fn}.{column}"] = _aggregate(fn, cells)
            if fn != "count":
                row[f"n.{column}"] = len(cells)
        out_rows.append(row)
    return RunTable(columns=out_columns, rows=tuple(out_rows), catalog=())
