"""Backdoor-adjusted effect estimation by exact stratification.

The adjustment set is read off the declared graph: parents of the
treatment's node that are ancestors of the outcome's node. Rows are
stratified on the adjustment columns (continuous columns quartile-binned),
the two treatment arms are contrasted within each stratum, and strata are
combined with weights proportional to their row counts. Transparent enough
to check against a hand computation, which is the point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidGraph, NoOverlap
from .graph import CausalGraph
from .table import FACTOR, RunTable, _group_sort_key

_MAX_EXACT_LEVELS = 4


@dataclass(frozen=True)
class StratumDetail:
    stratum: tuple
    mean_a: float | None
    mean_b: float | None
    n_a: int
    n_b: int

    @property
    def complete(self) -> bool:
        return self.n_a >= 1 and self.n_b >= 1

    def to_obj(self) -> dict:
        return {
            "stratum": list(self.stratum),
            "mean_a": self.mean_a,
            "mean_b": self.mean_b,
            "n_a": self.n_a,
            "n_b": self.n_b,
        }


@dataclass(frozen=True)
class EffectEstimate:
    treatment: str
    level_a: object
    level_b: object
    outcome: str
    adjusted_for: tuple[str, ...]
    estimate: float
    unadjusted: float
    stratum_details: tuple[StratumDetail, ...]

    @property
    def dropped_strata(self) -> int:
        return sum(1 for d in self.stratum_details if not d.complete)

    def to_obj(self) -> dict:
        return {
            "treatment": self.treatment,
            "level_a": self.level_a,
            "level_b": self.level_b,
            "outcome": self.outcome,
            "adjusted_for": list(self.adjusted_for),
            "estimate": self.estimate,
            "unadjusted": self.unadjusted,
            "dropped_strata": self.dropped_strata,
            "stratum_details": [d.to_obj() for d in self.stratum_details],
        }


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def bin_column(values: list) -> list:
    """Quartile-bin a continuous column; discrete columns pass through.

    A column is continuous when every value is numeric and more than four
    distinct values occur; bins are labeled q1..q4 by quartile boundary.
    """
    present = [v for v in values if v is not None]
    if not present or not all(_is_number(v) for v in present):
        return list(values)
    if len(set(present)) <= _MAX_EXACT_LEVELS:
        return list(values)
    q1, q2, q3 = np.percentile(present, [25, 50, 75])

    def label(v):
        if v is None:
            return None
        if v <= q1:
            return "q1"
        if v <= q2:
            return "q2"
        if v <= q3:
            return "q3"
        return "q4"

    return [label(v) for v in values]


def _arm_stats(rows: list[tuple[object, float]], level) -> tuple[float | None, int]:
    outcomes = [y for t, y in rows if t == level]
    if not outcomes:
        return None, 0
    return float(np.mean(outcomes)), len(outcomes)


def estimate_impact(
    table: RunTable,
    graph: CausalGraph,
    treatment: tuple[str, object, object],
    outcome: str,
) -> EffectEstimate:
    """Contrast two treatment levels on an outcome, backdoor-adjusted.

    ``treatment`` is (column, level_a, level_b); the estimate is the
    stratum-weighted mean of (mean_a - mean_b). Strata where either arm is
    absent contribute nothing but stay in the details with a zero count.
    Raises NoOverlap when no stratum holds both arms.
    """
    t_col, level_a, level_b = treatment
    table.require(t_col, outcome)
    t_node = graph.node_for_column(t_col)
    o_node = graph.node_for_column(outcome)
    if graph.kind(t_node) != FACTOR:
        raise InvalidGraph(f"treatment {t_col!r} is not a factor column")

    adjusted_nodes = tuple(
        sorted(set(graph.parents(t_node)) & set(graph.ancestors(o_node)))
    )
    adjust_cols = []
    for node in adjusted_nodes:
        for column in graph.columns_for_node(node, table):
            if column != t_col and column not in adjust_cols:
                adjust_cols.append(column)

    rows = [
        row
        for row in table.rows
        if row.get(t_col) in (level_a, level_b)
        and row.get(outcome) is not None
        and all(row.get(c) is not None for c in adjust_cols)
    ]
    flat = [(row[t_col], float(row[outcome])) for row in rows]
    mean_a, n_a = _arm_stats(flat, level_a)
    mean_b, n_b = _arm_stats(flat, level_b)
    if n_a == 0 or n_b == 0:
        raise NoOverlap(
            f"treatment {t_col!r} has no rows for "
            f"{'both levels' if n_a == 0 and n_b == 0 else (level_a if n_a == 0 else level_b)!r}"
        )
    unadjusted = mean_a - mean_b

    binned = {c: bin_column([row.get(c) for row in rows]) for c in adjust_cols}
    strata: dict[tuple, list[tuple[object, float]]] = {}
    for i, row in enumerate(rows):
        key = tuple(binned[c][i] for c in adjust_cols)
        strata.setdefault(key, []).append((row[t_col], float(row[outcome])))

    details = []
    for key in sorted(strata, key=_group_sort_key):
        members = strata[key]
        s_mean_a, s_n_a = _arm_stats(members, level_a)
        s_mean_b, s_n_b = _arm_stats(members, level_b)
        details.append(StratumDetail(key, s_mean_a, s_mean_b, s_n_a, s_n_b))

    complete = [d for d in details if d.complete]
    if not complete:
        raise NoOverlap("every stratum is missing a treatment arm")
    total = sum(d.n_a + d.n_b for d in complete)
    estimate = sum((d.n_a + d.n_b) / total * (d.mean_a - d.mean_b) for d in complete)

    return EffectEstimate(
        treatment=t_col,
        level_a=level_a,
        level_b=level_b,
        outcome=outcome,
        adjusted_for=adjusted_nodes,
        estimate=float(estimate),
        unadjusted=float(unadjusted),
        stratum_details=tuple(details),
    )
