"""Ranking unexecuted configurations by predictive uncertainty.

Candidates come from a grid over factor columns. The least-covered cells
rank first; coverage ties break toward the widest prediction interval
(most to learn), then the canonical serialization of the assignment for a
stable total order. Candidates that correspond to an already-executed
exact configuration are dropped: that applies only when the grid pins
every configuration-defining column (dataset, model, and the hyper
columns), since a partial cell is an aggregate, not an executable
configuration.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence

from causalbench.core.canonical import canonical_dumps

from .graph import CausalGraph
from .predict import predict_outcome
from .table import RunTable


@dataclass(frozen=True)
class Recommendation:
    assignment: tuple[tuple[str, object], ...]
    covering_rows: int
    interval_width: float

    def to_obj(self) -> dict:
        return {
            "assignment": dict(self.assignment),
            "covering_rows": self.covering_rows,
            "interval_width": self.interval_width,
        }


def _config_columns(table: RunTable) -> set[str]:
    return {
        c
        for c in table.columns
        if c in ("dataset", "model") or c.startswith("hyper.")
    }


def recommend(
    table: RunTable,
    graph: CausalGraph,
    space: Mapping[str, Sequence],
    k: int,
) -> list[Recommendation]:
    if k < 1:
        raise ValueError("k must be at least 1")
    if not space or any(len(values) == 0 for values in space.values()):
        raise ValueError("candidate space must offer at least one value per column")
    columns = sorted(space)
    table.require(*columns)

    config_cols = _config_columns(table)
    exact_configs = config_cols and config_cols <= set(columns)
    outcome_cols = [
        c for c in table.outcome_columns() if any(r.get(c) is not None for r in table.rows)
    ]

    scored = []
    for values in product(*(space[c] for c in columns)):
        assignment = dict(zip(columns, values))
        covering = sum(
            1
            for row in table.rows
            if all(row.get(c) == assignment[c] for c in columns)
        )
        if exact_configs and covering > 0:
            continue
        width = 0.0
        for outcome_col in outcome_cols:
            entry = predict_outcome(table, columns, assignment, outcome_col)
            if entry is not None:
                width += entry.interval[1] - entry.interval[0]
        canonical = canonical_dumps(assignment)
        scored.append((covering, -width, canonical, assignment))

    scored.sort(key=lambda item: item[:3])
    return [
        Recommendation(
            assignment=tuple(sorted(assignment.items())),
            covering_rows=covering,
            interval_width=-neg_width,
        )
        for covering, neg_width, _, assignment in scored[:k]
    ]
