"""Performance prediction under new settings from an additive factor model.

Factor levels are categorical. When the table already holds rows matching
the target cell exactly, the prediction is that cell's mean (nothing beats
data). Otherwise a per-outcome additive effects model (no interactions) is
fit over the outcome's parent factors; effects of levels present in the
table transfer to the target, levels never seen contribute zero and are
reported as non-shareable rather than silently guessed.
"""

from __future__ import annotations

import numpy as np
from dataclasses import dataclass
from typing import Mapping

from .errors import EmptyTable, UnknownColumn
from .graph import CausalGraph
from .table import RunTable, _group_sort_key


@dataclass(frozen=True)
class OutcomePrediction:
    outcome: str
    estimate: float
    interval: tuple[float, float]
    method: str
    transferred: tuple[str, ...]
    non_shareable: tuple[str, ...]
    n_rows: int

    def to_obj(self) -> dict:
        return {
            "outcome": self.outcome,
            "estimate": self.estimate,
            "interval": list(self.interval),
            "method": self.method,
            "transferred": list(self.transferred),
            "non_shareable": list(self.non_shareable),
            "n_rows": self.n_rows,
        }


@dataclass(frozen=True)
class PredictionReport:
    target: tuple[tuple[str, object], ...]
    outcomes: tuple[OutcomePrediction, ...]
    notes: tuple[str, ...] = ()

    def outcome(self, column: str) -> OutcomePrediction:
        for entry in self.outcomes:
            if entry.outcome == column:
                return entry
        raise UnknownColumn(f"no prediction for {column!r}")

    def to_obj(self) -> dict:
        return {
            "target": dict(self.target),
            "outcomes": [o.to_obj() for o in self.outcomes],
            "notes": list(self.notes),
        }


def _level_key(value):
    return _group_sort_key((value,))


def predict_outcome(
    table: RunTable,
    factor_cols: list[str],
    target: Mapping[str, object],
    outcome_col: str,
) -> OutcomePrediction | None:
    """One outcome's prediction over the given factor columns.

    Returns None when no row carries the outcome. Exposed for the
    recommender, which scores candidate cells over partial factor sets.
    """
    # a null factor (say, no GPU fitted) is a level of its own, not a
    # reason to discard the row; only a missing outcome disqualifies
    rows = [row for row in table.rows if row.get(outcome_col) is not None]
    if not rows:
        return None
    exact = [
        float(row[outcome_col])
        for row in rows
        if all(row.get(c) == target.get(c) for c in factor_cols)
    ]
    if exact:
        mean = float(np.mean(exact))
        spread = 2.0 * float(np.std(exact))
        return OutcomePrediction(
            outcome=outcome_col,
            estimate=mean,
            interval=(mean - spread, mean + spread),
            method="exact-cell",
            transferred=tuple(factor_cols),
            non_shareable=(),
            n_rows=len(exact),
        )

    y = np.array([float(row[outcome_col]) for row in rows])
    design_cols = [np.ones(len(rows))]
    coefficient_for: dict[tuple[str, object], int] = {}
    levels_by_col: dict[str, list] = {}
    for column in factor_cols:
        levels = sorted({row[column] for row in rows}, key=_level_key)
        levels_by_col[column] = levels
        for level in levels[1:]:
            coefficient_for[(column, level)] = len(design_cols)
            design_cols.append(
                np.array([1.0 if row[column] == level else 0.0 for row in rows])
            )
    design = np.column_stack(design_cols)
    beta, *_ = np.linalg.lstsq(design, y, rcond=None)
    residual_std = float(np.sqrt(np.mean((y - design @ beta) ** 2)))

    estimate = float(beta[0])
    transferred, non_shareable = [], []
    for column in factor_cols:
        level = target.get(column)
        if level in levels_by_col[column]:
            transferred.append(column)
            index = coefficient_for.get((column, level))
            if index is not None:
                estimate += float(beta[index])
        else:
            non_shareable.append(column)
    spread = 2.0 * residual_std
    return OutcomePrediction(
        outcome=outcome_col,
        estimate=estimate,
        interval=(estimate - spread, estimate + spread),
        method="additive",
        transferred=tuple(transferred),
        non_shareable=tuple(non_shareable),
        n_rows=len(rows),
    )


def predict(
    table: RunTable,
    graph: CausalGraph,
    target: Mapping[str, object],
) -> PredictionReport:
    """Predict every outcome column for a full factor assignment.

    The target must assign a value to each factor column feeding some
    outcome (per the graph); unseen levels are allowed and reported, but
    missing assignments are not. Outcome columns with no recorded values
    are skipped with a note.
    """
    if not table.rows:
        raise EmptyTable("cannot predict from an empty table")
    for column in target:
        table.require(column)

    outcome_cols = table.outcome_columns()
    factors_for: dict[str, list[str]] = {}
    needed: set[str] = set()
    for outcome_col in outcome_cols:
        node = graph.node_for_column(outcome_col)
        cols: list[str] = []
        for parent in graph.parents(node):
            for column in graph.columns_for_node(parent, table):
                if column not in cols:
                    cols.append(column)
        factors_for[outcome_col] = cols
        needed.update(cols)
    missing = sorted(needed - set(target))
    if missing:
        raise UnknownColumn(f"target does not assign factor columns {missing}")

    predictions = []
    notes = ["additive factor-effects model; interactions not modeled"]
    for outcome_col in outcome_cols:
        entry = predict_outcome(table, factors_for[outcome_col], target, outcome_col)
        if entry is None:
            notes.append(f"{outcome_col}: no recorded values, skipped")
        else:
            predictions.append(entry)
    return PredictionReport(
        target=tuple(sorted(target.items())),
        outcomes=tuple(predictions),
        notes=tuple(notes),
    )
