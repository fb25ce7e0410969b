"""Non-dominated subset of points under mixed-direction objectives."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from causalbench.core.types import Direction

from .errors import MissingObjective


def pareto_front(
    points: Sequence[tuple[object, Sequence[float]]],
    objectives: Sequence[tuple[str, Direction | str]],
) -> list:
    """Ids of the points no other point dominates.

    A point is dominated when some other point is at least as good in every
    objective and strictly better in one; ties in all objectives dominate
    nothing, so duplicated optimal points are all kept. Output preserves
    input order.
    """
    if not points:
        return []
    directions = [Direction(d) for _, d in objectives]
    ids = [pid for pid, _ in points]
    rows = []
    for pid, values in points:
        values = list(values)
        if len(values) != len(objectives) or any(v is None for v in values):
            raise MissingObjective(f"point {pid!r} lacks a value for some objective")
        rows.append([float(v) for v in values])
    matrix = np.asarray(rows, dtype=float)
    if np.isnan(matrix).any():
        bad = ids[int(np.argwhere(np.isnan(matrix))[0][0])]
        raise MissingObjective(f"point {bad!r} has a NaN objective value")
    # flip higher-better columns so dominance reads uniformly as minimize
    for j, direction in enumerate(directions):
        if direction is Direction.HIGHER_BETTER:
            matrix[:, j] = -matrix[:, j]

    keep = []
    for i in range(len(ids)):
        no_worse = (matrix <= matrix[i]).all(axis=1)
        strictly_better = (matrix < matrix[i]).any(axis=1)
        if not (no_worse & strictly_better).any():
            keep.append(ids[i])
    return keep


def table_pareto(
    table,
    id_column: str,
    objectives: Iterable[tuple[str, Direction | str]],
) -> list:
    """Pareto front over table rows; rows with a null objective are skipped."""
    objectives = list(objectives)
    table.require(id_column, *[c for c, _ in objectives])
    points = []
    for row in table.rows:
        values = [row.get(c) for c, _ in objectives]
        if any(v is None for v in values):
            continue
        points.append((row.get(id_column), values))
    return pareto_front(points, objectives)
