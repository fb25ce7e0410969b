"""Reference structural metric and the adjacency exchange format.

Adjacency matrices travel between plugins as CSV with a header row of
variable names and 0/1 entries. Row i column j = 1 means a directed edge
from variable i to variable j.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

import numpy as np

from .errors import ShapeMismatch


def reference_metric_shd(predicted, true) -> float:
    """Directed structural Hamming distance between two binary adjacencies.

    Counts off-diagonal entries where the matrices disagree. An edge with
    reversed orientation therefore costs 2 (one miss, one extra).
    """
    pred = np.asarray(predicted)
    truth = np.asarray(true)
    for name, mat in (("predicted", pred), ("true", truth)):
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ShapeMismatch(f"{name} adjacency is not square: shape {mat.shape}")
    if pred.shape != truth.shape:
        raise ShapeMismatch(f"shapes differ: {pred.shape} vs {truth.shape}")
    for name, mat in (("predicted", pred), ("true", truth)):
        if mat.size and np.diagonal(mat).any():
            raise ShapeMismatch(f"{name} adjacency has nonzero diagonal")
    diff = (pred != truth)
    if diff.size:
        np.fill_diagonal(diff, False)
    return float(diff.sum())


def write_adjacency_csv(path: Path | str, names: list[str], matrix) -> None:
    mat = np.asarray(matrix, dtype=int)
    if mat.shape != (len(names), len(names)):
        raise ShapeMismatch(f"matrix shape {mat.shape} does not fit {len(names)} names")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(names)
    for row in mat:
        writer.writerow(int(v) for v in row)
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


def read_adjacency_csv(path: Path | str) -> tuple[list[str], np.ndarray]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ShapeMismatch(f"{path}: empty adjacency file")
    names = rows[0]
    body = rows[1:]
    if len(body) != len(names):
        raise ShapeMismatch(
            f"{path}: {len(names)} columns but {len(body)} rows"
        )
    try:
        mat = np.array([[int(v) for v in row] for row in body], dtype=int)
    except ValueError as exc:
        raise ShapeMismatch(f"{path}: non-integer entry: {exc}") from exc
    if mat.size and mat.shape[1] != len(names):
        raise ShapeMismatch(f"{path}: ragged rows")
    return names, mat
