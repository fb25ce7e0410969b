"""Correlation learner with a hard validity gate on its gap setting.

Same edge rule as a plain correlation-threshold learner, but a gap outside
[0, 1] aborts before any work happens. Sweeps that wander out of range
therefore produce failed results instead of silently clamped ones.
"""

import csv
import json
import math
import os


def pearson(xs, ys):
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    dx = [x - mx for x in xs]
    dy = [y - my for y in ys]
    sxy = sum(a * b for a, b in zip(dx, dy))
    sxx = sum(a * a for a in dx)
    syy = sum(b * b for b in dy)
    if sxx == 0.0 or syy == 0.0:
        return 0.0
    return sxy / math.sqrt(sxx * syy)


def main():
    with open("inputs.json", encoding="utf-8") as fh:
        inputs = json.load(fh)
    with open("params.json", encoding="utf-8") as fh:
        params = json.load(fh)
    gap = float(params.get("gap", 0.5))
    if not 0.0 <= gap <= 1.0:
        raise SystemExit(f"gap {gap} outside [0, 1]")

    with open(inputs["observations"]["path"], newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    names = rows[0]
    columns = [[float(row[i]) for row in rows[1:]] for i in range(len(names))]

    size = len(names)
    adjacency = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            if abs(pearson(columns[i], columns[j])) >= gap:
                adjacency[i][j] = 1

    os.makedirs("outputs", exist_ok=True)
    with open(os.path.join("outputs", "predicted_graph.csv"), "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(names)
        for row in adjacency:
            writer.writerow(row)


if __name__ == "__main__":
    main()
