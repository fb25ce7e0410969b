"""Correlation-threshold structure learner.

Reads tabular observations, computes pairwise Pearson correlations, and
emits a directed adjacency: an edge i -> j (in column order, i before j)
whenever |corr| meets the threshold. Deliberately naive; it exists to
exercise the plugin protocol end to end, and its mistakes on confounded
pairs are part of the point.
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
    threshold = float(params.get("threshold", 0.5))

    with open(inputs["observations"]["path"], newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    names = rows[0]
    columns = [[float(row[i]) for row in rows[1:]] for i in range(len(names))]

    size = len(names)
    adjacency = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            if abs(pearson(columns[i], columns[j])) >= threshold:
                adjacency[i][j] = 1

    os.makedirs("outputs", exist_ok=True)
    with open(os.path.join("outputs", "predicted_graph.csv"), "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(names)
        for row in adjacency:
            writer.writerow(row)


if __name__ == "__main__":
    main()
