"""Structural Hamming distance between predicted and true adjacency.

Both inputs arrive as adjacency CSVs with a header of variable names.
Columns are aligned by name before comparison, so the model's column order
does not have to match the ground truth's. The value is the count of
off-diagonal entries where the two matrices disagree.
"""

import csv
import json


def read_adjacency(path):
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    names = rows[0]
    matrix = [[int(v) for v in row] for row in rows[1:]]
    if len(matrix) != len(names) or any(len(row) != len(names) for row in matrix):
        raise SystemExit(f"{path}: adjacency is not square")
    return names, matrix


def main():
    with open("inputs.json", encoding="utf-8") as fh:
        inputs = json.load(fh)
    pred_names, pred = read_adjacency(inputs["predicted_graph"]["path"])
    true_names, true = read_adjacency(inputs["true_graph"]["path"])
    if sorted(pred_names) != sorted(true_names):
        raise SystemExit(f"variable sets differ: {pred_names} vs {true_names}")

    order = [pred_names.index(name) for name in true_names]
    distance = 0
    for i in range(len(true_names)):
        for j in range(len(true_names)):
            if i == j:
                continue
            if pred[order[i]][order[j]] != true[i][j]:
                distance += 1

    with open("result.json", "w", encoding="utf-8") as fh:
        json.dump({"value": float(distance)}, fh)


if __name__ == "__main__":
    main()
