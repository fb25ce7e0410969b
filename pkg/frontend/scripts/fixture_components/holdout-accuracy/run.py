"""Fraction of estimated effects within tolerance of held-out outcomes.

Both inputs arrive as single-column CSVs with a header; rows are paired by
position. The value is the share of pairs whose absolute difference stays
below the fixed tolerance.
"""

import csv
import json

TOLERANCE = 0.1


def read_column(path):
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    return [float(row[0]) for row in rows[1:]]


def main():
    with open("inputs.json", encoding="utf-8") as fh:
        inputs = json.load(fh)
    estimates = read_column(inputs["effect_estimates"]["path"])
    held_out = read_column(inputs["counterfactuals"]["path"])
    if len(estimates) != len(held_out) or not estimates:
        raise SystemExit("effect estimates and counterfactuals must pair up")

    hits = sum(1 for a, b in zip(estimates, held_out) if abs(a - b) <= TOLERANCE)
    with open("result.json", "w", encoding="utf-8") as fh:
        json.dump({"value": hits / len(estimates)}, fh)


if __name__ == "__main__":
    main()
