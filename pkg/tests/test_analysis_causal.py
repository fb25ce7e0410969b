"""Effect estimation, Pareto fronts, outcome prediction, recommendations."""

import itertools
import math

import numpy as np
import pytest

from causalbench.analysis import (
    FACTOR,
    OUTCOME,
    CausalGraph,
    EmptyTable,
    InvalidGraph,
    MissingObjective,
    NoOverlap,
    RunTable,
    UnknownColumn,
    bin_column,
    estimate_impact,
    pareto_front,
    predict,
    recommend,
    table_pareto,
)
from causalbench.core import Direction


def mini_table(columns, rows, catalog=()):
    return RunTable(
        columns=tuple(columns),
        rows=tuple(dict(zip(columns, row)) for row in rows),
        catalog=tuple(catalog),
    )


HW_CATALOG = (
    ("hw.kind", FACTOR),
    ("data.size", FACTOR),
    ("time.wall_time_s", OUTCOME),
)

HW_GRAPH = CausalGraph(
    nodes=(("data", FACTOR), ("hw", FACTOR), ("time", OUTCOME)),
    edges=(("data", "hw"), ("data", "time"), ("hw", "time")),
)


def hw_table():
    """Confounded-by-data toy: B looks 2.0 slower, is really 1.0 slower.

    Hand computation. Size-small stratum: A runs 1.0 (x3), B runs 2.0 (x1);
    size-large stratum: A runs 3.0 (x1), B runs 4.0 (x3). Unadjusted means
    are A 1.5, B 3.5 (difference 2.0); within either stratum the gap is 1.0,
    and the count-weighted combination keeps it at 1.0.
    """
    rows = []
    for hw, size, y, n in [
        ("A", "small", 1.0, 3),
        ("A", "large", 3.0, 1),
        ("B", "small", 2.0, 1),
        ("B", "large", 4.0, 3),
    ]:
        rows.extend([[hw, size, y]] * n)
    return mini_table(["hw.kind", "data.size", "time.wall_time_s"], rows, HW_CATALOG)


class TestEstimateImpact:
    def test_deconfounds_worked_example(self):
        est = estimate_impact(
            hw_table(), HW_GRAPH, ("hw.kind", "B", "A"), "time.wall_time_s"
        )
        assert est.unadjusted == pytest.approx(2.0)
        assert est.estimate == pytest.approx(1.0)
        assert est.adjusted_for == ("data",)
        assert est.dropped_strata == 0
        assert [d.stratum for d in est.stratum_details] == [("large",), ("small",)]
        assert est.to_obj()["estimate"] == pytest.approx(1.0)

    def test_swapping_levels_negates(self):
        fwd = estimate_impact(
            hw_table(), HW_GRAPH, ("hw.kind", "B", "A"), "time.wall_time_s"
        )
        rev = estimate_impact(
            hw_table(), HW_GRAPH, ("hw.kind", "A", "B"), "time.wall_time_s"
        )
        assert rev.estimate == pytest.approx(-fwd.estimate)
        assert rev.unadjusted == pytest.approx(-fwd.unadjusted)

    def test_constant_outcome_is_null_effect(self):
        rows = [["A", "small", 5.0], ["B", "small", 5.0], ["A", "large", 5.0], ["B", "large", 5.0]]
        table = mini_table(["hw.kind", "data.size", "time.wall_time_s"], rows, HW_CATALOG)
        est = estimate_impact(table, HW_GRAPH, ("hw.kind", "B", "A"), "time.wall_time_s")
        assert est.estimate == pytest.approx(0.0)
        assert est.unadjusted == pytest.approx(0.0)

    def test_no_adjustment_matches_unadjusted(self):
        graph = CausalGraph(
            nodes=(("hw", FACTOR), ("data", FACTOR), ("time", OUTCOME)),
            edges=(("hw", "time"), ("data", "time")),
        )
        est = estimate_impact(hw_table(), graph, ("hw.kind", "B", "A"), "time.wall_time_s")
        assert est.adjusted_for == ()
        assert est.estimate == pytest.approx(est.unadjusted)

    def test_absent_level_raises(self):
        with pytest.raises(NoOverlap):
            estimate_impact(hw_table(), HW_GRAPH, ("hw.kind", "C", "A"), "time.wall_time_s")

    def test_no_common_stratum_raises(self):
        # arms observed only under disjoint strata: nothing to contrast
        rows = [["A", "small", 1.0], ["A", "small", 2.0], ["B", "large", 3.0]]
        table = mini_table(["hw.kind", "data.size", "time.wall_time_s"], rows, HW_CATALOG)
        with pytest.raises(NoOverlap):
            estimate_impact(table, HW_GRAPH, ("hw.kind", "B", "A"), "time.wall_time_s")

    def test_incomplete_strata_reported_not_counted(self):
        rows = [
            ["A", "small", 1.0],
            ["B", "small", 2.0],
            ["B", "large", 9.0],
        ]
        table = mini_table(["hw.kind", "data.size", "time.wall_time_s"], rows, HW_CATALOG)
        est = estimate_impact(table, HW_GRAPH, ("hw.kind", "B", "A"), "time.wall_time_s")
        assert est.dropped_strata == 1
        assert est.estimate == pytest.approx(1.0)

    def test_null_cells_excluded(self):
        rows = [
            ["A", "small", 1.0],
            ["B", "small", 2.0],
            ["A", "small", None],
            ["B", None, 50.0],
        ]
        table = mini_table(["hw.kind", "data.size", "time.wall_time_s"], rows, HW_CATALOG)
        est = estimate_impact(table, HW_GRAPH, ("hw.kind", "B", "A"), "time.wall_time_s")
        assert est.estimate == pytest.approx(1.0)

    def test_outcome_as_treatment_rejected(self):
        with pytest.raises(InvalidGraph):
            estimate_impact(
                hw_table(), HW_GRAPH, ("time.wall_time_s", 1.0, 2.0), "time.wall_time_s"
            )

    def test_unknown_column_rejected(self):
        with pytest.raises(UnknownColumn):
            estimate_impact(hw_table(), HW_GRAPH, ("hw.ghost", "B", "A"), "time.wall_time_s")

    def test_planted_discrete_confounder_recovered_exactly(self):
        # y is exactly additive, so stratifying on z must return tau and the
        # unadjusted gap must be off by exactly gamma * (E[z|B] - E[z|A])
        graph = CausalGraph(
            nodes=(("z", FACTOR), ("t", FACTOR), ("y", OUTCOME)),
            edges=(("z", "t"), ("z", "y"), ("t", "y")),
        )
        tau, gamma = 1.5, 3.0
        for seed in range(10):
            rng = np.random.RandomState(seed)
            z = rng.randint(0, 2, size=400)
            t = np.where(rng.uniform(size=400) < 0.2 + 0.6 * z, "B", "A")
            y = 1.0 + tau * (t == "B") + gamma * z
            rows = [[int(zi), str(ti), float(yi)] for zi, ti, yi in zip(z, t, y)]
            table = mini_table(
                ["z", "t", "y"],
                rows,
                catalog=[("z", FACTOR), ("t", FACTOR), ("y", OUTCOME)],
            )
            est = estimate_impact(table, graph, ("t", "B", "A"), "y")
            assert est.estimate == pytest.approx(tau, abs=1e-9)
            planted_bias = gamma * (z[t == "B"].mean() - z[t == "A"].mean())
            assert est.unadjusted - tau == pytest.approx(planted_bias, abs=1e-9)

    def test_continuous_confounder_binned_away(self):
        # oracle values pinned offline for this seed: unadjusted 1.6213,
        # quartile-stratified 0.9897 against a true effect of 1.0
        graph = CausalGraph(
            nodes=(("z", FACTOR), ("t", FACTOR), ("y", OUTCOME)),
            edges=(("z", "t"), ("z", "y"), ("t", "y")),
        )
        rng = np.random.RandomState(20260815)
        n, tau, gamma = 2000, 1.0, 2.0
        z = rng.uniform(0.0, 1.0, size=n)
        t = np.where(rng.uniform(size=n) < 0.2 + 0.6 * (z > np.median(z)), "B", "A")
        y = 10.0 + tau * (t == "B") + gamma * z
        table = mini_table(
            ["z", "t", "y"],
            [[float(zi), str(ti), float(yi)] for zi, ti, yi in zip(z, t, y)],
            catalog=[("z", FACTOR), ("t", FACTOR), ("y", OUTCOME)],
        )
        est = estimate_impact(table, graph, ("t", "B", "A"), "y")
        assert abs(est.unadjusted - tau) > 0.5
        assert est.estimate == pytest.approx(tau, abs=0.1)
        assert {d.stratum[0] for d in est.stratum_details} == {"q1", "q2", "q3", "q4"}


class TestBinColumn:
    def test_few_distinct_values_pass_through(self):
        values = [1, 2, 1, 2, None, 4]
        assert bin_column(values) == values

    def test_strings_pass_through(self):
        values = ["a", "b", None]
        assert bin_column(values) == values

    def test_mixed_types_pass_through(self):
        values = [1, "a", 2, 3, 4, 5]
        assert bin_column(values) == values

    def test_continuous_values_binned(self):
        values = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, None]
        binned = bin_column(values)
        assert binned[:2] == ["q1", "q1"]
        assert binned[-2] == "q4"
        assert binned[-1] is None
        assert set(b for b in binned if b) == {"q1", "q2", "q3", "q4"}

    def test_booleans_are_not_numbers(self):
        values = [True, False, True, False, True, False]
        assert bin_column(values) == values


def brute_force_front(points, objectives):
    """Independent O(n^2) dominance check in plain Python."""
    signs = [1.0 if (d if isinstance(d, str) else d.value) == "lower-better" else -1.0
             for _, d in objectives]
    scaled = [[s * v for s, v in zip(signs, values)] for _, values in points]
    keep = []
    for i, (pid, _) in enumerate(points):
        dominated = False
        for j in range(len(points)):
            if j == i:
                continue
            if all(a <= b for a, b in zip(scaled[j], scaled[i])) and any(
                a < b for a, b in zip(scaled[j], scaled[i])
            ):
                dominated = True
                break
        if not dominated:
            keep.append(pid)
    return keep


class TestParetoFront:
    OBJ2 = [("time", "lower-better"), ("error", "lower-better")]

    def test_worked_example(self):
        points = [("p1", [1, 5]), ("p2", [2, 3]), ("p3", [3, 4]), ("p4", [4, 1])]
        assert pareto_front(points, self.OBJ2) == ["p1", "p2", "p4"]

    def test_single_point(self):
        assert pareto_front([("only", [3.0, 4.0])], self.OBJ2) == ["only"]

    def test_duplicate_optima_all_kept_in_order(self):
        points = [("b", [1, 1]), ("a", [1, 1]), ("c", [2, 2])]
        assert pareto_front(points, self.OBJ2) == ["b", "a"]

    def test_empty(self):
        assert pareto_front([], self.OBJ2) == []

    def test_mixed_directions(self):
        points = [("a", [0.9, 10.0]), ("b", [0.8, 5.0]), ("c", [0.7, 20.0])]
        objectives = [("accuracy", "higher-better"), ("time", "lower-better")]
        assert pareto_front(points, objectives) == ["a", "b"]

    def test_direction_enum_accepted(self):
        points = [("a", [1, 5]), ("b", [2, 3])]
        typed = [("x", Direction.LOWER_BETTER), ("y", Direction.LOWER_BETTER)]
        assert pareto_front(points, typed) == pareto_front(points, self.OBJ2)

    def test_missing_objective_rejected(self):
        with pytest.raises(MissingObjective):
            pareto_front([("a", [1.0])], self.OBJ2)
        with pytest.raises(MissingObjective):
            pareto_front([("a", [1.0, None])], self.OBJ2)
        with pytest.raises(MissingObjective):
            pareto_front([("a", [1.0, float("nan")])], self.OBJ2)

    def test_matches_brute_force(self):
        rng = np.random.RandomState(99)
        for _ in range(100):
            n = int(rng.randint(1, 60))
            d = int(rng.randint(1, 5))
            objectives = [
                (f"o{j}", rng.choice(["lower-better", "higher-better"]))
                for j in range(d)
            ]
            # small integer grid makes ties common
            points = [
                (f"p{i}", [float(v) for v in rng.randint(0, 4, size=d)])
                for i in range(n)
            ]
            assert pareto_front(points, objectives) == brute_force_front(
                points, objectives
            )

    def test_monotone_transform_invariance(self):
        rng = np.random.RandomState(5)
        points = [
            (f"p{i}", [float(v) for v in rng.uniform(-3, 3, size=2)])
            for i in range(40)
        ]
        cubed = [(pid, [v**3 for v in values]) for pid, values in points]
        assert pareto_front(points, self.OBJ2) == pareto_front(cubed, self.OBJ2)

    def test_table_pareto_skips_null_rows(self):
        table = mini_table(
            ["scenario_key", "time.wall_time_s", "accuracy.shd"],
            [
                ["s1", 1.0, 5.0],
                ["s2", 2.0, 3.0],
                ["s3", None, 0.0],
                ["s4", 4.0, 1.0],
            ],
        )
        front = table_pareto(
            table,
            "scenario_key",
            [("time.wall_time_s", "lower-better"), ("accuracy.shd", "lower-better")],
        )
        assert front == ["s1", "s2", "s4"]


PRED_CATALOG = (
    ("hw.kind", FACTOR),
    ("data.size", FACTOR),
    ("time.wall_time_s", OUTCOME),
)


class TestPredict:
    def additive_table(self):
        """wall = 1.0 + 0.5*[hw=B] + 2.0*[data=large]; (B, large) never run."""
        rows = [
            ["A", "small", 1.0],
            ["B", "small", 1.5],
            ["A", "large", 3.0],
        ]
        return mini_table(["hw.kind", "data.size", "time.wall_time_s"], rows, PRED_CATALOG)

    def test_additive_transfer_worked_example(self):
        report = predict(
            self.additive_table(), HW_GRAPH, {"hw.kind": "B", "data.size": "large"}
        )
        entry = report.outcome("time.wall_time_s")
        assert entry.estimate == pytest.approx(3.5, abs=1e-9)
        assert entry.method == "additive"
        assert entry.non_shareable == ()
        assert set(entry.transferred) == {"hw.kind", "data.size"}
        # noiseless additive data: residual band collapses
        assert entry.interval[1] - entry.interval[0] == pytest.approx(0.0, abs=1e-9)

    def test_exact_cell_short_circuit(self):
        rows = [
            ["A", "small", 1.0],
            ["A", "small", 3.0],
            ["B", "large", 9.0],
        ]
        table = mini_table(["hw.kind", "data.size", "time.wall_time_s"], rows, PRED_CATALOG)
        entry = predict(table, HW_GRAPH, {"hw.kind": "A", "data.size": "small"}).outcome(
            "time.wall_time_s"
        )
        assert entry.method == "exact-cell"
        assert entry.estimate == pytest.approx(2.0)
        # mean +/- 2 * population std = 2.0 +/- 2.0
        assert entry.interval == (pytest.approx(0.0), pytest.approx(4.0))
        assert entry.n_rows == 2

    def test_exact_cell_consistency_random(self):
        rng = np.random.RandomState(17)
        for _ in range(20):
            rows = [
                [
                    str(rng.choice(["A", "B", "C"])),
                    str(rng.choice(["small", "large"])),
                    float(rng.uniform(0, 10)),
                ]
                for _ in range(30)
            ]
            table = mini_table(
                ["hw.kind", "data.size", "time.wall_time_s"], rows, PRED_CATALOG
            )
            target_row = rows[int(rng.randint(0, 30))]
            target = {"hw.kind": target_row[0], "data.size": target_row[1]}
            entry = predict(table, HW_GRAPH, target).outcome("time.wall_time_s")
            cell = [r[2] for r in rows if r[0] == target_row[0] and r[1] == target_row[1]]
            assert entry.method == "exact-cell"
            assert entry.estimate == pytest.approx(sum(cell) / len(cell), abs=1e-9)

    def test_unseen_level_flagged_with_zero_effect(self):
        rows = [
            ["A", "small", 1.0],
            ["B", "small", 1.0],
            ["A", "large", 3.0],
            ["B", "large", 3.0],
        ]
        table = mini_table(["hw.kind", "data.size", "time.wall_time_s"], rows, PRED_CATALOG)
        entry = predict(table, HW_GRAPH, {"hw.kind": "Z", "data.size": "large"}).outcome(
            "time.wall_time_s"
        )
        assert entry.non_shareable == ("hw.kind",)
        assert entry.transferred == ("data.size",)
        # hw carries no effect here, so the unseen level costs nothing
        assert entry.estimate == pytest.approx(3.0, abs=1e-9)

    def test_random_additive_recovery(self):
        rng = np.random.RandomState(23)
        hw_levels = ["A", "B", "C"]
        size_levels = ["small", "large"]
        for _ in range(20):
            base = float(rng.uniform(1, 5))
            hw_eff = {l: float(rng.uniform(-2, 2)) for l in hw_levels}
            size_eff = {l: float(rng.uniform(-2, 2)) for l in size_levels}
            target = ("C", "large")
            rows = [
                [h, s, base + hw_eff[h] + size_eff[s]]
                for h, s in itertools.product(hw_levels, size_levels)
                if (h, s) != target
            ]
            table = mini_table(
                ["hw.kind", "data.size", "time.wall_time_s"], rows, PRED_CATALOG
            )
            entry = predict(
                table, HW_GRAPH, {"hw.kind": target[0], "data.size": target[1]}
            ).outcome("time.wall_time_s")
            expected = base + hw_eff[target[0]] + size_eff[target[1]]
            assert entry.estimate == pytest.approx(expected, abs=1e-6)

    def test_missing_assignment_rejected(self):
        with pytest.raises(UnknownColumn) as err:
            predict(self.additive_table(), HW_GRAPH, {"hw.kind": "B"})
        assert "data.size" in str(err.value)

    def test_unknown_target_column_rejected(self):
        with pytest.raises(UnknownColumn):
            predict(self.additive_table(), HW_GRAPH, {"ghost": 1, "hw.kind": "A", "data.size": "small"})

    def test_empty_table_rejected(self):
        empty = mini_table(["hw.kind", "data.size", "time.wall_time_s"], [], PRED_CATALOG)
        with pytest.raises(EmptyTable):
            predict(empty, HW_GRAPH, {"hw.kind": "A", "data.size": "small"})

    def test_unrecorded_outcome_skipped_with_note(self):
        table = mini_table(
            ["hw.kind", "data.size", "time.wall_time_s", "time.gpu_time_s"],
            [["A", "small", 1.0, None], ["B", "small", 2.0, None]],
            catalog=PRED_CATALOG + (("time.gpu_time_s", OUTCOME),),
        )
        report = predict(table, HW_GRAPH, {"hw.kind": "A", "data.size": "small"})
        assert [e.outcome for e in report.outcomes] == ["time.wall_time_s"]
        assert any("time.gpu_time_s" in note for note in report.notes)
        assert "additive" in report.notes[0]
        with pytest.raises(UnknownColumn):
            report.outcome("time.gpu_time_s")

    def test_all_null_factor_is_its_own_level(self):
        """A factor that is null in every row (machine has no GPU, say)
        must not block prediction; null matches null in the target."""
        table = mini_table(
            ["hw.kind", "hw.gpu", "data.size", "time.wall_time_s"],
            [
                ["A", None, "small", 1.0],
                ["A", None, "small", 3.0],
                ["B", None, "small", 5.0],
            ],
            catalog=PRED_CATALOG + (("hw.gpu", FACTOR),),
        )
        report = predict(
            table, HW_GRAPH, {"hw.kind": "A", "hw.gpu": None, "data.size": "small"}
        )
        wall = report.outcome("time.wall_time_s")
        assert wall.method == "exact-cell"
        assert wall.estimate == pytest.approx(2.0)
        assert wall.n_rows == 2

    def test_target_without_the_null_level_is_non_shareable(self):
        """Asking for a GPU the table has never seen flags the column."""
        table = mini_table(
            ["hw.kind", "hw.gpu", "data.size", "time.wall_time_s"],
            [
                ["A", None, "small", 1.0],
                ["B", None, "small", 5.0],
            ],
            catalog=PRED_CATALOG + (("hw.gpu", FACTOR),),
        )
        report = predict(
            table, HW_GRAPH, {"hw.kind": "A", "hw.gpu": "H100", "data.size": "small"}
        )
        wall = report.outcome("time.wall_time_s")
        assert "hw.gpu" in wall.non_shareable


REC_GRAPH = CausalGraph(
    nodes=(("dataset", FACTOR), ("model", FACTOR), ("accuracy", OUTCOME)),
    edges=(("dataset", "accuracy"), ("model", "accuracy")),
)

REC_CATALOG = (
    ("dataset", FACTOR),
    ("model", FACTOR),
    ("accuracy.shd", OUTCOME),
)


class TestRecommend:
    def covered_table(self):
        """3 of the 4 dataset x model cells carry runs."""
        rows = [
            ["d1", "m1", 1.0],
            ["d1", "m1", 2.0],
            ["d1", "m2", 1.5],
            ["d2", "m1", 3.0],
        ]
        return mini_table(["dataset", "model", "accuracy.shd"], rows, REC_CATALOG)

    def test_executed_configurations_excluded(self):
        # the grid spans every configuration column, so covered cells are
        # real re-runs and drop out; only the gap survives
        recs = recommend(
            self.covered_table(),
            REC_GRAPH,
            {"dataset": ["d1", "d2"], "model": ["m1", "m2"]},
            k=4,
        )
        assert len(recs) == 1
        assert recs[0].assignment == (("dataset", "d2"), ("model", "m2"))
        assert recs[0].covering_rows == 0

    def test_partial_grid_keeps_covered_cells(self):
        table = mini_table(
            ["dataset", "model", "hyper.t", "accuracy.shd"],
            [
                ["d1", "m_noisy", 0.5, 0.0],
                ["d1", "m_noisy", 0.5, 10.0],
                ["d1", "m_stable", 0.5, 5.0],
                ["d1", "m_stable", 0.5, 5.0],
            ],
            catalog=REC_CATALOG + (("hyper.t", FACTOR),),
        )
        # grid only pins the model: cells are aggregates, not re-runs, so
        # nothing is excluded and wider uncertainty ranks first
        recs = recommend(table, REC_GRAPH, {"model": ["m_noisy", "m_stable"]}, k=5)
        assert [dict(r.assignment)["model"] for r in recs] == ["m_noisy", "m_stable"]
        assert [r.covering_rows for r in recs] == [2, 2]
        assert recs[0].interval_width > recs[1].interval_width

    def test_uncovered_before_covered(self):
        table = mini_table(
            ["dataset", "model", "hyper.t", "accuracy.shd"],
            [["d1", "m1", 0.5, 1.0], ["d1", "m1", 0.5, 9.0]],
            catalog=REC_CATALOG + (("hyper.t", FACTOR),),
        )
        recs = recommend(table, REC_GRAPH, {"model": ["m1", "m2"]}, k=2)
        assert dict(recs[0].assignment)["model"] == "m2"
        assert recs[0].covering_rows == 0
        assert recs[1].covering_rows == 2

    def test_canonical_key_breaks_ties(self):
        table = mini_table(
            ["dataset", "model", "hyper.t", "accuracy.shd"],
            [["d1", "mb", 0.5, 2.0], ["d1", "ma", 0.5, 2.0]],
            catalog=REC_CATALOG + (("hyper.t", FACTOR),),
        )
        recs = recommend(table, REC_GRAPH, {"model": ["mb", "ma"]}, k=2)
        assert [dict(r.assignment)["model"] for r in recs] == ["ma", "mb"]

    def test_k_truncates(self):
        table = self.covered_table()
        space = {"dataset": ["d1", "d2", "d3"], "model": ["m1", "m2"]}
        all_recs = recommend(table, REC_GRAPH, space, k=10)
        assert len(all_recs) == 3  # 6 cells, 3 covered and excluded
        assert len(recommend(table, REC_GRAPH, space, k=2)) == 2
        assert recommend(table, REC_GRAPH, space, k=2) == all_recs[:2]

    def test_deterministic(self):
        space = {"dataset": ["d2", "d1"], "model": ["m2", "m1"]}
        first = recommend(self.covered_table(), REC_GRAPH, space, k=4)
        second = recommend(self.covered_table(), REC_GRAPH, space, k=4)
        assert first == second

    def test_bad_arguments(self):
        table = self.covered_table()
        with pytest.raises(ValueError):
            recommend(table, REC_GRAPH, {"model": ["m1"]}, k=0)
        with pytest.raises(ValueError):
            recommend(table, REC_GRAPH, {}, k=1)
        with pytest.raises(ValueError):
            recommend(table, REC_GRAPH, {"model": []}, k=1)
        with pytest.raises(UnknownColumn):
            recommend(table, REC_GRAPH, {"ghost": ["x"]}, k=1)

    def test_to_obj_shape(self):
        recs = recommend(
            self.covered_table(),
            REC_GRAPH,
            {"dataset": ["d1", "d2"], "model": ["m1", "m2"]},
            k=1,
        )
        obj = recs[0].to_obj()
        assert obj["assignment"] == {"dataset": "d2", "model": "m2"}
        assert obj["covering_rows"] == 0
        assert isinstance(obj["interval_width"], float)
