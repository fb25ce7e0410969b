"""Run flattening, slicing/dicing, the factor graph, and file renderings."""

import dataclasses
import json
import random

import pytest

from causalbench.analysis import (
    FACTOR,
    OUTCOME,
    CausalGraph,
    InvalidGraph,
    RunTable,
    UnknownColumn,
    UnknownNode,
    build_table,
    default_graph,
    load_graph,
    plot_group_means,
    plot_tradeoff,
    slice_table,
    write_csv,
)
from causalbench.core import ComponentId, SystemProfile

from fixtures_lib import PROFILE, complete_run, dataset_payload, make_context

PROFILE_B = SystemProfile(
    cpu_model="big-cpu",
    physical_cores=32,
    total_memory_bytes=64 * 1024**3,
    os_name_version="Linux big",
    runtime_versions={"python": "3.12", "numpy": "2.1"},
)


def mini_table(columns, rows, catalog=()):
    return RunTable(
        columns=tuple(columns),
        rows=tuple(dict(zip(columns, row)) for row in rows),
        catalog=tuple(catalog),
    )


def reference_runs():
    """Two complete runs (different owners and machines) over 3 scenarios."""
    did = ComponentId.parse("alice/toy-scm@1")
    mid = ComponentId.parse("alice/threshold-model@1")
    aid = ComponentId.parse("alice/shd@1")
    context = make_context(
        did,
        mid,
        aid,
        hyper_family={str(mid): [{"threshold": t} for t in (0.25, 0.5, 0.75)]},
    )
    context = dataclasses.replace(context, context_id="ctx-under-test")
    run_a = complete_run(context, executed_by="alice", accuracy_value=1.0)
    run_b = complete_run(context, executed_by="bob", profile=PROFILE_B, accuracy_value=3.0)
    return context, run_a, run_b


class TestRunTable:
    def test_duplicate_columns_rejected(self):
        with pytest.raises(ValueError):
            RunTable(columns=("a", "a"), rows=())

    def test_values_and_require(self):
        table = mini_table(["a", "b"], [[1, 2], [3, None]])
        assert table.values("b") == [2, None]
        with pytest.raises(UnknownColumn):
            table.values("c")
        with pytest.raises(UnknownColumn):
            table.require("a", "missing")

    def test_catalog_partition(self):
        table = mini_table(
            ["id", "model", "accuracy.m"],
            [["r1", "m1", 0.5]],
            catalog=[("model", FACTOR), ("accuracy.m", OUTCOME)],
        )
        assert table.factor_columns() == ("model",)
        assert table.outcome_columns() == ("accuracy.m",)
        assert table.column_kind("model") == FACTOR
        assert table.column_kind("id") is None

    def test_obj_round_trip(self):
        table = mini_table(
            ["a", "b"], [[1, "x"], [None, True]], catalog=[("a", FACTOR)]
        )
        again = RunTable.from_obj(json.loads(json.dumps(table.to_obj())))
        assert again == table

    def test_csv_rendering(self):
        table = mini_table(
            ["name", "value", "flag"],
            [["plain", None, True], ['quo"te, here', 1.5, False]],
        )
        text = table.to_csv()
        lines = text.splitlines()
        assert lines[0] == "name,value,flag"
        assert lines[1] == "plain,null,true"
        assert lines[2] == '"quo""te, here",1.5,false'
        assert text.endswith("\n")


class TestBuildTable:
    def test_one_row_per_result(self):
        _, run_a, run_b = reference_runs()
        table = build_table([run_a, run_b])
        assert len(table.rows) == 6
        assert [r["run_id"] for r in table.rows[:3]] == [run_a.run_id] * 3
        assert [r["executed_by"] for r in table.rows[3:]] == ["bob"] * 3

    def test_missing_readings_stay_null(self):
        # the fixture records wall/cpu time only: optional gauges must not
        # collapse to 0, which would poison means
        _, run_a, _ = reference_runs()
        table = build_table([run_a])
        assert set(table.values("time.gpu_time_s")) == {None}
        assert set(table.values("res.peak_gpu_memory_bytes")) == {None}
        assert set(table.values("time.wall_time_s")) == {0.1}

    def test_hyper_and_accuracy_columns(self):
        _, run_a, run_b = reference_runs()
        table = build_table([run_a, run_b])
        assert table.values("hyper.threshold") == [0.25, 0.5, 0.75] * 2
        assert table.values("accuracy.alice/shd@1") == [1.0] * 3 + [3.0] * 3
        assert table.column_kind("hyper.threshold") == FACTOR
        assert table.column_kind("accuracy.alice/shd@1") == OUTCOME

    def test_dataset_config_enrichment(self):
        _, run_a, _ = reference_runs()
        descriptor, _ = dataset_payload()
        with_desc = build_table([run_a], datasets=[descriptor])
        assert set(with_desc.values("data.n_rows")) == {2}
        assert set(with_desc.values("data.n_cols")) == {2}
        without = build_table([run_a])
        assert "data.n_rows" not in without.columns

    def test_profile_fanout(self):
        _, run_a, run_b = reference_runs()
        table = build_table([run_a, run_b])
        assert table.values("hw.cpu_model") == ["test-cpu"] * 3 + ["big-cpu"] * 3
        assert table.values("sw.numpy") == [None] * 3 + ["2.1"] * 3
        hashes = set(table.values("hw.profile_hash"))
        assert len(hashes) == 2

    def test_same_scenario_key_rows_coexist(self):
        _, run_a, run_b = reference_runs()
        table = build_table([run_a, run_b])
        keys = table.values("scenario_key")
        assert keys[:3] == keys[3:]
        assert len(set(table.values("run_id"))) == 2

    def test_deterministic(self):
        _, run_a, run_b = reference_runs()
        assert build_table([run_a, run_b]) == build_table([run_a, run_b])

    def test_no_runs(self):
        table = build_table([])
        assert table.rows == ()
        assert "scenario_key" in table.columns


class TestSliceTable:
    def grouped(self):
        return mini_table(
            ["model", "status", "time.wall_time_s"],
            [
                ["m1", "ok", 2.0],
                ["m1", "ok", 4.0],
                ["m2", "ok", 6.0],
                ["m2", "model_failed", None],
            ],
        )

    def test_group_mean(self):
        out = slice_table(
            self.grouped(),
            group_by=["model"],
            aggregates=[("time.wall_time_s", "mean")],
        )
        assert out.columns == ("model", "mean.time.wall_time_s", "n.time.wall_time_s")
        assert [tuple(r.values()) for r in out.rows] == [
            ("m1", 3.0, 2),
            ("m2", 6.0, 1),
        ]

    def test_filter_then_aggregate(self):
        out = slice_table(
            self.grouped(),
            filters=[("status", "eq", "ok")],
            aggregates=[("time.wall_time_s", "max"), ("time.wall_time_s", "count")],
        )
        assert len(out.rows) == 1
        row = out.rows[0]
        assert row["max.time.wall_time_s"] == 6.0
        assert row["count.time.wall_time_s"] == 3

    def test_filter_only_keeps_catalog(self):
        table = mini_table(
            ["model", "y"], [["m1", 1.0], ["m2", 2.0]], catalog=[("model", FACTOR)]
        )
        out = slice_table(table, filters=[("y", "gt", 1.5)])
        assert out.catalog == table.catalog
        assert [r["model"] for r in out.rows] == ["m2"]

    def test_comparison_and_membership_ops(self):
        table = mini_table(["v"], [[1.0], [2.0], [3.0], [None]])
        assert len(slice_table(table, filters=[("v", "lt", 2.5)]).rows) == 2
        assert len(slice_table(table, filters=[("v", "ge", 2.0)]).rows) == 2
        assert len(slice_table(table, filters=[("v", "in", [1.0, 3.0])]).rows) == 2
        assert len(slice_table(table, filters=[("v", "ne", 2.0)]).rows) == 2

    def test_null_handling_in_filters(self):
        table = mini_table(["v"], [[1.0], [None]])
        # null cells fail every comparison but match isnull
        assert len(slice_table(table, filters=[("v", "lt", 100.0)]).rows) == 1
        assert len(slice_table(table, filters=[("v", "isnull", None)]).rows) == 1
        assert len(slice_table(table, filters=[("v", "notnull", None)]).rows) == 1

    def test_incomparable_filter_is_no_match(self):
        table = mini_table(["v"], [["text"], [2.0]])
        assert len(slice_table(table, filters=[("v", "lt", 100.0)]).rows) == 1

    def test_all_null_group_reports_empty_support(self):
        table = mini_table(["g", "v"], [["a", None], ["a", None]])
        out = slice_table(table, group_by=["g"], aggregates=[("v", "mean")])
        row = out.rows[0]
        assert row["mean.v"] is None
        assert row["n.v"] == 0

    def test_group_ordering(self):
        table = mini_table(
            ["g", "v"], [[None, 1.0], ["b", 1.0], [2, 1.0], [10, 1.0], ["a", 1.0]]
        )
        out = slice_table(table, group_by=["g"], aggregates=[("v", "count")])
        assert [r["g"] for r in out.rows] == [2, 10, "a", "b", None]

    def test_unknown_column_op_aggregate(self):
        table = mini_table(["v"], [[1.0]])
        with pytest.raises(UnknownColumn):
            slice_table(table, filters=[("w", "eq", 1)])
        with pytest.raises(UnknownColumn):
            slice_table(table, filters=[("v", "like", 1)])
        with pytest.raises(UnknownColumn):
            slice_table(table, group_by=["w"])
        with pytest.raises(UnknownColumn):
            slice_table(table, aggregates=[("v", "stdev")])

    def test_matches_naive_reference(self):
        # independent re-computation with plain dict loops
        for seed in range(20):
            rng = random.Random(seed)
            rows = [
                [
                    rng.choice(["a", "b", "c", None]),
                    rng.choice([None, rng.uniform(-5, 5)]),
                ]
                for _ in range(rng.randint(1, 40))
            ]
            table = mini_table(["g", "v"], rows)
            out = slice_table(
                table,
                group_by=["g"],
                aggregates=[("v", "mean"), ("v", "min"), ("v", "count")],
            )

            expected: dict = {}
            for g, v in rows:
                expected.setdefault(g, []).append(v)
            assert len(out.rows) == len(expected)
            for row in out.rows:
                cells = [v for v in expected[row["g"]] if v is not None]
                assert row["count.v"] == len(cells)
                assert row["n.v"] == len(cells)
                if cells:
                    assert row["mean.v"] == pytest.approx(sum(cells) / len(cells))
                    assert row["min.v"] == min(cells)
                else:
                    assert row["mean.v"] is None
                    assert row["min.v"] is None


class TestCausalGraph:
    def chain(self):
        return CausalGraph(
            nodes=(("a", FACTOR), ("b", FACTOR), ("y", OUTCOME)),
            edges=(("a", "b"), ("b", "y")),
        )

    def test_parents_and_ancestors(self):
        g = self.chain()
        assert g.parents("y") == ("b",)
        assert g.parents("a") == ()
        assert g.ancestors("y") == ("a", "b")
        assert g.ancestors("a") == ()

    def test_cycle_rejected(self):
        with pytest.raises(InvalidGraph):
            CausalGraph(
                nodes=(("a", FACTOR), ("b", FACTOR)),
                edges=(("a", "b"), ("b", "a")),
            )

    def test_outcome_cannot_cause_factor(self):
        with pytest.raises(InvalidGraph):
            CausalGraph(
                nodes=(("a", FACTOR), ("y", OUTCOME)),
                edges=(("y", "a"),),
            )

    def test_undeclared_endpoint_rejected(self):
        with pytest.raises(InvalidGraph):
            CausalGraph(nodes=(("a", FACTOR),), edges=(("a", "ghost"),))

    def test_duplicate_node_rejected(self):
        with pytest.raises(InvalidGraph):
            CausalGraph(nodes=(("a", FACTOR), ("a", OUTCOME)), edges=())

    def test_bad_kind_rejected(self):
        with pytest.raises(InvalidGraph):
            CausalGraph(nodes=(("a", "confounder"),), edges=())

    def test_unknown_node_lookup(self):
        with pytest.raises(UnknownNode):
            self.chain().kind("ghost")

    def test_node_for_column(self):
        g = default_graph()
        assert g.node_for_column("model") == "model"
        assert g.node_for_column("hyper.threshold") == "hyper"
        assert g.node_for_column("time.wall_time_s") == "time"
        assert g.node_for_column("accuracy.alice/shd@1") == "accuracy"
        with pytest.raises(UnknownNode):
            g.node_for_column("bogus.thing")

    def test_columns_for_node(self):
        g = default_graph()
        table = mini_table(
            ["model", "hyper.a", "hyper.b", "time.wall_time_s"], [["m", 1, 2, 3.0]]
        )
        assert g.columns_for_node("model", table) == ("model",)
        assert g.columns_for_node("hyper", table) == ("hyper.a", "hyper.b")
        assert g.columns_for_node("dataset", table) == ()

    def test_default_graph_shape(self):
        g = default_graph()
        names = {name for name, _ in g.nodes}
        assert {"dataset", "data", "model", "hyper", "hw", "sw"} <= names
        assert {"accuracy", "time", "res"} <= names
        assert set(g.parents("time")) == {"data", "model", "hyper", "hw", "sw"}
        assert set(g.parents("accuracy")) == {"data", "model", "hyper"}
        assert "dataset" in g.ancestors("accuracy")

    def test_obj_round_trip_and_load(self, tmp_path):
        g = self.chain()
        again = CausalGraph.from_obj(json.loads(json.dumps(g.to_obj())))
        assert again == g
        path = tmp_path / "graph.json"
        path.write_text(json.dumps(g.to_obj()), encoding="utf-8")
        assert load_graph(path) == g


class TestReportFiles:
    def table(self):
        return mini_table(
            ["scenario_key", "model", "time.wall_time_s", "accuracy.shd"],
            [
                ["s1", "m1", 1.0, 4.0],
                ["s2", "m1", 2.0, 1.0],
                ["s3", "m2", 3.0, None],
                ["s4", "m2", 4.0, 0.5],
            ],
        )

    def test_write_csv(self, tmp_path):
        out = write_csv(self.table(), tmp_path / "out" / "table.csv")
        text = out.read_text(encoding="utf-8")
        assert text.splitlines()[0] == "scenario_key,model,time.wall_time_s,accuracy.shd"
        assert "null" in text
        assert len(text.splitlines()) == 5

    def test_plot_group_means(self, tmp_path):
        out = plot_group_means(
            self.table(), "model", "time.wall_time_s", tmp_path / "means.png"
        )
        blob = out.read_bytes()
        assert blob[:8] == b"\x89PNG\r\n\x1a\n"
        assert len(blob) > 1000

    def test_plot_group_means_needs_values(self, tmp_path):
        table = mini_table(["model", "v"], [["m1", None]])
        with pytest.raises(UnknownColumn):
            plot_group_means(table, "model", "v", tmp_path / "never.png")

    def test_plot_tradeoff(self, tmp_path):
        out = plot_tradeoff(
            self.table(),
            [("time.wall_time_s", "lower-better"), ("accuracy.shd", "lower-better")],
            tmp_path / "front.png",
        )
        assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_plot_tradeoff_needs_two_objectives(self, tmp_path):
        with pytest.raises(UnknownColumn):
            plot_tradeoff(
                self.table(), [("time.wall_time_s", "lower-better")], tmp_path / "x.png"
            )
