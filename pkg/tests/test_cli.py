"""Console client: config parsing and commands against a live server."""

import json
import os
import shutil
import threading
import time
from pathlib import Path
from types import SimpleNamespace

import pytest
import uvicorn

import causalbench
from causalbench.cli import (
    MalformedConfig,
    MissingConfig,
    load_config,
    parse_config,
    write_config,
)
from causalbench.cli.main import main
from causalbench.core import canonical_dumps
from causalbench.registry import RegistryStore
from causalbench.server import create_app

from fixtures_lib import complete_run, make_context, stored_context

REFERENCE_DIR = Path(causalbench.__file__).parent / "data" / "reference_components"
PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


class TestConfig:
    def test_minimal_file_gets_defaults(self):
        config = parse_config("server_url=http://example.test:9\napi_key=cbk_x\n")
        assert config.server_url == "http://example.test:9"
        assert config.api_key == "cbk_x"
        assert config.default_limits.timeout_s == 300.0

    def test_comments_and_blank_lines(self):
        config = parse_config("# hi\n\napi_key=k\n")
        assert config.api_key == "k"

    def test_env_key_overrides_file(self, tmp_path, monkeypatch):
        path = tmp_path / "config"
        path.write_text("api_key=from-file\n")
        monkeypatch.setenv("CB_API_KEY", "from-env")
        assert load_config(path).api_key == "from-env"

    def test_missing_file(self, tmp_path):
        with pytest.raises(MissingConfig):
            load_config(tmp_path / "absent")

    def test_malformed_line_reports_position(self):
        with pytest.raises(MalformedConfig) as err:
            parse_config("api_key=k\njust words\n", source="cfg")
        assert "cfg:2" in str(err.value)

    def test_unknown_field_is_named(self):
        with pytest.raises(MalformedConfig) as err:
            parse_config("api_keey=k\n")
        assert "api_keey" in str(err.value)

    def test_bad_url(self):
        with pytest.raises(MalformedConfig):
            parse_config("server_url=ftp://wat\n")

    def test_bad_limit_value(self):
        with pytest.raises(MalformedConfig) as err:
            parse_config("limit_timeout_s=soon\n")
        assert "limit_timeout_s" in str(err.value)

    def test_limits_are_applied(self):
        config = parse_config("limit_timeout_s=7.5\nlimit_max_output_bytes=100\n")
        assert config.default_limits.timeout_s == 7.5
        assert config.default_limits.max_output_bytes == 100

    def test_write_config_round_trip(self, tmp_path):
        path = write_config(tmp_path / "cfg", api_key="cbk_y")
        assert (path.stat().st_mode & 0o777) == 0o600
        assert load_config(path).api_key == "cbk_y"


@pytest.fixture(scope="module")
def live(tmp_path_factory):
    """One real HTTP server for the whole module; per-test isolation comes
    from distinct component names and fresh working files."""
    root = tmp_path_factory.mktemp("live")
    store = RegistryStore(root / "store")
    keys = {
        "alice": store.create_user("alice", "Alice"),
        "bob": store.create_user("bob", "Bob"),
    }
    config = uvicorn.Config(
        create_app(store), host="127.0.0.1", port=0, log_level="warning"
    )
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    deadline = time.monotonic() + 10
    while not server.started:
        if time.monotonic() > deadline:
            raise RuntimeError("server did not start")
        time.sleep(0.01)
    port = server.servers[0].sockets[0].getsockname()[1]
    yield SimpleNamespace(
        url=f"http://127.0.0.1:{port}", store=store, keys=keys, root=root
    )
    server.should_exit = True
    thread.join(timeout=5)
    store.close()


@pytest.fixture
def cb(live, tmp_path, capsys, monkeypatch):
    """Invoke `cb` in-process with a config pointing at the live server."""
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("CB_API_KEY", raising=False)
    config_path = tmp_path / "config"
    config_path.write_text(
        f"server_url={live.url}\napi_key={live.keys['alice']}\n"
        "limit_timeout_s=60\n"
    )

    def invoke(*argv, key=None):
        if key is not None:
            config_path.write_text(f"server_url={live.url}\napi_key={key}\n")
        code = main(["--config", str(config_path), *argv])
        captured = capsys.readouterr()
        return SimpleNamespace(code=code, out=captured.out, err=captured.err)

    invoke.tmp = tmp_path
    return invoke


def authoring_dir(tmp_path, name: str, rename: str | None = None) -> str:
    """Copy a shipped reference component and optionally rename it."""
    target = tmp_path / f"src-{rename or name}"
    shutil.copytree(REFERENCE_DIR / name, target)
    if rename:
        decl = json.loads((target / "component.json").read_text())
        old_name, _, version = decl["descriptor"]["id"].rpartition("@")
        decl["descriptor"]["id"] = f"{rename}@{version}"
        (target / "component.json").write_text(json.dumps(decl))
    return str(target)


def upload_triple(cb, prefix: str):
    """Upload renamed copies of the shipped triple; returns their ids."""
    ids = []
    for name, kind in (
        ("toy-scm", "dataset"),
        ("threshold-model", "model"),
        ("shd-metric", "metric"),
    ):
        directory = authoring_dir(cb.tmp, name, rename=f"ref/{prefix}-{name}")
        result = cb("upload", kind, directory)
        assert result.code == 0, result.err
        ids.append(result.out.strip())
    return ids


class TestBasicCommands:
    def test_init_config(self, cb, tmp_path):
        target = tmp_path / "fresh-config"
        first = cb("init-config", "--path", str(target), "--key", "cbk_z")
        assert first.code == 0
        assert str(target) in first.out

        again = cb("init-config", "--path", str(target))
        assert again.code == 1
        forced = cb("init-config", "--path", str(target), "--force")
        assert forced.code == 0

    def test_whoami(self, cb):
        result = cb("whoami")
        assert (result.code, result.out.strip()) == (0, "alice")

    def test_whoami_json_is_canonical(self, cb):
        result = cb("whoami", "--json")
        assert result.out.strip() == canonical_dumps({"user": "alice"})

    def test_bad_key_is_user_error(self, cb):
        result = cb("whoami", key="cbk_wrong")
        assert result.code == 1
        assert "unauthenticated" in result.err

    def test_unreachable_server_is_io_error(self, tmp_path, capsys):
        config = tmp_path / "cfg"
        config.write_text("server_url=http://127.0.0.1:9\napi_key=k\n")
        assert main(["--config", str(config), "whoami"]) == 2
        assert "cannot reach" in capsys.readouterr().err

    def test_missing_config_suggests_init(self, tmp_path, capsys):
        assert main(["--config", str(tmp_path / "none"), "whoami"]) == 1
        assert "init-config" in capsys.readouterr().err

    def test_unknown_flag_is_user_error(self, cb):
        assert cb("whoami", "--frobnicate").code == 1


class TestComponentCommands:
    def test_upload_download_list(self, cb, live):
        directory = authoring_dir(cb.tmp, "toy-scm", rename="ref/updl-scm")
        result = cb("upload", "dataset", directory)
        assert result.code == 0
        assert result.out.strip() == "ref/updl-scm@1"

        duplicate = cb("upload", "dataset", directory)
        assert duplicate.code == 1
        assert "name_taken" in duplicate.err

        bumped = cb("upload", "dataset", directory, "--new-version")
        assert (bumped.code, bumped.out.strip()) == (0, "ref/updl-scm@2")

        out_file = cb.tmp / "fetched.tar.gz"
        downloaded = cb("download", "ref/updl-scm@1", "--out", str(out_file))
        assert downloaded.code == 0
        record, payload = live.store.fetch("ref/updl-scm@1", "alice")
        assert out_file.read_bytes() == payload

        listing = cb("list", "datasets", "--q", "updl", "--json")
        body = json.loads(listing.out)
        assert body["total"] == 2
        # newest version of a name sorts first
        assert body["items"][0]["descriptor"]["id"] == "ref/updl-scm@2"

        human = cb("list", "datasets", "--q", "updl")
        assert "ref/updl-scm@1\tprivate\tmutable" in human.out

    def test_upload_kind_mismatch(self, cb):
        directory = authoring_dir(cb.tmp, "toy-scm", rename="ref/mismatch-scm")
        result = cb("upload", "model", directory)
        assert result.code == 1
        assert "kind" in result.err

    def test_upload_missing_declaration(self, cb, tmp_path):
        empty = tmp_path / "empty-dir"
        empty.mkdir()
        result = cb("upload", "dataset", str(empty))
        assert result.code == 1

    def test_download_unknown_component(self, cb):
        result = cb("download", "ref/ghost@1")
        assert result.code == 1
        assert "unknown_component" in result.err


class TestWorkflow:
    def test_scenario_upload_run_publish(self, cb, live):
        """The full console loop: upload, declare, validate, run, upload, publish."""
        did, mid, aid = upload_triple(cb, "flow")

        hyper = {mid: [{"threshold": t} for t in (0.25, 0.75)]}
        (cb.tmp / "hyper.json").write_text(json.dumps(hyper))
        declared = cb(
            "context", "new",
            "--dataset", did, "--model", mid, "--metric", aid,
            "--hyper", str(cb.tmp / "hyper.json"),
            "--out", str(cb.tmp / "ctx.json"),
        )
        assert declared.code == 0, declared.err
        context_id = declared.out.strip()
        assert context_id.startswith("ctx-")
        assert json.loads((cb.tmp / "ctx.json").read_text())["context_id"] == context_id

        validated = cb("context", "validate", str(cb.tmp / "ctx.json"))
        assert validated.code == 0, validated.err
        assert validated.out.count("ok\t") == 2

        executed = cb("run", "--context", str(cb.tmp / "ctx.json"))
        assert executed.code == 0, executed.err
        run_id = executed.out.strip()
        run_file = cb.tmp / f"run-{run_id}.json"
        saved = json.loads(run_file.read_text())
        assert saved["executed_by"] == "alice"
        statuses = {r["status"] for r in saved["results"]}
        assert statuses == {"ok"}, saved["results"]

        uploaded = cb("upload-run", str(run_file))
        assert (uploaded.code, uploaded.out.strip()) == (0, run_id)

        shown = cb("list", "runs", "--context", context_id)
        assert run_id in shown.out

        published = cb("publish", "run", run_id)
        assert published.code == 0
        identifier = published.out.strip()
        assert identifier.startswith("10.70000/cb.")

        republished = cb("publish", "run", run_id)
        assert (republished.code, republished.out.strip()) == (0, identifier)

        blocked = cb("delete", "component", did)
        assert blocked.code == 1
        assert "permanent" in blocked.err

    def test_validate_flags_task_mismatch(self, cb):
        did, mid, aid = upload_triple(cb, "mismatch")
        effect_dir = authoring_dir(cb.tmp, "shd-metric", rename="ref/mismatch-pehe")
        decl_path = Path(effect_dir) / "component.json"
        decl = json.loads(decl_path.read_text())
        decl["descriptor"]["signature"]["task"] = "causal-effect-estimation"
        decl_path.write_text(json.dumps(decl))
        result = cb("upload", "metric", effect_dir)
        assert result.code == 0

        declared = cb(
            "context", "new",
            "--dataset", did, "--model", mid, "--metric", "ref/mismatch-pehe@1",
            "--out", str(cb.tmp / "bad-ctx.json"),
        )
        assert declared.code == 0, declared.err

        validated = cb("context", "validate", str(cb.tmp / "bad-ctx.json"))
        assert validated.code == 1
        assert "incompatible" in validated.out

    def test_suggest_partitions(self, cb):
        did, mid, aid = upload_triple(cb, "sugg")
        result = cb("suggest", "--dataset", did, "--for", "models", mid)
        assert result.code == 0
        assert f"suitable\t{mid}" in result.out

    def test_delete_context_and_run(self, cb):
        did, mid, aid = upload_triple(cb, "del")
        declared = cb(
            "context", "new",
            "--dataset", did, "--model", mid, "--metric", aid,
            "--out", str(cb.tmp / "del-ctx.json"),
        )
        context_id = declared.out.strip()
        removed = cb("delete", "context", context_id)
        assert (removed.code, removed.out.strip()) == (0, f"deleted {context_id}")


def seed_analysis_context(live, prefix: str):
    from fixtures_lib import dataset_payload, metric_payload, model_payload

    d_desc, d_payload = dataset_payload(name=f"seed/{prefix}-scm")
    m_desc, m_payload = model_payload(name=f"seed/{prefix}-model")
    a_desc, a_payload = metric_payload(name=f"seed/{prefix}-shd")
    did = live.store.register_component("dataset", d_desc, d_payload, "alice")
    mid = live.store.register_component("model", m_desc, m_payload, "alice")
    aid = live.store.register_component("metric", a_desc, a_payload, "alice")
    context = make_context(
        did, mid, aid, hyper_family={str(mid): [{"threshold": t} for t in (0.25, 0.75)]}
    )
    context = stored_context(live.store, context, "alice")
    run = complete_run(context, executed_by="alice")
    live.store.save_run(run, "alice")
    return context


class TestAnalyzeCommands:
    def test_slice_table_csv_and_plot(self, cb, live):
        context = seed_analysis_context(live, "slice")
        plain = cb(
            "analyze", "slice", "--context-id", context.context_id,
            "--group-by", "model", "--agg", "time.wall_time_s:mean",
        )
        assert plain.code == 0, plain.err
        header, row = plain.out.strip().splitlines()
        assert header.split("\t") == ["model", "mean.time.wall_time_s", "n.time.wall_time_s"]
        assert row.split("\t")[1] == "0.1"

        csv_path = cb.tmp / "means.csv"
        png_path = cb.tmp / "means.png"
        rendered = cb(
            "analyze", "slice", "--context-id", context.context_id,
            "--group-by", "model", "--agg", "time.wall_time_s:mean",
            "--csv", str(csv_path), "--plot", str(png_path),
        )
        assert rendered.code == 0, rendered.err
        assert csv_path.read_text().splitlines()[0] == (
            "model,mean.time.wall_time_s,n.time.wall_time_s"
        )
        assert png_path.read_bytes()[:8] == PNG_MAGIC

    def test_slice_where_filter(self, cb, live):
        context = seed_analysis_context(live, "where")
        result = cb(
            "analyze", "slice", "--context-id", context.context_id,
            "--where", "hyper.threshold=0.25", "--group-by", "hyper.threshold",
            "--agg", "accuracy.*:count",
        )
        assert result.code == 1
        assert "unknown_column" in result.err

        result = cb(
            "analyze", "slice", "--context-id", context.context_id,
            "--where", "hyper.threshold=0.25", "--group-by", "hyper.threshold",
            "--agg", "time.wall_time_s:count",
        )
        assert result.code == 0
        assert result.out.strip().splitlines()[1].split("\t")[0] == "0.25"

    def test_pareto_front_csv_and_plot(self, cb, live):
        context = seed_analysis_context(live, "pareto")
        csv_path = cb.tmp / "front.csv"
        png_path = cb.tmp / "front.png"
        result = cb(
            "analyze", "pareto", "--context-id", context.context_id,
            "--objective", "time.wall_time_s:lower-better",
            "--objective", "res.peak_cpu_memory_bytes:lower-better",
            "--csv", str(csv_path), "--plot", str(png_path),
        )
        assert result.code == 0, result.err
        lines = csv_path.read_text().splitlines()
        assert lines[0] == "scenario_key,time.wall_time_s,res.peak_cpu_memory_bytes"
        assert len(lines) == 3  # both scenarios tie on every objective
        assert png_path.read_bytes()[:8] == PNG_MAGIC

        plain = cb(
            "analyze", "pareto", "--context-id", context.context_id,
            "--objective", "time.wall_time_s:lower-better",
        )
        assert plain.code == 0
        assert len(plain.out.strip().splitlines()) == 2

    def test_impact_human_and_csv(self, cb, live):
        context = seed_analysis_context(live, "impact")
        result = cb(
            "analyze", "impact", "--context-id", context.context_id,
            "--treatment", "hyper.threshold", "0.25", "0.75",
            "--outcome", "time.wall_time_s",
        )
        assert result.code == 0, result.err
        assert "estimate\t0.0" in result.out

        csv_path = cb.tmp / "impact.csv"
        with_csv = cb(
            "analyze", "impact", "--context-id", context.context_id,
            "--treatment", "hyper.threshold", "0.25", "0.75",
            "--outcome", "time.wall_time_s", "--csv", str(csv_path),
        )
        assert with_csv.code == 0
        assert csv_path.read_text().splitlines()[0] == "stratum,mean_a,mean_b,n_a,n_b"

    def test_impact_no_overlap_is_user_error(self, cb, live):
        context = seed_analysis_context(live, "nooverlap")
        result = cb(
            "analyze", "impact", "--context-id", context.context_id,
            "--treatment", "hyper.threshold", "0.25", "0.9",
            "--outcome", "time.wall_time_s",
        )
        assert result.code == 1
        assert "no_overlap" in result.err

    def test_predict(self, cb, live):
        from causalbench.analysis import assemble_virtual_run, default_graph

        context = seed_analysis_context(live, "predict")
        table, _ = assemble_virtual_run(live.store, context, "alice")
        graph = default_graph()
        needed = set()
        for outcome in table.outcome_columns():
            for parent in graph.parents(graph.node_for_column(outcome)):
                needed.update(graph.columns_for_node(parent, table))
        target_flags = []
        for column in sorted(needed):
            value = table.rows[0][column]
            target_flags += ["--target", f"{column}={json.dumps(value)}"]

        result = cb(
            "analyze", "predict", "--context-id", context.context_id,
            *target_flags, "--json",
        )
        assert result.code == 0, result.err
        prediction = json.loads(result.out)["prediction"]
        wall = next(
            o for o in prediction["outcomes"] if o["outcome"] == "time.wall_time_s"
        )
        assert wall["method"] == "exact-cell"
        assert wall["estimate"] == pytest.approx(0.1)

    def test_recommend_orders_gaps_first(self, cb, live):
        context = seed_analysis_context(live, "recommend")
        result = cb(
            "analyze", "recommend", "--context-id", context.context_id,
            "--space", "hyper.threshold=0.25,0.5,0.75", "-k", "3",
        )
        assert result.code == 0, result.err
        first = result.out.strip().splitlines()[0]
        assert '"hyper.threshold":0.5' in first
        assert "covering_rows=0" in first

        csv_path = cb.tmp / "recs.csv"
        with_csv = cb(
            "analyze", "recommend", "--context-id", context.context_id,
            "--space", "hyper.threshold=0.25,0.5,0.75", "-k", "3",
            "--csv", str(csv_path),
        )
        assert with_csv.code == 0
        lines = csv_path.read_text().splitlines()
        assert lines[0] == "hyper.threshold,covering_rows,interval_width"
        assert lines[1].startswith("0.5,0")

    def test_unknown_context_is_user_error(self, cb):
        result = cb(
            "analyze", "slice", "--context-id", "ctx-missing",
        )
        assert result.code == 1
        assert "unknown_subject" in result.err
