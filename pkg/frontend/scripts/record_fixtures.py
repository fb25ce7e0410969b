"""Record /v1 API fixtures for the frontend test suite.

Boots a throwaway server on a fresh store, drives the documented user
journey (upload components, declare a context, execute it, upload and
publish the run) through the cb CLI, then captures the JSON responses the
client tests replay. Every expectation frozen here is the server's own
answer; nothing is computed by the client code under test.

Run from the repository root:

    python3 frontend/scripts/record_fixtures.py
"""

from __future__ import annotations

import json
import shutil
import subprocess
import sys
import tempfile
import threading
import time
import urllib.request
from pathlib import Path

import uvicorn

import causalbench
from causalbench.registry import RegistryStore
from causalbench.server.app import create_app

SCRIPT_DIR = Path(__file__).resolve().parent
FIXTURE_DIR = SCRIPT_DIR.parent / "fixtures"
REFERENCE_DIR = Path(causalbench.__file__).parent / "data" / "reference_components"
CRAFTED_DIR = SCRIPT_DIR / "fixture_components"

TOY = "reference/toy-scm@1"
THR1 = "reference/threshold-model@1"
THR2 = "reference/threshold-model@2"
GAP = "web/gap-model@1"
SPIRAL = "web/spiral-pairs@1"
SHD = "reference/shd@1"
HOLDOUT = "web/holdout-accuracy@1"


def start_server(store_dir: Path) -> tuple[RegistryStore, str, int, uvicorn.Server, threading.Thread]:
    store = RegistryStore(store_dir)
    api_key = store.create_user("web", "Web Client")
    server = uvicorn.Server(
        uvicorn.Config(create_app(store), host="127.0.0.1", port=0, log_level="warning")
    )
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    deadline = time.monotonic() + 10
    while not server.started:
        if time.monotonic() > deadline:
            raise RuntimeError("server did not start")
        time.sleep(0.01)
    port = server.servers[0].sockets[0].getsockname()[1]
    return store, api_key, port, server, thread


def main() -> int:
    workdir = Path(tempfile.mkdtemp(prefix="cb-fixtures-"))
    _, api_key, port, server, thread = start_server(workdir / "registry")
    base = f"http://127.0.0.1:{port}"

    config_path = workdir / "config"
    config_path.write_text(
        f"server_url={base}\n"
        f"api_key={api_key}\n"
        f"store_cache_dir={workdir / 'cache'}\n"
        "limit_timeout_s=60\n",
        encoding="utf-8",
    )
    cb = shutil.which("cb")
    if not cb:
        raise RuntimeError("cb console script is not installed")

    def run_cb(*argv: str) -> str:
        proc = subprocess.run(
            [cb, "--config", str(config_path), *argv],
            capture_output=True,
            text=True,
            cwd=workdir,
            timeout=180,
        )
        if proc.returncode != 0:
            raise RuntimeError(f"cb {' '.join(argv)} failed:\n{proc.stdout}{proc.stderr}")
        return proc.stdout

    def api(method: str, path: str, body: dict | None = None) -> dict | list:
        data = None
        headers = {"Authorization": f"Bearer {api_key}", "Accept": "application/json"}
        if body is not None:
            data = json.dumps(body).encode("utf-8")
            headers["Content-Type"] = "application/json"
        request = urllib.request.Request(base + path, data=data, headers=headers, method=method)
        with urllib.request.urlopen(request) as response:
            return json.load(response)

    # -- component zoo ------------------------------------------------------
    print(run_cb("upload", "dataset", str(REFERENCE_DIR / "toy-scm")).strip())
    print(run_cb("upload", "model", str(REFERENCE_DIR / "threshold-model")).strip())
    print(run_cb("upload", "metric", str(REFERENCE_DIR / "shd-metric")).strip())
    print(run_cb("upload", "model", str(REFERENCE_DIR / "threshold-model"), "--new-version").strip())
    print(run_cb("upload", "model", str(CRAFTED_DIR / "gap-model")).strip())
    print(run_cb("upload", "dataset", str(CRAFTED_DIR / "spiral-pairs")).strip())
    print(run_cb("upload", "metric", str(CRAFTED_DIR / "holdout-accuracy")).strip())

    # -- one executed, published run with a deliberate failure row ----------
    hyper = {
        THR1: [{"threshold": t} for t in (0.25, 0.5, 0.72)],
        GAP: [{"gap": 0.4}, {"gap": 1.5}],
    }
    (workdir / "hyper.json").write_text(json.dumps(hyper), encoding="utf-8")
    run_cb(
        "context", "new",
        "--dataset", TOY,
        "--model", THR1,
        "--model", GAP,
        "--metric", SHD,
        "--hyper", str(workdir / "hyper.json"),
        "--out", "context.json",
    )
    context_id = json.loads((workdir / "context.json").read_text(encoding="utf-8"))["context_id"]
    validation = run_cb("context", "validate", "context.json")
    assert all(line.startswith("ok\t") for line in validation.splitlines()), validation

    run_id = run_cb("run", "--context", "context.json", "--out", "run.json").strip()
    run_obj = json.loads((workdir / "run.json").read_text(encoding="utf-8"))
    statuses = sorted(r["status"] for r in run_obj["results"])
    assert statuses == ["model-failed", "ok", "ok", "ok", "ok"], statuses
    assert run_cb("upload-run", "run.json").strip() == run_id

    publication = api("POST", f"/v1/runs/{run_id}/publish")
    assert publication["identifier"].startswith("10.70000/cb."), publication

    # -- plain captures ------------------------------------------------------
    components = api("GET", "/v1/components?page_size=100")
    listed = {item["descriptor"]["id"] for item in components["items"]}
    assert listed == {TOY, THR1, THR2, GAP, SPIRAL, SHD, HOLDOUT}, listed

    runs = api("GET", "/v1/runs")
    run_detail = api("GET", f"/v1/runs/{run_id}")
    assert run_detail["minted_identifier"] == publication["identifier"]
    context_main = api("GET", f"/v1/contexts/{context_id}")

    # -- slice contract captures --------------------------------------------
    unfiltered = api("POST", "/v1/analysis/slice", {"context_id": context_id})
    table = unfiltered["table"]
    assert len(table["rows"]) == 5
    assert any(cell is None for row in table["rows"] for cell in row), "no null cells recorded"
    status_index = table["columns"].index("status")
    assert len({row[status_index] for row in table["rows"]}) == 2

    shd_col = f"accuracy.{SHD}"
    wall_values = sorted(
        row[table["columns"].index("time.wall_time_s")]
        for row in table["rows"]
        if row[table["columns"].index("time.wall_time_s")] is not None
    )
    wall_cut = wall_values[len(wall_values) // 2]
    filter_sets = [
        [["dataset", "eq", TOY]],
        [["status", "eq", "ok"]],
        [["status", "ne", "ok"]],
        [["hyper.threshold", "gt", 0.3]],
        [["hyper.threshold", "le", 0.25]],
        [["hyper.threshold", "in", [0.25, 0.72]]],
        [["hyper.threshold", "lt", 0.25]],
        [["hyper.gap", "notnull", None]],
        [[shd_col, "isnull", None]],
        [["time.wall_time_s", "le", wall_cut]],
        [["dataset", "eq", TOY], ["hyper.threshold", "ge", 0.5]],
        [["status", "eq", "ok"], [shd_col, "lt", 2]],
        [["model", "eq", GAP], ["hyper.gap", "ge", 1.0]],
    ]
    filtered = []
    kept_counts = set()
    for filters in filter_sets:
        response = api("POST", "/v1/analysis/slice", {"context_id": context_id, "filters": filters})
        kept_counts.add(len(response["table"]["rows"]))
        filtered.append({"filters": filters, "table": response["table"]})
    assert 0 in kept_counts and 5 in kept_counts and len(kept_counts) >= 4, kept_counts

    # -- scripted builder states vs server expansion counts ------------------
    T = lambda v: {"threshold": v}
    G = lambda v: {"gap": v}
    selections = [
        {"datasets": [TOY], "models": [THR1], "metrics": [SHD], "hyper_family": {}},
        {"datasets": [TOY], "models": [THR1], "metrics": [SHD],
         "hyper_family": {THR1: [T(0.25)]}},
        {"datasets": [TOY], "models": [THR1], "metrics": [SHD],
         "hyper_family": {THR1: [T(0.25), T(0.5)]}},
        {"datasets": [TOY], "models": [THR1], "metrics": [SHD],
         "hyper_family": {THR1: [T(0.25), T(0.5), T(0.72)]}},
        {"datasets": [TOY, SPIRAL], "models": [THR1], "metrics": [SHD],
         "hyper_family": {THR1: [T(0.25), T(0.5), T(0.72)]}},
        {"datasets": [TOY, SPIRAL], "models": [THR1, GAP], "metrics": [SHD],
         "hyper_family": {THR1: [T(0.25), T(0.5)], GAP: [G(0.4)]}},
        {"datasets": [TOY], "models": [THR1, THR2], "metrics": [SHD],
         "hyper_family": {THR1: [T(0.2), T(0.5), T(0.8)], THR2: [T(0.3), T(0.6)]}},
        {"datasets": [TOY, SPIRAL], "models": [THR1, THR2, GAP], "metrics": [SHD, HOLDOUT],
         "hyper_family": {THR1: [T(0.2), T(0.8)], THR2: [T(0.4), T(0.6)], GAP: [G(0.1), G(0.9)]}},
        {"datasets": [TOY], "models": [GAP], "metrics": [SHD], "hyper_family": {GAP: []}},
        {"datasets": [TOY], "models": [GAP], "metrics": [HOLDOUT],
         "hyper_family": {GAP: [G(0.1), G(0.2), G(0.3), G(0.4)]}},
        {"datasets": [SPIRAL], "models": [THR2], "metrics": [HOLDOUT], "hyper_family": {}},
        {"datasets": [TOY, SPIRAL], "models": [THR2], "metrics": [SHD],
         "hyper_family": {THR2: [T(0.1), T(0.3), T(0.5), T(0.7)]}},
        {"datasets": [TOY], "models": [THR1, GAP], "metrics": [SHD], "hyper_family": {}},
        {"datasets": [TOY, SPIRAL], "models": [THR1, GAP], "metrics": [SHD, HOLDOUT],
         "hyper_family": {THR1: [T(0.6)]}},
        {"datasets": [TOY], "models": [THR1, THR2, GAP], "metrics": [SHD],
         "hyper_family": {THR1: [T(0.2), T(0.5), T(0.8)], THR2: [T(0.4)], GAP: [G(0.3), G(0.7)]}},
        {"datasets": [SPIRAL], "models": [THR1, THR2, GAP], "metrics": [SHD], "hyper_family": {}},
        {"datasets": [TOY, SPIRAL], "models": [THR1, THR2, GAP], "metrics": [SHD],
         "hyper_family": {THR1: [T(0.2), T(0.8)], THR2: [T(0.3), T(0.5), T(0.7)], GAP: [G(0.5)]}},
        {"datasets": [TOY], "models": [THR1], "metrics": [SHD, HOLDOUT],
         "hyper_family": {THR1: [T(0.9)]}},
        {"datasets": [TOY, SPIRAL], "models": [GAP], "metrics": [HOLDOUT],
         "hyper_family": {GAP: [G(0.2), G(0.5), G(0.8)]}},
        {"datasets": [TOY, SPIRAL], "models": [THR1, THR2, GAP], "metrics": [SHD, HOLDOUT],
         "hyper_family": {THR1: [T(0.1), T(0.5), T(0.9)], THR2: [T(0.2), T(0.6)],
                          GAP: [G(0.25), G(0.5), G(0.75)]}},
    ]
    builder_states = []
    for selection in selections:
        saved = api("POST", "/v1/contexts", {"context_id": "pending", **selection})
        coverage = api("POST", "/v1/analysis/slice", {"context_id": saved["context_id"]})["coverage"]
        builder_states.append(
            {
                "selection": selection,
                "context_id": saved["context_id"],
                "server_expansion": len(coverage["matched"]) + len(coverage["unmatched"]),
            }
        )
    assert len(builder_states) == 20
    expansions = {s["server_expansion"] for s in builder_states}
    assert len(expansions) >= 8 and max(expansions) >= 12, sorted(expansions)

    # -- suggest captures for builder highlighting ---------------------------
    suggest_requests = [
        {
            "chosen": {"datasets": [TOY]},
            "candidates": {"models": [THR1, THR2, GAP], "metrics": [SHD, HOLDOUT]},
        },
        {
            "chosen": {"datasets": [SPIRAL]},
            "candidates": {"models": [THR1, GAP], "metrics": [SHD, HOLDOUT]},
        },
        {
            "chosen": {},
            "candidates": {
                "datasets": [TOY, SPIRAL],
                "models": [THR1, THR2, GAP],
                "metrics": [SHD, HOLDOUT],
            },
        },
        {
            "chosen": {"datasets": [TOY], "models": [THR1]},
            "candidates": {"metrics": [SHD, HOLDOUT]},
        },
    ]
    suggest_cases = []
    for request_body in suggest_requests:
        response = api("POST", "/v1/compat/suggest", request_body)
        suggest_cases.append({**request_body, "response": response})
    assert SHD in suggest_cases[0]["response"]["metrics"]["suitable"]
    assert [e["id"] for e in suggest_cases[0]["response"]["metrics"]["incompatible"]] == [HOLDOUT]
    assert [e["id"] for e in suggest_cases[1]["response"]["metrics"]["incompatible"]] == [SHD, HOLDOUT]
    assert suggest_cases[3]["response"]["metrics"]["suitable"] == [SHD]

    # -- recommendations and the builder handoff -----------------------------
    pair = api(
        "POST",
        "/v1/analysis/recommend",
        {"context_id": context_id, "space": {"hyper.threshold": [0.5, 0.9], "model": [THR1, GAP]}, "k": 3},
    )
    assert pair["recommendations"][0]["covering_rows"] == 0, pair["recommendations"][0]
    hyper_only = api(
        "POST",
        "/v1/analysis/recommend",
        {"context_id": context_id, "space": {"hyper.threshold": [0.25, 0.5, 0.9]}, "k": 3},
    )
    assert hyper_only["recommendations"][0]["assignment"] == {"hyper.threshold": 0.9}
    assert hyper_only["recommendations"][0]["covering_rows"] == 0
    recommendations = {
        "base_selection": {
            "datasets": [TOY],
            "models": [THR1, GAP],
            "metrics": [SHD],
            "hyper_family": hyper,
        },
        "pair": {"space": {"hyper.threshold": [0.5, 0.9], "model": [THR1, GAP]}, "response": pair},
        "hyper_only": {"space": {"hyper.threshold": [0.25, 0.5, 0.9]}, "response": hyper_only},
    }

    # -- write everything -----------------------------------------------------
    FIXTURE_DIR.mkdir(parents=True, exist_ok=True)
    fixtures = {
        "components.json": components,
        "runs.json": runs,
        "run_detail.json": run_detail,
        "publish_run.json": publication,
        "context_main.json": context_main,
        "table_unfiltered.json": unfiltered,
        "table_filters.json": filtered,
        "builder_states.json": builder_states,
        "suggest_cases.json": suggest_cases,
        "recommendations.json": recommendations,
    }
    for name, payload in fixtures.items():
        (FIXTURE_DIR / name).write_text(
            json.dumps(payload, indent=2) + "\n", encoding="utf-8"
        )
        print(f"wrote fixtures/{name}")

    server.should_exit = True
    thread.join(timeout=5)
    shutil.rmtree(workdir, ignore_errors=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
