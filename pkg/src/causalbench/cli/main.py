"""Console front door: one subcommand per workflow step.

Exit codes are stable for scripting: 0 success, 1 user error (bad
arguments, rejected request, failed validation), 2 server or IO error.
Read commands accept ``--json`` and then print exactly one canonical
JSON document on stdout.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import sys
from pathlib import Path

from causalbench.analysis import AnalysisError, RunTable
from causalbench.analysis.report import plot_group_means, plot_tradeoff, write_csv
from causalbench.compat import check_scenario
from causalbench.core import BenchmarkContext, canonical_dumps, expand_context, instrument
from causalbench.core import scenario_key as scenario_key_of
from causalbench.core.errors import CoreError
from causalbench.core.types import descriptor_from_obj
from causalbench.harness import HarnessError, resolve_environment
from causalbench.harness import execute as execute_scenarios
from causalbench.registry import RegistryError
from causalbench.registry.authoring import load_component_dir

from .client import ApiClient, ApiError, RemoteSource, ServerUnreachable, component_path
from .config import (
    DEFAULT_CONFIG_PATH,
    DEFAULT_SERVER_URL,
    CliConfig,
    ConfigError,
    load_config,
    write_config,
)

KIND_BY_PLURAL = {"datasets": "dataset", "models": "model", "metrics": "metric"}


class UsageError(Exception):
    """Bad invocation or bad local input; maps to exit code 1."""


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _scalar(text: str):
    """Parse a flag value as JSON when possible, else keep the raw string."""
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def _kv(text: str) -> tuple[str, object]:
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise UsageError(f"expected KEY=VALUE, got {text!r}")
    return key, _scalar(value)


def _client(args) -> ApiClient:
    return ApiClient(load_config(args.config))


def _emit(args, obj, lines) -> None:
    """JSON mode prints the full document; human mode prints plain lines."""
    if getattr(args, "json", False):
        print(canonical_dumps(obj))
    else:
        for line in lines:
            print(line)


def _read_json_file(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise UsageError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


# --- commands ---------------------------------------------------------


def cmd_init_config(args) -> int:
    target = Path(args.path).expanduser()
    if target.exists() and not args.force:
        raise UsageError(f"{target} already exists; pass --force to overwrite")
    written = write_config(target, server_url=args.server, api_key=args.key)
    print(written)
    return 0


def cmd_whoami(args) -> int:
    user = _client(args).whoami()
    _emit(args, {"user": user}, [user])
    return 0


def cmd_upload(args) -> int:
    component = load_component_dir(args.directory)
    if component.kind.value != args.kind:
        raise UsageError(
            f"component.json declares kind {component.kind.value!r}, command says {args.kind!r}"
        )
    form = {
        "kind": component.kind.value,
        "descriptor": component.descriptor.to_obj(),
        "metadata": component.metadata,
    }
    if args.new_version:
        owner, slug = component.descriptor.id.name.split("/", 1)
        path = f"/v1/components/{owner}/{slug}/versions"
    else:
        path = "/v1/components"
    payload = component.payload
    body = _client(args).request(
        "POST",
        path,
        data={"component": json.dumps(form)},
        files={"payload": ("payload.tar.gz", payload, "application/gzip")},
    )
    _emit(args, body, [body["id"]])
    return 0


def cmd_download(args) -> int:
    client = _client(args)
    descriptor, payload = RemoteSource(client).fetch_component(args.id)
    if args.out:
        target = Path(args.out)
    else:
        config = load_config(args.config)
        target = config.cache_path() / (args.id.replace("/", "-").replace("@", "-") + ".tar.gz")
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_bytes(payload)
    _emit(args, {"id": args.id, "path": str(target)}, [str(target)])
    return 0


def cmd_list(args) -> int:
    client = _client(args)
    if args.what in KIND_BY_PLURAL:
        params = {
            "kind": KIND_BY_PLURAL[args.what],
            "scope": args.scope,
            "page": args.page,
            "page_size": args.page_size,
        }
        if args.task:
            params["task"] = args.task
        if args.q:
            params["q"] = args.q
        body = client.request("GET", "/v1/components", params=params)
        lines = [
            "\t".join(
                [
                    item["descriptor"]["id"],
                    item["visibility"],
                    "permanent" if item["permanent"] else "mutable",
                ]
            )
            for item in body["items"]
        ]
    elif args.what == "runs":
        params = {"context_id": args.context} if args.context else None
        body = client.request("GET", "/v1/runs", params=params)
        lines = [
            "\t".join([r["run_id"], r["context_id"], r["owner"], r["visibility"]])
            for r in body["items"]
        ]
    else:
        body = client.request("GET", "/v1/contexts")
        lines = [
            "\t".join([c["context_id"], c["owner"], c["visibility"]]) for c in body["items"]
        ]
    _emit(args, body, lines)
    return 0


def cmd_context_new(args) -> int:
    hyper = {}
    if args.hyper:
        hyper = _read_json_file(args.hyper) if Path(args.hyper).is_file() else _scalar(args.hyper)
        if not isinstance(hyper, dict):
            raise UsageError("--hyper must be a JSON object of model id -> settings list")
    obj = {
        "context_id": "pending",
        "datasets": args.dataset,
        "models": args.model,
        "metrics": args.metric,
        "hyper_family": hyper,
    }
    BenchmarkContext.from_obj(obj)  # local shape check before any network call
    context_id = _client(args).save_context(obj)
    obj["context_id"] = context_id
    Path(args.out).write_text(canonical_dumps(obj) + "\n", encoding="utf-8")
    _emit(args, {"context_id": context_id, "path": args.out}, [context_id])
    return 0


def cmd_context_validate(args) -> int:
    context = BenchmarkContext.from_obj(_read_json_file(args.file))
    client = _client(args)
    descriptors: dict[str, object] = {}

    def descriptor_of(component_id: str):
        if component_id not in descriptors:
            record = client.get_component(component_id)
            descriptors[component_id] = descriptor_from_obj(record["kind"], record["descriptor"])
        return descriptors[component_id]

    results = []
    for scenario in expand_context(context):
        report = check_scenario(
            descriptor_of(scenario.dataset),
            descriptor_of(scenario.model),
            [descriptor_of(m) for m in scenario.metrics],
        )
        results.append(
            {
                "scenario_key": scenario_key_of(scenario),
                "compatible": report.compatible,
                "reasons": [f"{port}: {reason}" for port, reason in report.missing],
            }
        )
    all_ok = all(r["compatible"] for r in results)
    lines = [
        ("ok" if r["compatible"] else "incompatible")
        + f"\t{r['scenario_key']}"
        + ("" if r["compatible"] else "\t" + "; ".join(r["reasons"]))
        for r in results
    ]
    _emit(args, {"compatible": all_ok, "scenarios": results}, lines)
    return 0 if all_ok else 1


def cmd_suggest(args) -> int:
    chosen = {}
    for family, ids in (("datasets", args.dataset), ("models", args.model), ("metrics", args.metric)):
        if ids:
            chosen[family] = ids
    body = _client(args).request(
        "POST",
        "/v1/compat/suggest",
        json_body={"chosen": chosen, "candidates": {args.for_kind: args.ids}},
    )
    partition = body[args.for_kind]
    lines = [f"suitable\t{cid}" for cid in partition["suitable"]]
    lines += [
        f"incompatible\t{entry['id']}\t" + "; ".join(entry["reasons"])
        for entry in partition["incompatible"]
    ]
    _emit(args, body, lines)
    return 0


def cmd_run(args) -> int:
    config = load_config(args.config)
    client = ApiClient(config)
    context = BenchmarkContext.from_obj(_read_json_file(args.context))

    limits = config.default_limits
    if args.timeout is not None:
        limits = dataclasses.replace(limits, timeout_s=args.timeout)
    if args.workdir:
        limits = dataclasses.replace(limits, working_dir_root=args.workdir)

    executed_by = client.whoami()
    instrumented = instrument(context, resolve_environment())
    run = execute_scenarios(instrumented, RemoteSource(client), limits, executed_by=executed_by)

    out = args.out or f"run-{run.run_id}.json"
    Path(out).write_text(canonical_dumps(run.to_obj()) + "\n", encoding="utf-8")
    statuses = [r.status.value for r in run.results]
    summary = {s: statuses.count(s) for s in sorted(set(statuses))}
    print(f"wrote {out} ({summary})", file=sys.stderr)
    _emit(args, {"run_id": run.run_id, "path": out, "statuses": summary}, [run.run_id])
    return 0


def cmd_upload_run(args) -> int:
    run_id = _client(args).save_run(_read_json_file(args.file))
    _emit(args, {"run_id": run_id}, [run_id])
    return 0


def cmd_publish(args) -> int:
    if args.kind == "run":
        path = f"/v1/runs/{args.id}/publish"
    else:
        path = component_path(args.id) + "/publish"
    body = _client(args).request("POST", path)
    _emit(args, body, [body["identifier"]])
    return 0


def cmd_delete(args) -> int:
    if args.kind == "component":
        path = component_path(args.id)
    elif args.kind == "run":
        path = f"/v1/runs/{args.id}"
    else:
        path = f"/v1/contexts/{args.id}"
    _client(args).request("DELETE", path)
    _emit(args, {"deleted": args.id}, [f"deleted {args.id}"])
    return 0


# --- analyze ----------------------------------------------------------


def _analysis_request(client: ApiClient, endpoint: str, body: dict) -> dict:
    response = client.request("POST", f"/v1/analysis/{endpoint}", json_body=body)
    coverage = response.get("coverage", {})
    if not coverage.get("complete", True):
        print(
            f"warning: {len(coverage.get('unmatched', []))} scenarios have no stored results",
            file=sys.stderr,
        )
    return response


def _fetch_table(client: ApiClient, context_id: str, filters) -> RunTable:
    body = client.request(
        "POST", "/v1/analysis/slice", json_body={"context_id": context_id, "filters": filters}
    )
    return RunTable.from_obj(body["table"])


def _filters(args) -> list:
    return [[key, "eq", value] for key, value in (_kv(w) for w in args.where)]


def _write_rows_csv(path: str, header: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        writer.writerows(rows)


def cmd_analyze_slice(args) -> int:
    client = _client(args)
    body = {
        "context_id": args.context_id,
        "filters": _filters(args),
        "group_by": args.group_by,
        "aggregates": [list(_kv_colon(a)) for a in args.agg],
    }
    response = _analysis_request(client, "slice", body)
    table = RunTable.from_obj(response["table"])

    outputs = []
    if args.csv:
        write_csv(table, args.csv)
        outputs.append(args.csv)
    if args.plot:
        if len(args.group_by) != 1 or not args.agg:
            raise UsageError("--plot needs exactly one --group-by and at least one --agg")
        full = _fetch_table(client, args.context_id, _filters(args))
        value_column = _kv_colon(args.agg[0])[0]
        plot_group_means(full, args.group_by[0], value_column, args.plot)
        outputs.append(args.plot)

    if outputs:
        _emit(args, {**response, "outputs": outputs}, outputs)
    else:
        lines = ["\t".join(table.columns)]
        lines += [
            "\t".join("" if row[c] is None else str(row[c]) for c in table.columns)
            for row in table.rows
        ]
        _emit(args, response, lines)
    return 0


def _kv_colon(text: str) -> tuple[str, str]:
    key, sep, value = text.rpartition(":")
    if not sep or not key:
        raise UsageError(f"expected COLUMN:NAME, got {text!r}")
    return key, value


def cmd_analyze_pareto(args) -> int:
    client = _client(args)
    objectives = [list(_kv_colon(o)) for o in args.objective]
    response = _analysis_request(
        client,
        "pareto",
        {"context_id": args.context_id, "objectives": objectives, "id_column": args.id_column},
    )
    front = response["front"]

    outputs = []
    if args.csv or args.plot:
        table = _fetch_table(client, args.context_id, [])
        if args.csv:
            columns = [args.id_column] + [column for column, _ in objectives]
            keep = set(front)
            rows = [
                [row[c] for c in columns]
                for row in table.rows
                if row[args.id_column] in keep
            ]
            _write_rows_csv(args.csv, columns, rows)
            outputs.append(args.csv)
        if args.plot:
            plot_tradeoff(table, [tuple(o) for o in objectives], args.plot, id_column=args.id_column)
            outputs.append(args.plot)

    if outputs:
        _emit(args, {**response, "outputs": outputs}, outputs)
    else:
        _emit(args, response, list(front))
    return 0


def cmd_analyze_impact(args) -> int:
    body = {
        "context_id": args.context_id,
        "treatment": [args.treatment[0], _scalar(args.treatment[1]), _scalar(args.treatment[2])],
        "outcome": args.outcome,
    }
    if args.graph:
        body["graph"] = _read_json_file(args.graph)
    response = _analysis_request(_client(args), "impact", body)
    impact = response["impact"]

    if args.csv:
        rows = [
            [json.dumps(d["stratum"]), d["mean_a"], d["mean_b"], d["n_a"], d["n_b"]]
            for d in impact["stratum_details"]
        ]
        _write_rows_csv(args.csv, ["stratum", "mean_a", "mean_b", "n_a", "n_b"], rows)
        _emit(args, {**response, "outputs": [args.csv]}, [args.csv])
        return 0

    lines = [
        f"estimate\t{impact['estimate']}",
        f"unadjusted\t{impact['unadjusted']}",
        "adjusted_for\t" + (",".join(impact["adjusted_for"]) or "-"),
        f"strata\t{len(impact['stratum_details'])} kept, {impact['dropped_strata']} dropped",
    ]
    _emit(args, response, lines)
    return 0


def cmd_analyze_predict(args) -> int:
    target = dict(_kv(t) for t in args.target)
    body = {"context_id": args.context_id, "target": target}
    if args.graph:
        body["graph"] = _read_json_file(args.graph)
    response = _analysis_request(_client(args), "predict", body)
    prediction = response["prediction"]
    lines = []
    for entry in prediction["outcomes"]:
        low, high = entry["interval"]
        line = (
            f"{entry['outcome']}\testimate={entry['estimate']}"
            f"\tinterval={low}..{high}\tmethod={entry['method']}"
        )
        if entry["non_shareable"]:
            line += "\tnon_shareable=" + ",".join(entry["non_shareable"])
        lines.append(line)
    lines += [f"note\t{note}" for note in prediction["notes"]]
    _emit(args, response, lines)
    return 0


def cmd_analyze_recommend(args) -> int:
    space = {}
    for entry in args.space:
        key, _, values = entry.partition("=")
        if not _:
            raise UsageError(f"expected COLUMN=V1,V2,..., got {entry!r}")
        space[key] = [_scalar(v) for v in values.split(",")]
    response = _analysis_request(
        _client(args),
        "recommend",
        {"context_id": args.context_id, "space": space, "k": args.top},
    )
    recommendations = response["recommendations"]

    if args.csv:
        columns = sorted(space)
        rows = [
            [r["assignment"].get(c) for c in columns] + [r["covering_rows"], r["interval_width"]]
            for r in recommendations
        ]
        _write_rows_csv(args.csv, columns + ["covering_rows", "interval_width"], rows)
        _emit(args, {**response, "outputs": [args.csv]}, [args.csv])
        return 0

    lines = [
        f"{canonical_dumps(r['assignment'])}\tcovering_rows={r['covering_rows']}"
        f"\twidth={r['interval_width']}"
        for r in recommendations
    ]
    _emit(args, response, lines)
    return 0


# --- parser -----------------------------------------------------------


def _add_json_flag(parser) -> None:
    parser.add_argument("--json", action="store_true", help="print canonical JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cb", description="Benchmark components, contexts, and runs from the console."
    )
    parser.add_argument(
        "--config", default=None, help=f"config file (default {DEFAULT_CONFIG_PATH})"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    init = commands.add_parser("init-config", help="write a fresh config file")
    init.add_argument("--path", default=DEFAULT_CONFIG_PATH)
    init.add_argument("--server", default=DEFAULT_SERVER_URL)
    init.add_argument("--key", default="", help="API key issued by the operator")
    init.add_argument("--force", action="store_true")
    init.set_defaults(handler=cmd_init_config)

    whoami = commands.add_parser("whoami", help="show the authenticated user")
    _add_json_flag(whoami)
    whoami.set_defaults(handler=cmd_whoami)

    upload = commands.add_parser("upload", help="pack a component directory and register it")
    upload.add_argument("kind", choices=["dataset", "model", "metric"])
    upload.add_argument("directory", help="directory with manifest.json and payload files")
    upload.add_argument(
        "--new-version", action="store_true", help="register as a new version of an existing name"
    )
    _add_json_flag(upload)
    upload.set_defaults(handler=cmd_upload)

    download = commands.add_parser("download", help="fetch a component archive")
    download.add_argument("id", help="component id, e.g. alice/toy-scm@1")
    download.add_argument("--out", default="", help="target file (default: cache dir)")
    _add_json_flag(download)
    download.set_defaults(handler=cmd_download)

    listing = commands.add_parser("list", help="list visible components, runs, or contexts")
    listing.add_argument(
        "what", choices=["datasets", "models", "metrics", "runs", "contexts"]
    )
    listing.add_argument("--task", default="")
    listing.add_argument("--q", default="", help="substring filter on name/description")
    listing.add_argument("--scope", default="all", choices=["all", "mine", "public"])
    listing.add_argument("--page", type=int, default=1)
    listing.add_argument("--page-size", type=int, default=50)
    listing.add_argument("--context", default="", help="filter runs by context id")
    _add_json_flag(listing)
    listing.set_defaults(handler=cmd_list)

    context = commands.add_parser("context", help="declare or validate benchmark contexts")
    context_sub = context.add_subparsers(dest="subcommand", required=True)
    ctx_new = context_sub.add_parser("new", help="declare a context and save it to a file")
    ctx_new.add_argument("--dataset", action="append", required=True)
    ctx_new.add_argument("--model", action="append", required=True)
    ctx_new.add_argument("--metric", action="append", required=True)
    ctx_new.add_argument(
        "--hyper", default="", help="JSON object or file: model id -> list of settings"
    )
    ctx_new.add_argument("--out", default="context.json")
    _add_json_flag(ctx_new)
    ctx_new.set_defaults(handler=cmd_context_new)
    ctx_validate = context_sub.add_parser("validate", help="compatibility-check every scenario")
    ctx_validate.add_argument("file")
    _add_json_flag(ctx_validate)
    ctx_validate.set_defaults(handler=cmd_context_validate)

    suggest = commands.add_parser("suggest", help="partition candidates against chosen components")
    suggest.add_argument("--dataset", action="append", default=[])
    suggest.add_argument("--model", action="append", default=[])
    suggest.add_argument("--metric", action="append", default=[])
    suggest.add_argument(
        "--for", dest="for_kind", required=True, choices=["datasets", "models", "metrics"]
    )
    suggest.add_argument("ids", nargs="+", help="candidate component ids")
    _add_json_flag(suggest)
    suggest.set_defaults(handler=cmd_suggest)

    run = commands.add_parser("run", help="execute a context locally and save the run")
    run.add_argument("--context", required=True, help="context file from `cb context new`")
    run.add_argument("--out", default="", help="run file (default run-<id>.json)")
    run.add_argument("--timeout", type=float, default=None, help="per-scenario seconds")
    run.add_argument("--workdir", default="", help="working directory root")
    _add_json_flag(run)
    run.set_defaults(handler=cmd_run)

    upload_run = commands.add_parser("upload-run", help="store a locally executed run")
    upload_run.add_argument("file")
    _add_json_flag(upload_run)
    upload_run.set_defaults(handler=cmd_upload_run)

    publish = commands.add_parser("publish", help="mint a public identifier")
    publish.add_argument("kind", choices=["run", "component"])
    publish.add_argument("id")
    _add_json_flag(publish)
    publish.set_defaults(handler=cmd_publish)

    delete = commands.add_parser("delete", help="delete a private entity")
    delete.add_argument("kind", choices=["component", "run", "context"])
    delete.add_argument("id")
    _add_json_flag(delete)
    delete.set_defaults(handler=cmd_delete)

    analyze = commands.add_parser("analyze", help="query stored results")
    analyze_sub = analyze.add_subparsers(dest="subcommand", required=True)

    def analysis_parser(name: str, help_text: str):
        sub = analyze_sub.add_parser(name, help=help_text)
        sub.add_argument("--context-id", required=True)
        sub.add_argument("--csv", default="", help="write delimited output to this file")
        _add_json_flag(sub)
        return sub

    a_slice = analysis_parser("slice", "filter, group, and aggregate the result table")
    a_slice.add_argument("--where", action="append", default=[], metavar="COL=VALUE")
    a_slice.add_argument("--group-by", action="append", default=[], metavar="COL")
    a_slice.add_argument("--agg", action="append", default=[], metavar="COL:FN")
    a_slice.add_argument("--plot", default="", help="render group means to this PNG")
    a_slice.set_defaults(handler=cmd_analyze_slice)

    a_pareto = analysis_parser("pareto", "non-dominated scenarios under the given objectives")
    a_pareto.add_argument(
        "--objective", action="append", required=True, metavar="COL:DIRECTION"
    )
    a_pareto.add_argument("--id-column", default="scenario_key")
    a_pareto.add_argument("--plot", default="", help="render the tradeoff to this PNG")
    a_pareto.set_defaults(handler=cmd_analyze_pareto)

    a_impact = analysis_parser("impact", "adjusted contrast of two treatment levels")
    a_impact.add_argument("--treatment", nargs=3, required=True, metavar=("COL", "A", "B"))
    a_impact.add_argument("--outcome", required=True)
    a_impact.add_argument("--graph", default="", help="causal graph JSON file")
    a_impact.set_defaults(handler=cmd_analyze_impact)

    a_predict = analysis_parser("predict", "estimate an outcome for an unseen configuration")
    a_predict.add_argument("--target", action="append", required=True, metavar="COL=VALUE")
    a_predict.add_argument("--graph", default="", help="causal graph JSON file")
    a_predict.set_defaults(handler=cmd_analyze_predict)

    a_recommend = analysis_parser("recommend", "rank unexplored configurations")
    a_recommend.add_argument(
        "--space", action="append", required=True, metavar="COL=V1,V2,..."
    )
    a_recommend.add_argument("-k", "--top", type=int, default=3)
    a_recommend.set_defaults(handler=cmd_analyze_recommend)

    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage problems; those are user errors here
        return 0 if exc.code in (0, None) else 1
    try:
        return args.handler(args)
    except UsageError as exc:
        return _fail(str(exc), 1)
    except ConfigError as exc:
        return _fail(exc.detail, 1)
    except ApiError as exc:
        for violation in exc.violations:
            print(f"violation: {violation.get('detail', violation)}", file=sys.stderr)
        return _fail(f"{exc.code}: {exc.detail}", 2 if exc.status >= 500 else 1)
    except ServerUnreachable as exc:
        return _fail(exc.detail, 2)
    except (AnalysisError, CoreError, HarnessError, RegistryError) as exc:
        return _fail(str(exc), 1)
    except OSError as exc:
        return _fail(str(exc), 2)


if __name__ == "__main__":
    raise SystemExit(main())
