"""Scenario execution over the plugin file protocol.

Every plugin invocation gets a fresh working directory holding a private
copy of its payload, an ``inputs.json`` mapping each consumer port to a
data role and absolute file path, and a ``params.json`` with the scenario's
hyperparameter setting in canonical JSON. Models write ``outputs/<port>.*``;
metrics write ``result.json`` carrying ``{"value": <float>}``. Plugins only
ever see copies, so nothing they do can reach back into the store.

Port-to-file binding is by file stem: a port named ``true_graph`` binds the
payload or output file whose name without extension is ``true_graph``.
Which provider feeds which consumer port is decided by the same claiming
algorithm the compatibility checker uses, so a scenario that passed
``check_scenario`` always binds completely.
"""

from __future__ import annotations

import math
import json
import re
import shutil
import sys
import tempfile
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Protocol

from causalbench.compat import check_scenario, provider_assignment
from causalbench.core.canonical import iso_utc_now, new_ulid
from causalbench.core.context import scenario_key
from causalbench.core.types import (
    BenchmarkRun,
    BenchmarkScenario,
    ComponentKind,
    DatasetDescriptor,
    InstrumentedContext,
    MetricDescriptor,
    ModelDescriptor,
    PortSpec,
    ResultStatus,
    ScenarioResult,
    SystemProfile,
)
from causalbench.registry.archive import unpack_archive

from .errors import HarnessError, IncompatibleScenario, SpawnFailure
from .measure import ExecutionLimits, MeasuredExecution, measure_execution

INPUTS_NAME = "inputs.json"
PARAMS_NAME = "params.json"
RESULT_NAME = "result.json"
OUTPUTS_DIR = "outputs"


class ComponentSource(Protocol):
    """Anything that can hand over a component descriptor and its payload."""

    def fetch_component(self, component_id: str) -> tuple[object, bytes]: ...


@dataclass
class StoreSource:
    """ComponentSource over a local registry store."""

    store: object
    principal: str | None = None

    def fetch_component(self, component_id: str) -> tuple[object, bytes]:
        record, payload = self.store.fetch(component_id, self.principal)
        return record.descriptor, payload


@dataclass
class _CachingSource:
    """Fetch each component once per execute call."""

    source: ComponentSource
    _seen: dict = field(default_factory=dict)

    def fetch_component(self, component_id: str) -> tuple[object, bytes]:
        if component_id not in self._seen:
            self._seen[component_id] = self.source.fetch_component(component_id)
        return self._seen[component_id]


def _safe_name(raw: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "_", raw)


def _plugin_argv(entrypoint: Path) -> list[str]:
    if entrypoint.suffix == ".py":
        return [sys.executable, str(entrypoint)]
    if entrypoint.suffix == ".sh":
        return ["/bin/sh", str(entrypoint)]
    return [str(entrypoint)]


def _entrypoint_path(workdir: Path, entrypoint: str) -> Path:
    path = (workdir / entrypoint).resolve()
    if not path.is_relative_to(workdir.resolve()):
        raise HarnessError(f"entrypoint {entrypoint!r} escapes its payload")
    if not path.is_file():
        raise HarnessError(f"entrypoint {entrypoint!r} missing from payload")
    return path


def _stem_index(paths: list[Path], what: str) -> dict[str, Path]:
    """Map file stem -> path, rejecting ambiguous stems."""
    index: dict[str, Path] = {}
    for path in paths:
        stem = path.name.rsplit(".", 1)[0] if "." in path.name else path.name
        if stem in index:
            raise HarnessError(f"{what}: two files bind the name {stem!r}")
        index[stem] = path
    return index


def _dataset_port_paths(descriptor: DatasetDescriptor, dataset_dir: Path) -> dict[str, Path]:
    files = [dataset_dir / entry.logical_name for entry in descriptor.files]
    index = _stem_index(files, f"dataset {descriptor.id}")
    out = {}
    for port in descriptor.provided_ports:
        path = index.get(port.port_name)
        if path is None:
            raise HarnessError(
                f"dataset {descriptor.id}: port {port.port_name!r} has no backing file"
            )
        out[port.port_name] = path
    return out


def _write_protocol_files(
    workdir: Path,
    consumers: tuple[PortSpec, ...],
    providers: list[tuple[PortSpec, Path]],
    hyper_json: str,
) -> None:
    assignment = provider_assignment([p for p, _ in providers], consumers)
    inputs = {}
    for i, port in enumerate(consumers):
        j = assignment[i]
        if j is None:
            continue
        inputs[port.port_name] = {
            "data_role": port.data_role.value,
            "path": str(providers[j][1]),
        }
    body = json.dumps(inputs, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    (workdir / INPUTS_NAME).write_text(body, encoding="utf-8")
    (workdir / PARAMS_NAME).write_text(hyper_json, encoding="utf-8")


def _unpack_payload(payload: bytes, dest: Path) -> None:
    dest.mkdir(parents=True, exist_ok=True)
    unpack_archive(payload, dest)


def _descriptor(source: ComponentSource, component_id, kind: ComponentKind):
    descriptor, payload = source.fetch_component(str(component_id))
    if descriptor.kind is not kind:
        raise HarnessError(f"{component_id} is a {descriptor.kind.value}, expected {kind.value}")
    return descriptor, payload


def _invoke(
    workdir: Path, entrypoint: str, limits: ExecutionLimits
) -> tuple[MeasuredExecution | None, str]:
    """Run one plugin; spawn problems come back as a failure note, not an error."""
    try:
        argv = _plugin_argv(_entrypoint_path(workdir, entrypoint))
        return measure_execution(argv, workdir, limits), ""
    except SpawnFailure as exc:
        return None, f"[harness] {exc.detail}"


def run_scenario(
    scenario: BenchmarkScenario,
    source: ComponentSource,
    profile: SystemProfile,
    limits: ExecutionLimits,
) -> ScenarioResult:
    """Execute one scenario and collect accuracy, timing, and resources.

    Plugin failures surface as result statuses, never exceptions; the
    scenario working directory is deleted when the result is ok and kept
    for inspection otherwise. Timing and resource readings always come
    from the model invocation alone.
    """
    dataset, dataset_payload = _descriptor(source, scenario.dataset, ComponentKind.DATASET)
    model, model_payload = _descriptor(source, scenario.model, ComponentKind.MODEL)
    metrics = []
    for metric_id in scenario.metrics:
        descriptor, payload = _descriptor(source, metric_id, ComponentKind.METRIC)
        metrics.append((descriptor, payload))

    report = check_scenario(dataset, model, [m for m, _ in metrics])
    if not report.compatible:
        detail = "; ".join(f"{port}: {reason}" for port, reason in report.missing)
        raise IncompatibleScenario(detail, report)

    if limits.working_dir_root:
        root = Path(limits.working_dir_root)
        root.mkdir(parents=True, exist_ok=True)
    else:
        root = Path(tempfile.mkdtemp(prefix="cb-scenario-"))
    scenario_dir = root / _safe_name(scenario_key(scenario))
    if scenario_dir.exists():
        shutil.rmtree(scenario_dir)

    dataset_dir = scenario_dir / "dataset"
    _unpack_payload(dataset_payload, dataset_dir)
    dataset_paths = _dataset_port_paths(dataset, dataset_dir)
    dataset_providers = [(p, dataset_paths[p.port_name]) for p in dataset.provided_ports]
    hyper_json = scenario.hyper.canonical_json

    model_dir = scenario_dir / "model"
    _unpack_payload(model_payload, model_dir)
    (model_dir / OUTPUTS_DIR).mkdir()
    _write_protocol_files(model_dir, model.signature.inputs, dataset_providers, hyper_json)
    measured, spawn_note = _invoke(model_dir, model.entrypoint, limits)

    timing: dict[str, float] = {"wall_time_s": 0.0, "cpu_time_s": 0.0}
    resources: dict[str, int] = {"peak_cpu_memory_bytes": 0}
    log_parts: list[str] = []
    status = ResultStatus.OK
    if measured is None:
        status = ResultStatus.MODEL_FAILED
        log_parts.append(spawn_note)
    else:
        timing = {"wall_time_s": measured.wall_time_s, "cpu_time_s": measured.cpu_time_s}
        resources = {"peak_cpu_memory_bytes": measured.peak_rss_bytes}
        if measured.log_excerpt:
            log_parts.append(measured.log_excerpt)
        if measured.timed_out:
            status = ResultStatus.TIMEOUT
            log_parts.append(f"[harness] killed after timeout_s={limits.timeout_s}")
        elif not measured.ok:
            status = ResultStatus.MODEL_FAILED
            log_parts.append(f"[harness] model exited with status {measured.exit_code}")

    accuracy: dict[str, float] = {}
    if status is ResultStatus.OK:
        try:
            output_index = _stem_index(
                sorted(p for p in (model_dir / OUTPUTS_DIR).iterdir() if p.is_file()),
                f"model {model.id} outputs",
            )
        except HarnessError as exc:
            output_index = {}
            status = ResultStatus.MODEL_FAILED
            log_parts.append(f"[harness] {exc.detail}")
        model_providers: list[tuple[PortSpec, Path]] = []
        for port in model.signature.outputs:
            path = output_index.get(port.port_name)
            if path is not None:
                model_providers.append((port, path))
            elif port.required:
                status = ResultStatus.MODEL_FAILED
                log_parts.append(f"[harness] declared output {port.port_name!r} not written")
        if status is ResultStatus.OK:
            providers = model_providers + dataset_providers
            for descriptor, payload in metrics:
                value, note = _run_metric(
                    scenario_dir, descriptor, payload, providers, hyper_json, limits
                )
                if value is None:
                    status = ResultStatus.METRIC_FAILED
                    log_parts.append(note)
                else:
                    accuracy[str(descriptor.id)] = value

    if status is ResultStatus.OK:
        shutil.rmtree(scenario_dir, ignore_errors=True)
    return ScenarioResult(
        scenario=scenario,
        status=status,
        accuracy=tuple(accuracy.items()),
        timing=tuple(timing.items()),
        resources=tuple(resources.items()),
        log_excerpt="\n".join(part for part in log_parts if part),
    )


def _run_metric(
    scenario_dir: Path,
    descriptor: MetricDescriptor,
    payload: bytes,
    providers: list[tuple[PortSpec, Path]],
    hyper_json: str,
    limits: ExecutionLimits,
) -> tuple[float | None, str]:
    """One metric invocation; returns (value, "") or (None, failure note)."""
    label = f"[metric {descriptor.id}]"
    metric_dir = scenario_dir / _safe_name(f"metric-{descriptor.id}")
    _unpack_payload(payload, metric_dir)
    _write_protocol_files(metric_dir, descriptor.signature.inputs, providers, hyper_json)
    measured, spawn_note = _invoke(metric_dir, descriptor.entrypoint, limits)
    if measured is None:
        return None, f"{label} {spawn_note}"
    if measured.timed_out:
        return None, f"{label} killed after timeout_s={limits.timeout_s}"
    if not measured.ok:
        note = f"{label} exited with status {measured.exit_code}"
        if measured.log_excerpt:
            note += "\n" + measured.log_excerpt
        return None, note
    result_path = metric_dir / RESULT_NAME
    if not result_path.is_file():
        return None, f"{label} wrote no {RESULT_NAME}"
    try:
        body = json.loads(result_path.read_text(encoding="utf-8"))
        value = float(body["value"])
    except (json.JSONDecodeError, KeyError, TypeError, ValueError, UnicodeDecodeError) as exc:
        return None, f"{label} bad {RESULT_NAME}: {exc}"
    if not math.isfinite(value):
        return None, f"{label} non-finite value {value!r}"
    return value, ""


def execute(
    instrumented: InstrumentedContext,
    source: ComponentSource,
    limits: ExecutionLimits,
    executed_by: str = "local",
) -> BenchmarkRun:
    """Run every scenario of an instrumented context, in canonical order.

    Scenario failures become statuses in the result list; the run as a
    whole aborts only if a component cannot be fetched or the filesystem
    misbehaves. Results align one-to-one with the instrumented scenarios.
    """
    if limits.working_dir_root:
        limits = replace(limits, working_dir_root=str(Path(limits.working_dir_root)))
    else:
        limits = replace(limits, working_dir_root=tempfile.mkdtemp(prefix="cb-run-"))
    cached = _CachingSource(source)
    started = iso_utc_now()
    results = [
        run_scenario(scenario, cached, instrumented.profile, limits)
        for scenario in instrumented.scenarios
    ]
    return BenchmarkRun(
        run_id=new_ulid(),
        context_id=instrumented.context.context_id,
        profile=instrumented.profile,
        results=tuple(results),
        executed_by=executed_by,
        started_at=started,
        finished_at=iso_utc_now(),
    )
