"""Immutable domain types for contexts, scenarios, profiles, and runs.

Every type normalizes its collections at construction (sorted tuples,
lexicographic key order) so that equality, hashing, and the canonical JSON
form are all deterministic. ``to_obj``/``from_obj`` convert to and from the
plain JSON layer; round-tripping through them is identity on canonical form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Mapping

from causalbench.core.canonical import canonical_dumps, object_hash

NAME_RE = re.compile(r"^[a-z0-9_-]+/[a-z0-9_-]+$")
HASH_RE = re.compile(r"^[0-9a-f]{64}$")

Scalar = bool | int | float | str

TIMING_KEYS = ("wall_time_s", "cpu_time_s", "gpu_time_s")
RESOURCE_KEYS = ("peak_cpu_memory_bytes", "peak_gpu_memory_bytes")


class ComponentKind(str, Enum):
    DATASET = "dataset"
    MODEL = "model"
    METRIC = "metric"


class TaskKind(str, Enum):
    DISCOVERY = "causal-discovery"
    EFFECT_ESTIMATION = "causal-effect-estimation"
    INTERPRETABILITY = "causal-interpretability"


class DataRole(str, Enum):
    TABULAR_OBSERVATIONS = "tabular-observations"
    CAUSAL_GRAPH = "causal-graph"
    TREATMENT_EFFECT_ESTIMATES = "treatment-effect-estimates"
    COUNTERFACTUAL_OUTCOMES = "counterfactual-outcomes"
    EXPLANATION_ARTIFACT = "explanation-artifact"
    SCALAR = "scalar"


class Direction(str, Enum):
    HIGHER_BETTER = "higher-better"
    LOWER_BETTER = "lower-better"


class Visibility(str, Enum):
    PRIVATE = "private"
    PUBLIC = "public"


class ResultStatus(str, Enum):
    OK = "ok"
    MODEL_FAILED = "model-failed"
    METRIC_FAILED = "metric-failed"
    TIMEOUT = "timeout"


@dataclass(frozen=True)
class Violation:
    """A single invariant breach, reported as data rather than raised."""

    code: str
    detail: str
    subject: str = ""

    def to_obj(self) -> dict:
        obj = {"code": self.code, "detail": self.detail}
        if self.subject:
            obj["subject"] = self.subject
        return obj

    def __str__(self) -> str:
        if self.subject:
            return f"{self.code}[{self.subject}]: {self.detail}"
        return f"{self.code}: {self.detail}"


@dataclass(frozen=True, order=True)
class ComponentId:
    """Namespaced component name plus dense positive version number."""

    name: str
    version: int

    def __post_init__(self):
        if not isinstance(self.version, int) or isinstance(self.version, bool):
            raise TypeError(f"version must be an integer, got {self.version!r}")

    def __str__(self) -> str:
        return f"{self.name}@{self.version}"

    @classmethod
    def parse(cls, text: str) -> "ComponentId":
        name, sep, ver = text.rpartition("@")
        if not sep or not ver.isdigit() or not NAME_RE.match(name):
            raise ValueError(f"malformed component id: {text!r}")
        return cls(name=name, version=int(ver))

    def validate(self) -> list[Violation]:
        out = []
        if not NAME_RE.match(self.name):
            out.append(Violation("bad_name", f"name {self.name!r} is not owner/slug", str(self)))
        if self.version < 1:
            out.append(Violation("bad_version", f"version {self.version} < 1", str(self)))
        return out

    def to_obj(self) -> str:
        return str(self)

    @classmethod
    def from_obj(cls, obj: str) -> "ComponentId":
        return cls.parse(obj)


def _coerce_id(value) -> ComponentId:
    if isinstance(value, ComponentId):
        return value
    return ComponentId.parse(str(value))


def _sorted_ids(values: Iterable) -> tuple[ComponentId, ...]:
    return tuple(sorted({_coerce_id(v) for v in values}))


def _check_scalar(key: str, value) -> None:
    if not isinstance(value, (bool, int, float, str)):
        raise TypeError(f"value for {key!r} must be a JSON scalar, got {type(value).__name__}")


@dataclass(frozen=True)
class PortSpec:
    port_name: str
    data_role: DataRole
    required: bool = True

    def __post_init__(self):
        object.__setattr__(self, "data_role", DataRole(self.data_role))

    def to_obj(self) -> dict:
        return {
            "port_name": self.port_name,
            "data_role": self.data_role.value,
            "required": self.required,
        }

    @classmethod
    def from_obj(cls, obj: Mapping) -> "PortSpec":
        return cls(
            port_name=obj["port_name"],
            data_role=DataRole(obj["data_role"]),
            required=bool(obj.get("required", True)),
        )


def _ports(values: Iterable) -> tuple[PortSpec, ...]:
    out = []
    for v in values:
        out.append(v if isinstance(v, PortSpec) else PortSpec.from_obj(v))
    return tuple(out)


def _port_violations(ports: tuple[PortSpec, ...], where: str) -> list[Violation]:
    seen = set()
    out = []
    for p in ports:
        if p.port_name in seen:
            out.append(Violation("duplicate_port", f"port {p.port_name!r} repeated", where))
        seen.add(p.port_name)
    return out


@dataclass(frozen=True)
class SignatureSpec:
    """Declared task plus typed input/output ports of a model or metric."""

    task: TaskKind
    inputs: tuple[PortSpec, ...] = ()
    outputs: tuple[PortSpec, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "task", TaskKind(self.task))
        object.__setattr__(self, "inputs", _ports(self.inputs))
        object.__setattr__(self, "outputs", _ports(self.outputs))

    def validate(self) -> list[Violation]:
        return _port_violations(self.inputs, "inputs") + _port_violations(self.outputs, "outputs")

    def to_obj(self) -> dict:
        return {
            "task": self.task.value,
            "inputs": [p.to_obj() for p in self.inputs],
            "outputs": [p.to_obj() for p in self.outputs],
        }

    @classmethod
    def from_obj(cls, obj: Mapping) -> "SignatureSpec":
        return cls(
            task=TaskKind(obj["task"]),
            inputs=_ports(obj.get("inputs", ())),
            outputs=_ports(obj.get("outputs", ())),
        )


@dataclass(frozen=True)
class FileEntry:
    logical_name: str
    content_hash: str
    byte_size: int

    def to_obj(self) -> dict:
        return {
            "logical_name": self.logical_name,
            "content_hash": self.content_hash,
            "byte_size": self.byte_size,
        }

    @classmethod
    def from_obj(cls, obj: Mapping) -> "FileEntry":
        return cls(obj["logical_name"], obj["content_hash"], int(obj["byte_size"]))


@dataclass(frozen=True)
class DatasetDescriptor:
    id: ComponentId
    files: tuple[FileEntry, ...]
    config: dict = field(default_factory=dict)
    provided_ports: tuple[PortSpec, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "id", _coerce_id(self.id))
        files = tuple(
            f if isinstance(f, FileEntry) else FileEntry.from_obj(f) for f in self.files
        )
        object.__setattr__(self, "files", tuple(sorted(files, key=lambda f: f.logical_name)))
        object.__setattr__(self, "config", dict(self.config))
        object.__setattr__(self, "provided_ports", _ports(self.provided_ports))

    kind = ComponentKind.DATASET

    def validate(self) -> list[Violation]:
        out = self.id.validate()
        if not self.files:
            out.append(Violation("no_files", "dataset declares no files", str(self.id)))
        for f in self.files:
            if not HASH_RE.match(f.content_hash):
                out.append(
                    Violation("bad_hash", f"{f.logical_name}: not a sha256 hex digest", str(self.id))
                )
            if f.byte_size < 0:
                out.append(Violation("bad_size", f"{f.logical_name}: negative size", str(self.id)))
        n_rows = self.config.get("n_rows")
        if n_rows is not None and (not isinstance(n_rows, int) or n_rows < 1):
            out.append(Violation("bad_config", f"n_rows must be >= 1, got {n_rows!r}", str(self.id)))
        out.extend(_port_violations(self.provided_ports, "provided_ports"))
        return out

    def to_obj(self) -> dict:
        return {
            "id": str(self.id),
            "files": [f.to_obj() for f in self.files],
            "config": dict(self.config),
            "provided_ports": [p.to_obj() for p in self.provided_ports],
        }

    @classmethod
    def from_obj(cls, obj: Mapping) -> "DatasetDescriptor":
        return cls(
            id=ComponentId.parse(obj["id"]),
            files=tuple(FileEntry.from_obj(f) for f in obj["files"]),
            config=dict(obj.get("config", {})),
            provided_ports=_ports(obj.get("provided_ports", ())),
        )


_PARAM_TYPES = {"int": int, "float": (int, float), "str": str, "bool": bool}


def _param_violations(schema: Mapping, where: str) -> list[Violation]:
    out = []
    for name, spec in schema.items():
        if not isinstance(spec, Mapping) or "type" not in spec:
            out.append(Violation("bad_param", f"{name}: schema entry needs a type", where))
            continue
        ptype = spec["type"]
        if ptype not in _PARAM_TYPES:
            out.append(Violation("bad_param", f"{name}: unknown type {ptype!r}", where))
            continue
        default = spec.get("default")
        if default is None:
            continue
        expected = _PARAM_TYPES[ptype]
        if ptype != "bool" and isinstance(default, bool):
            out.append(Violation("bad_default", f"{name}: default is bool, not {ptype}", where))
        elif not isinstance(default, expected):
            out.append(Violation("bad_default", f"{name}: default {default!r} is not {ptype}", where))
        elif "min" in spec and default < spec["min"]:
            out.append(Violation("bad_default", f"{name}: default {default!r} below min", where))
        elif "max" in spec and default > spec["max"]:
            out.append(Violation("bad_default", f"{name}: default {default!r} above max", where))
        elif "choices" in spec and default not in spec["choices"]:
            out.append(Violation("bad_default", f"{name}: default {default!r} not in choices", where))
    return out


@dataclass(frozen=True)
class ModelDescriptor:
    id: ComponentId
    signature: SignatureSpec
    entrypoint: str
    hyperparameter_schema: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "id", _coerce_id(self.id))
        if not isinstance(self.signature, SignatureSpec):
            object.__setattr__(self, "signature", SignatureSpec.from_obj(self.signature))
        object.__setattr__(self, "hyperparameter_schema", dict(self.hyperparameter_schema))

    kind = ComponentKind.MODEL

    def validate(self) -> list[Violation]:
        out = self.id.validate() + self.signature.validate()
        if not self.entrypoint:
            out.append(Violation("no_entrypoint", "model entrypoint is empty", str(self.id)))
        if not self.signature.outputs:
            out.append(Violation("no_outputs", "model signature has no outputs", str(self.id)))
        out.extend(_param_violations(self.hyperparameter_schema, str(self.id)))
        return out

    def to_obj(self) -> dict:
        return {
            "id": str(self.id),
            "signature": self.signature.to_obj(),
            "entrypoint": self.entrypoint,
            "hyperparameter_schema": dict(self.hyperparameter_schema),
        }

    @classmethod
    def from_obj(cls, obj: Mapping) -> "ModelDescriptor":
        return cls(
            id=ComponentId.parse(obj["id"]),
            signature=SignatureSpec.from_obj(obj["signature"]),
            entrypoint=obj["entrypoint"],
            hyperparameter_schema=dict(obj.get("hyperparameter_schema", {})),
        )


@dataclass(frozen=True)
class MetricDescriptor:
    id: ComponentId
    signature: SignatureSpec
    direction: Direction
    entrypoint: str

    def __post_init__(self):
        object.__setattr__(self, "id", _coerce_id(self.id))
        if not isinstance(self.signature, SignatureSpec):
            object.__setattr__(self, "signature", SignatureSpec.from_obj(self.signature))
        object.__setattr__(self, "direction", Direction(self.direction))

    kind = ComponentKind.METRIC

    def validate(self) -> list[Violation]:
        out = self.id.validate() + self.signature.validate()
        if not self.entrypoint:
            out.append(Violation("no_entrypoint", "metric entrypoint is empty", str(self.id)))
        if not self.signature.inputs:
            out.append(Violation("no_inputs", "metric signature has no inputs", str(self.id)))
        outs = self.signature.outputs
        if len(outs) != 1 or outs[0].data_role is not DataRole.SCALAR:
            out.append(
                Violation("bad_outputs", "metric must output exactly one scalar port", str(self.id))
            )
        return out

    def to_obj(self) -> dict:
        return {
            "id": str(self.id),
            "signature": self.signature.to_obj(),
            "direction": self.direction.value,
            "entrypoint": self.entrypoint,
        }

    @classmethod
    def from_obj(cls, obj: Mapping) -> "MetricDescriptor":
        return cls(
            id=ComponentId.parse(obj["id"]),
            signature=SignatureSpec.from_obj(obj["signature"]),
            direction=Direction(obj["direction"]),
            entrypoint=obj["entrypoint"],
        )


@dataclass(frozen=True)
class HyperparameterSetting:
    """One concrete parameter assignment, keys held in lexicographic order."""

    values: tuple[tuple[str, Scalar], ...] = ()

    def __post_init__(self):
        pairs = self.values
        if isinstance(pairs, Mapping):
            pairs = tuple(pairs.items())
        normalized = []
        seen = set()
        for key, value in sorted(pairs, key=lambda kv: kv[0]):
            if key in seen:
                raise ValueError(f"duplicate hyperparameter {key!r}")
            _check_scalar(key, value)
            seen.add(key)
            normalized.append((str(key), value))
        object.__setattr__(self, "values", tuple(normalized))

    @classmethod
    def of(cls, mapping: Mapping[str, Scalar] | None = None, **kwargs: Scalar) -> "HyperparameterSetting":
        merged = dict(mapping or {})
        merged.update(kwargs)
        return cls(tuple(merged.items()))

    def as_dict(self) -> dict[str, Scalar]:
        return dict(self.values)

    @property
    def canonical_json(self) -> str:
        return canonical_dumps(self.as_dict())

    def get(self, key: str, default=None):
        return self.as_dict().get(key, default)

    def to_obj(self) -> dict:
        return self.as_dict()

    @classmethod
    def from_obj(cls, obj: Mapping) -> "HyperparameterSetting":
        return cls.of(obj)


EMPTY_SETTING = HyperparameterSetting()


@dataclass(frozen=True)
class BenchmarkContext:
    """A selected subset of datasets, models, and metrics plus the per-model
    hyperparameter family to sweep."""

    context_id: str
    datasets: tuple[ComponentId, ...]
    models: tuple[ComponentId, ...]
    metrics: tuple[ComponentId, ...]
    hyper_family: tuple[tuple[str, tuple[HyperparameterSetting, ...]], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "datasets", _sorted_ids(self.datasets))
        object.__setattr__(self, "models", _sorted_ids(self.models))
        object.__setattr__(self, "metrics", _sorted_ids(self.metrics))
        family = self.hyper_family
        if isinstance(family, Mapping):
            family = tuple(family.items())
        normalized = []
        for model_key, settings in sorted(family, key=lambda kv: str(kv[0])):
            model_key = str(_coerce_id(model_key))
            normalized.append(
                (
                    model_key,
                    tuple(
                        s if isinstance(s, HyperparameterSetting) else HyperparameterSetting.of(s)
                        for s in settings
                    ),
                )
            )
        object.__setattr__(self, "hyper_family", tuple(normalized))

    def family_for(self, model: ComponentId) -> tuple[HyperparameterSetting, ...]:
        """Hyper settings for a model; absent entries normalize to [empty setting]."""
        for key, settings in self.hyper_family:
            if key == str(model):
                return settings if settings else (EMPTY_SETTING,)
        return (EMPTY_SETTING,)

    def validate(self) -> list[Violation]:
        out = []
        if not self.context_id:
            out.append(Violation("no_context_id", "context_id is empty"))
        for label, ids in (("datasets", self.datasets), ("models", self.models), ("metrics", self.metrics)):
            if not ids:
                out.append(Violation("empty_family", f"context selects no {label}", self.context_id))
            for cid in ids:
                out.extend(cid.validate())
        model_keys = {str(m) for m in self.models}
        for key, _settings in self.hyper_family:
            if key not in model_keys:
                out.append(
                    Violation("unknown_model", f"hyper_family names {key} outside models", self.context_id)
                )
        return out

    def to_obj(self) -> dict:
        return {
            "context_id": self.context_id,
            "datasets": [str(d) for d in self.datasets],
            "models": [str(m) for m in self.models],
            "metrics": [str(a) for a in self.metrics],
            "hyper_family": {
                key: [s.to_obj() for s in settings] for key, settings in self.hyper_family
            },
        }

    @classmethod
    def from_obj(cls, obj: Mapping) -> "BenchmarkContext":
        return cls(
            context_id=obj["context_id"],
            datasets=tuple(ComponentId.parse(d) for d in obj["datasets"]),
            models=tuple(ComponentId.parse(m) for m in obj["models"]),
            metrics=tuple(ComponentId.parse(a) for a in obj["metrics"]),
            hyper_family={
                key: [HyperparameterSetting.of(s) for s in settings]
                for key, settings in obj.get("hyper_family", {}).items()
            },
        )


@dataclass(frozen=True)
class BenchmarkScenario:
    """One (dataset, model, hyper setting) combination with the context's metric set."""

    dataset: ComponentId
    model: ComponentId
    metrics: tuple[ComponentId, ...]
    hyper: HyperparameterSetting = EMPTY_SETTING

    def __post_init__(self):
        object.__setattr__(self, "dataset", _coerce_id(self.dataset))
        object.__setattr__(self, "model", _coerce_id(self.model))
        object.__setattr__(self, "metrics", _sorted_ids(self.metrics))
        if not isinstance(self.hyper, HyperparameterSetting):
            object.__setattr__(self, "hyper", HyperparameterSetting.of(self.hyper))

    def to_obj(self) -> dict:
        return {
            "dataset": str(self.dataset),
            "model": str(self.model),
            "metrics": [str(a) for a in self.metrics],
            "hyper": self.hyper.to_obj(),
        }

    @classmethod
    def from_obj(cls, obj: Mapping) -> "BenchmarkScenario":
        return cls(
            dataset=ComponentId.parse(obj["dataset"]),
            model=ComponentId.parse(obj["model"]),
            metrics=tuple(ComponentId.parse(a) for a in obj["metrics"]),
            hyper=HyperparameterSetting.of(obj.get("hyper", {})),
        )


def _sorted_pairs(values) -> tuple:
    if isinstance(values, Mapping):
        values = tuple(values.items())
    return tuple(sorted(values, key=lambda kv: kv[0]))


@dataclass(frozen=True)
class SystemProfile:
    """Hardware/software descriptors captured on the executing host."""

    cpu_model: str
    physical_cores: int
    total_memory_bytes: int
    os_name_version: str
    runtime_versions: tuple[tuple[str, str], ...] = ()
    gpu_model: str | None = None
    profile_hash: str = ""

    def __post_init__(self):
        object.__setattr__(self, "runtime_versions", _sorted_pairs(self.runtime_versions))
        if not self.profile_hash:
            object.__setattr__(self, "profile_hash", self.compute_hash())

    def _hash_basis(self) -> dict:
        obj = {
            "cpu_model": self.cpu_model,
            "physical_cores": self.physical_cores,
            "total_memory_bytes": self.total_memory_bytes,
            "os_name_version": self.os_name_version,
            "runtime_versions": dict(self.runtime_versions),
        }
        if self.gpu_model is not None:
            obj["gpu_model"] = self.gpu_model
        return obj

    def compute_hash(self) -> str:
        return object_hash(self._hash_basis())

    def validate(self) -> list[Violation]:
        out = []
        if self.physical_cores < 1:
            out.append(Violation("bad_cores", f"physical_cores {self.physical_cores} < 1"))
        if self.profile_hash != self.compute_hash():
            out.append(Violation("stale_hash", "profile_hash does not match fields"))
        return out

    def to_obj(self) -> dict:
        obj = self._hash_basis()
        obj["profile_hash"] = self.profile_hash
        return obj

    @classmethod
    def from_obj(cls, obj: Mapping) -> "SystemProfile":
        return cls(
            cpu_model=obj["cpu_model"],
            physical_cores=int(obj["physical_cores"]),
            total_memory_bytes=int(obj["total_memory_bytes"]),
            os_name_version=obj["os_name_version"],
            runtime_versions=_sorted_pairs(obj.get("runtime_versions", {})),
            gpu_model=obj.get("gpu_model"),
            profile_hash=obj.get("profile_hash", ""),
        )


@dataclass(frozen=True)
class InstrumentedContext:
    """A context's scenarios coupled to one concrete system profile."""

    context: BenchmarkContext
    profile: SystemProfile
    scenarios: tuple[BenchmarkScenario, ...]

    def to_obj(self) -> dict:
        return {
            "context": self.context.to_obj(),
            "profile": self.profile.to_obj(),
            "scenarios": [s.to_obj() for s in self.scenarios],
        }

    @classmethod
    def from_obj(cls, obj: Mapping) -> "InstrumentedContext":
        return cls(
            context=BenchmarkContext.from_obj(obj["context"]),
            profile=SystemProfile.from_obj(obj["profile"]),
            scenarios=tuple(BenchmarkScenario.from_obj(s) for s in obj["scenarios"]),
        )


@dataclass(frozen=True)
class ScenarioResult:
    """Accuracy, timing, and resource readings for one executed scenario."""

    scenario: BenchmarkScenario
    status: ResultStatus
    accuracy: tuple[tuple[str, float], ...] = ()
    timing: tuple[tuple[str, float], ...] = ()
    resources: tuple[tuple[str, int], ...] = ()
    log_excerpt: str = ""

    def __post_init__(self):
        object.__setattr__(self, "status", ResultStatus(self.status))
        object.__setattr__(self, "accuracy", _sorted_pairs(self.accuracy))
        object.__setattr__(self, "timing", _sorted_pairs(self.timing))
        object.__setattr__(self, "resources", _sorted_pairs(self.resources))

    def accuracy_dict(self) -> dict[str, float]:
        return dict(self.accuracy)

    def timing_dict(self) -> dict[str, float]:
        return dict(self.timing)

    def resources_dict(self) -> dict[str, int]:
        return dict(self.resources)

    def validate(self, gpu_present: bool = False) -> list[Violation]:
        from causalbench.core.context import scenario_key

        key = scenario_key(self.scenario)
        out = []
        if self.status is ResultStatus.OK:
            expected = {str(m) for m in self.scenario.metrics}
            got = {k for k, _ in self.accuracy}
            for missing in sorted(expected - got):
                out.append(Violation("missing_metric", f"no value for {missing}", key))
            for extra in sorted(got - expected):
                out.append(Violation("extra_metric", f"unexpected value for {extra}", key))
        for k, v in self.timing:
            if k not in TIMING_KEYS:
                out.append(Violation("bad_timing_key", f"unknown timing key {k!r}", key))
            elif v < 0:
                out.append(Violation("negative_timing", f"{k} = {v}", key))
        for k, v in self.resources:
            if k not in RESOURCE_KEYS:
                out.append(Violation("bad_resource_key", f"unknown resource key {k!r}", key))
            elif v < 0:
                out.append(Violation("negative_resource", f"{k} = {v}", key))
        if not gpu_present:
            gpu_keys = [k for k, _ in list(self.timing) + list(self.resources) if "gpu" in k]
            for k in gpu_keys:
                out.append(Violation("gpu_key_without_gpu", f"{k} present on GPU-less profile", key))
        return out

    def to_obj(self) -> dict:
        return {
            "scenario": self.scenario.to_obj(),
            "status": self.status.value,
            "accuracy": dict(self.accuracy),
            "timing": dict(self.timing),
            "resources": dict(self.resources),
            "log_excerpt": self.log_excerpt,
        }

    @classmethod
    def from_obj(cls, obj: Mapping) -> "ScenarioResult":
        return cls(
            scenario=BenchmarkScenario.from_obj(obj["scenario"]),
            status=ResultStatus(obj["status"]),
            accuracy=_sorted_pairs(obj.get("accuracy", {})),
            timing=_sorted_pairs(obj.get("timing", {})),
            resources=_sorted_pairs(obj.get("resources", {})),
            log_excerpt=obj.get("log_excerpt", ""),
        )


@dataclass(frozen=True)
class BenchmarkRun:
    """The recorded outputs of executing an instrumented context."""

    run_id: str
    context_id: str
    profile: SystemProfile
    results: tuple[ScenarioResult, ...]
    executed_by: str
    started_at: str
    finished_at: str
    visibility: Visibility = Visibility.PRIVATE
    minted_identifier: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "visibility", Visibility(self.visibility))
        object.__setattr__(self, "results", tuple(self.results))

    def validate(self) -> list[Violation]:
        out = []
        if self.finished_at < self.started_at:
            out.append(Violation("time_travel", "finished_at precedes started_at", self.run_id))
        if (self.minted_identifier is not None) != (self.visibility is Visibility.PUBLIC):
            out.append(
                Violation(
                    "identifier_visibility",
                    "minted_identifier must be present iff visibility is public",
                    self.run_id,
                )
            )
        gpu_present = self.profile.gpu_model is not None
        for r in self.results:
            out.extend(r.validate(gpu_present=gpu_present))
        return out

    def to_obj(self) -> dict:
        obj = {
            "run_id": self.run_id,
            "context_id": self.context_id,
            "profile": self.profile.to_obj(),
            "results": [r.to_obj() for r in self.results],
            "executed_by": self.executed_by,
            "started_at": self.started_at,
            "finished_at": self.finished_at,
            "visibility": self.visibility.value,
        }
        if self.minted_identifier is not None:
            obj["minted_identifier"] = self.minted_identifier
        return obj

    @classmethod
    def from_obj(cls, obj: Mapping) -> "BenchmarkRun":
        return cls(
            run_id=obj["run_id"],
            context_id=obj["context_id"],
            profile=SystemProfile.from_obj(obj["profile"]),
            results=tuple(ScenarioResult.from_obj(r) for r in obj["results"]),
            executed_by=obj["executed_by"],
            started_at=obj["started_at"],
            finished_at=obj["finished_at"],
            visibility=Visibility(obj["visibility"]),
            minted_identifier=obj.get("minted_identifier"),
        )


DESCRIPTOR_TYPES = {
    ComponentKind.DATASET: DatasetDescriptor,
    ComponentKind.MODEL: ModelDescriptor,
    ComponentKind.METRIC: MetricDescriptor,
}


def descriptor_from_obj(kind: ComponentKind | str, obj: Mapping):
    """Parse a descriptor of the given component kind from its JSON form."""
    return DESCRIPTOR_TYPES[ComponentKind(kind)].from_obj(obj)
