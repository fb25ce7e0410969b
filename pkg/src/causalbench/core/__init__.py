from causalbench.core.canonical import (
    canonical_dumps,
    canonical_dumps_bytes,
    canonical_loads,
    new_ulid,
    sha256_hex,
)
from causalbench.core.context import (
    expand_context,
    instrument,
    scenario_key,
    validate_run,
)
from causalbench.core.errors import CoreError, EmptyFamily, ShapeMismatch
from causalbench.core.types import (
    BenchmarkContext,
    BenchmarkRun,
    BenchmarkScenario,
    ComponentId,
    ComponentKind,
    DataRole,
    DatasetDescriptor,
    Direction,
    FileEntry,
    HyperparameterSetting,
    InstrumentedContext,
    MetricDescriptor,
    ModelDescriptor,
    PortSpec,
    ResultStatus,
    ScenarioResult,
    SignatureSpec,
    SystemProfile,
    TaskKind,
    Violation,
    Visibility,
)

__all__ = [
    "BenchmarkContext",
    "BenchmarkRun",
    "BenchmarkScenario",
    "ComponentId",
    "ComponentKind",
    "CoreError",
    "DataRole",
    "DatasetDescriptor",
    "Direction",
    "EmptyFamily",
    "FileEntry",
    "HyperparameterSetting",
    "InstrumentedContext",
    "MetricDescriptor",
    "ModelDescriptor",
    "PortSpec",
    "ResultStatus",
    "ScenarioResult",
    "ShapeMismatch",
    "SignatureSpec",
    "SystemProfile",
    "TaskKind",
    "Violation",
    "Visibility",
    "canonical_dumps",
    "canonical_dumps_bytes",
    "canonical_loads",
    "expand_context",
    "instrument",
    "new_ulid",
    "scenario_key",
    "sha256_hex",
    "validate_run",
]
