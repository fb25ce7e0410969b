"""Local scenario execution: system profiling, measured plugin runs, and
assembly of uploadable benchmark runs."""

from .environment import GPU_ENV_VAR, resolve_environment
from .errors import (
    HarnessError,
    IncompatibleScenario,
    ProbeFailure,
    ShapeMismatch,
    SpawnFailure,
)
from .measure import ExecutionLimits, MeasuredExecution, measure_execution
from .metrics import read_adjacency_csv, reference_metric_shd, write_adjacency_csv
from .runner import ComponentSource, StoreSource, execute, run_scenario

__all__ = [
    "GPU_ENV_VAR",
    "resolve_environment",
    "HarnessError",
    "IncompatibleScenario",
    "ProbeFailure",
    "ShapeMismatch",
    "SpawnFailure",
    "ExecutionLimits",
    "MeasuredExecution",
    "measure_execution",
    "read_adjacency_csv",
    "reference_metric_shd",
    "write_adjacency_csv",
    "ComponentSource",
    "StoreSource",
    "execute",
    "run_scenario",
]
