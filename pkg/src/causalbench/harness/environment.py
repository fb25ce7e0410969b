"""Host environment probing for the system profile.

The profile captures everything a reader needs to interpret timing and
resource readings: CPU, core count, memory, OS, runtime versions, and the
GPU when one is declared. Probes are deterministic on an unchanged host so
back-to-back calls hash identically.
"""

from __future__ import annotations

import os
import platform

import numpy
import psutil

from causalbench.core.types import SystemProfile

from .errors import ProbeFailure

GPU_ENV_VAR = "CB_GPU_MODEL"


def _cpu_model() -> str:
    try:
        with open("/proc/cpuinfo", encoding="utf-8") as fh:
            for line in fh:
                if line.lower().startswith("model name"):
                    return line.split(":", 1)[1].strip()
    except OSError:
        pass
    return platform.processor() or platform.machine() or "unknown-cpu"


def resolve_environment() -> SystemProfile:
    """Probe the host; raises ProbeFailure when core counts or memory are
    unavailable. GPU detection is declaration-based: set CB_GPU_MODEL for
    hosts with a GPU; otherwise the profile carries no GPU and runs must not
    report GPU readings."""
    partial: dict = {"cpu_model": _cpu_model()}
    cores = psutil.cpu_count(logical=False) or psutil.cpu_count(logical=True)
    if not cores or cores < 1:
        raise ProbeFailure("cannot determine CPU core count", partial)
    partial["physical_cores"] = int(cores)
    try:
        total = int(psutil.virtual_memory().total)
    except Exception as exc:
        raise ProbeFailure(f"cannot determine total memory: {exc}", partial) from exc
    partial["total_memory_bytes"] = total
    gpu_model = os.environ.get(GPU_ENV_VAR) or None
    return SystemProfile(
        cpu_model=partial["cpu_model"],
        physical_cores=partial["physical_cores"],
        total_memory_bytes=total,
        os_name_version=f"{platform.system()} {platform.release()}",
        runtime_versions={
            "python": platform.python_version(),
            "numpy": numpy.__version__,
        },
        gpu_model=gpu_model,
    )
