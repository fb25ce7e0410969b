"""Measured subprocess execution.

Wall time wraps the process lifetime on a monotonic clock. CPU time is the
children-rusage delta around the invocation, which accumulates user+system
time of the child and every descendant it reaped. Peak memory combines a
sampling thread walking the process tree's resident set (catching
short-lived spikes in children) with the kernel's child max-RSS counter,
the latter only when this invocation raised it.
"""

from __future__ import annotations

import os
import resource
import signal
import subprocess
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path

import psutil

from .errors import SpawnFailure

_SAMPLE_INTERVAL_S = 0.005


@dataclass(frozen=True)
class ExecutionLimits:
    timeout_s: float = 300.0
    max_output_bytes: int = 65536
    working_dir_root: str = ""

    def __post_init__(self):
        if not self.timeout_s > 0:
            raise ValueError("timeout_s must be positive")
        if self.max_output_bytes < 1:
            raise ValueError("max_output_bytes must be positive")


@dataclass(frozen=True)
class MeasuredExecution:
    exit_code: int | None
    timed_out: bool
    wall_time_s: float
    cpu_time_s: float
    peak_rss_bytes: int
    log_excerpt: str

    @property
    def ok(self) -> bool:
        return self.exit_code == 0 and not self.timed_out


class _TreeRssSampler(threading.Thread):
    def __init__(self, pid: int):
        super().__init__(daemon=True)
        self.pid = pid
        self.peak = 0
        self._halt = threading.Event()

    def run(self) -> None:
        try:
            root = psutil.Process(self.pid)
        except psutil.NoSuchProcess:
            return
        while not self._halt.is_set():
            total = 0
            try:
                procs = [root] + root.children(recursive=True)
            except psutil.NoSuchProcess:
                break
            for proc in procs:
                try:
                    total += proc.memory_info().rss
                except psutil.Error:
                    continue
            self.peak = max(self.peak, total)
            self._halt.wait(_SAMPLE_INTERVAL_S)

    def stop(self) -> None:
        self._halt.set()
        self.join(timeout=1.0)


def _excerpt(data: bytes, limit: int) -> str:
    text = data.decode("utf-8", errors="replace")
    if len(text) <= limit:
        return text
    return "... [truncated] ...\n" + text[-limit:]


def measure_execution(
    argv: list[str],
    workdir: Path | str,
    limits: ExecutionLimits,
    env: dict | None = None,
) -> MeasuredExecution:
    """Run argv to completion (or timeout) under measurement.

    The child starts its own session so a timeout can kill the whole tree.
    Stdout and stderr are merged into the log excerpt.
    """
    before = resource.getrusage(resource.RUSAGE_CHILDREN)
    start = time.monotonic()
    try:
        proc = subprocess.Popen(
            argv,
            cwd=str(workdir),
            stdout=subprocess.PIPE,
            stderr=subprocess.STDOUT,
            env=env,
            start_new_session=True,
        )
    except OSError as exc:
        raise SpawnFailure(f"cannot spawn {argv[0]!r}: {exc}") from exc
    sampler = _TreeRssSampler(proc.pid)
    sampler.start()
    timed_out = False
    try:
        output, _ = proc.communicate(timeout=limits.timeout_s)
    except subprocess.TimeoutExpired:
        timed_out = True
        try:
            os.killpg(os.getpgid(proc.pid), signal.SIGKILL)
        except (ProcessLookupError, PermissionError):
            proc.kill()
        output, _ = proc.communicate()
    finally:
        sampler.stop()
    wall = time.monotonic() - start
    after = resource.getrusage(resource.RUSAGE_CHILDREN)
    cpu = max(0.0, (after.ru_utime + after.ru_stime) - (before.ru_utime + before.ru_stime))
    peak = sampler.peak
    if after.ru_maxrss > before.ru_maxrss:
        # ru_maxrss is in KiB on Linux and only moved because of this child
        peak = max(peak, after.ru_maxrss * 1024)
    return MeasuredExecution(
        exit_code=None if timed_out else proc.returncode,
        timed_out=timed_out,
        wall_time_s=wall,
        cpu_time_s=cpu,
        peak_rss_bytes=int(peak),
        log_excerpt=_excerpt(output or b"", limits.max_output_bytes),
    )
