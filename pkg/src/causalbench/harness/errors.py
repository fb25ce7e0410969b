"""Harness error types."""

from __future__ import annotations


class HarnessError(Exception):
    code = "harness_error"

    def __init__(self, detail: str = ""):
        super().__init__(detail or self.__class__.__name__)
        self.detail = detail or self.__class__.__name__


class ProbeFailure(HarnessError):
    """A mandatory system probe was unavailable; carries what was resolved."""

    code = "probe_failure"

    def __init__(self, detail: str, partial: dict | None = None):
        super().__init__(detail)
        self.partial = dict(partial or {})


class SpawnFailure(HarnessError):
    code = "spawn_failure"


class ShapeMismatch(HarnessError):
    code = "shape_mismatch"


class IncompatibleScenario(HarnessError):
    code = "incompatible_scenario"

    def __init__(self, detail: str, report=None):
        super().__init__(detail)
        self.report = report
