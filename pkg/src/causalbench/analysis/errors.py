"""Analysis error types."""

from __future__ import annotations


class AnalysisError(Exception):
    code = "analysis_error"

    def __init__(self, detail: str = ""):
        super().__init__(detail or self.__class__.__name__)
        self.detail = detail or self.__class__.__name__


class UnknownColumn(AnalysisError):
    code = "unknown_column"


class UnknownNode(AnalysisError):
    code = "unknown_node"


class InvalidGraph(AnalysisError):
    code = "invalid_graph"


class NoOverlap(AnalysisError):
    """No stratum contains both treatment arms."""

    code = "no_overlap"


class MissingObjective(AnalysisError):
    code = "missing_objective"


class EmptyTable(AnalysisError):
    code = "empty_table"
