"""Causally-informed exploration over recorded benchmark runs."""

from .errors import (
    AnalysisError,
    EmptyTable,
    InvalidGraph,
    MissingObjective,
    NoOverlap,
    UnknownColumn,
    UnknownNode,
)
from .graph import CausalGraph, default_graph, load_graph
from .impact import EffectEstimate, StratumDetail, bin_column, estimate_impact
from .pareto import pareto_front, table_pareto
from .predict import OutcomePrediction, PredictionReport, predict
from .recommend import Recommendation, recommend
from .report import plot_group_means, plot_tradeoff, write_csv
from .table import AGGREGATES, FACTOR, OUTCOME, RunTable, build_table, slice_table
from .virtual import CoverageReport, assemble_virtual_run

__all__ = [
    "AnalysisError",
    "EmptyTable",
    "InvalidGraph",
    "MissingObjective",
    "NoOverlap",
    "UnknownColumn",
    "UnknownNode",
    "CausalGraph",
    "default_graph",
    "load_graph",
    "EffectEstimate",
    "StratumDetail",
    "bin_column",
    "estimate_impact",
    "pareto_front",
    "table_pareto",
    "OutcomePrediction",
    "PredictionReport",
    "predict",
    "Recommendation",
    "recommend",
    "plot_group_means",
    "plot_tradeoff",
    "write_csv",
    "AGGREGATES",
    "FACTOR",
    "OUTCOME",
    "RunTable",
    "build_table",
    "slice_table",
    "CoverageReport",
    "assemble_virtual_run",
]
