"""Pure set-algebra over benchmark contexts.

A context expands into the Cartesian product of its dataset, model, and
per-model hyperparameter families; scenarios are ordered canonically by
(dataset id, model id, canonical hyper serialization) so that expansion is
reproducible across hosts and runs diff cleanly.
"""

from __future__ import annotations

from causalbench.core.canonical import sha256_hex
from causalbench.core.errors import EmptyFamily
from causalbench.core.types import (
    BenchmarkContext,
    BenchmarkRun,
    BenchmarkScenario,
    InstrumentedContext,
    SystemProfile,
    Violation,
)

__all__ = ["expand_context", "instrument", "scenario_key", "validate_run"]


def expand_context(context: BenchmarkContext) -> list[BenchmarkScenario]:
    """Expand a context into its ordered list of benchmark scenarios.

    Models with no declared hyperparameter list contribute a single scenario
    per dataset under the empty setting. Raises :class:`EmptyFamily` when any
    of the dataset/model/metric families is empty.
    """
    for label, ids in (
        ("datasets", context.datasets),
        ("models", context.models),
        ("metrics", context.metrics),
    ):
        if not ids:
            raise EmptyFamily(f"context {context.context_id!r} selects no {label}")
    scenarios = [
        BenchmarkScenario(dataset=d, model=m, metrics=context.metrics, hyper=h)
        for d in context.datasets
        for m in context.models
        for h in context.family_for(m)
    ]
    scenarios.sort(key=lambda s: (s.dataset, s.model, s.hyper.canonical_json))
    return scenarios


def instrument(context: BenchmarkContext, profile: SystemProfile) -> InstrumentedContext:
    """Couple a context's expanded scenarios to one concrete system profile."""
    return InstrumentedContext(
        context=context, profile=profile, scenarios=tuple(expand_context(context))
    )


def scenario_key(scenario: BenchmarkScenario) -> str:
    """Deterministic dedup key: ``dataset@v|model@v|<hyper sha256 prefix>``."""
    hyper_digest = sha256_hex(scenario.hyper.canonical_json.encode("utf-8"))[:16]
    return f"{scenario.dataset}|{scenario.model}|{hyper_digest}"


def validate_run(run: BenchmarkRun, context: BenchmarkContext) -> list[Violation]:
    """Check a run's result shape against its context; violations are data.

    An empty report means every per-result invariant holds and the result
    scenarios cover exactly the context's expansion.
    """
    report = run.validate()
    if run.context_id != context.context_id:
        report.append(
            Violation(
                "context_mismatch",
                f"run names context {run.context_id!r}, expected {context.context_id!r}",
                run.run_id,
            )
        )
    try:
        expected = {scenario_key(s) for s in expand_context(context)}
    except EmptyFamily as exc:
        report.append(Violation("empty_family", str(exc), context.context_id))
        return report
    got = [scenario_key(r.scenario) for r in run.results]
    got_set = set(got)
    if len(got) != len(got_set):
        dupes = sorted({k for k in got if got.count(k) > 1})
        for key in dupes:
            report.append(Violation("duplicate_scenario", "result repeated", key))
    for key in sorted(expected - got_set):
        report.append(Violation("missing_scenario", "no result for expanded scenario", key))
    for key in sorted(got_set - expected):
        report.append(Violation("extra_scenario", "result outside context expansion", key))
    return report
