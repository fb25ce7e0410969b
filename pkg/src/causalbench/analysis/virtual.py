"""Assembling virtual benchmark runs from previously recorded results.

A declared context is matched against every accessible run (public plus
the caller's own): any recorded scenario result whose scenario key falls
inside the context's expansion joins the virtual table, across users and
machines. The coverage report says which expanded keys were found, which
are still unexecuted, and how many distinct system profiles contributed.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from causalbench.core.context import expand_context, scenario_key
from causalbench.core.types import BenchmarkContext, ComponentKind
from causalbench.registry.errors import Forbidden, UnknownComponent

from .table import RunTable, build_table


@dataclass(frozen=True)
class CoverageReport:
    matched: tuple[str, ...]
    unmatched: tuple[str, ...]
    profiles: tuple[str, ...]
    contributing_runs: tuple[str, ...]

    @property
    def complete(self) -> bool:
        return not self.unmatched

    def to_obj(self) -> dict:
        return {
            "matched": list(self.matched),
            "unmatched": list(self.unmatched),
            "profiles": list(self.profiles),
            "contributing_runs": list(self.contributing_runs),
            "complete": self.complete,
        }


def assemble_virtual_run(
    store, context: BenchmarkContext, principal: str | None
) -> tuple[RunTable, CoverageReport]:
    expected = {scenario_key(s) for s in expand_context(context)}

    pseudo_runs = []
    matched_keys: set[str] = set()
    profiles: set[str] = set()
    for row in store.list_runs(principal):
        run = store.get_run(row["run_id"], principal)
        hits = tuple(
            result for result in run.results if scenario_key(result.scenario) in expected
        )
        if not hits:
            continue
        pseudo_runs.append(dataclasses.replace(run, results=hits))
        matched_keys.update(scenario_key(result.scenario) for result in hits)
        profiles.add(run.profile.profile_hash)

    descriptors = []
    seen_datasets = set()
    for run in pseudo_runs:
        for result in run.results:
            dataset_id = str(result.scenario.dataset)
            if dataset_id in seen_datasets:
                continue
            seen_datasets.add(dataset_id)
            try:
                record = store.get_component(dataset_id, principal)
            except (UnknownComponent, Forbidden):
                continue
            if record.kind is ComponentKind.DATASET:
                descriptors.append(record.descriptor)

    table = build_table(pseudo_runs, descriptors)
    report = CoverageReport(
        matched=tuple(sorted(matched_keys)),
        unmatched=tuple(sorted(expected - matched_keys)),
        profiles=tuple(sorted(profiles)),
        contributing_runs=tuple(sorted(run.run_id for run in pseudo_runs)),
    )
    return table, report
