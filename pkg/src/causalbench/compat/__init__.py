"""Component compatibility from task types and input/output signatures.

Matching is nominal: ports pair up by data role, never by structural schema.
A full check assigns each required consumer port its own provider port (one
provider feeds at most one input), so a metric that compares a prediction
against ground truth really needs both copies present. Metrics may draw
required inputs from the dataset (ground truth) as well as from model
outputs.

``suggest`` powers the context-builder flow. A candidate stays suitable only
while every check already decidable against the chosen components passes;
checks are evaluated universally over the chosen set because an assembled
context pairs every dataset with every model under the full metric set. Two
consequences follow. First, judgments only ever tighten as components are
chosen, so picking a suggested component never retroactively blesses a
rejected one. Second, a dataset is vetted against a chosen metric before any
model exists: every input role the metric consumes must already appear among
the dataset's ports, since the dataset is the only source of ground truth and
a model can only add prediction-side copies of those same roles.
"""

from __future__ import annotations

from dataclasses import dataclass

from causalbench.core.types import (
    DatasetDescriptor,
    MetricDescriptor,
    ModelDescriptor,
    PortSpec,
)

__all__ = [
    "CompatReport",
    "ports_satisfied",
    "provider_assignment",
    "check_scenario",
    "suggest",
    "SuggestPartition",
]


@dataclass(frozen=True)
class CompatReport:
    """Outcome of a port/task compatibility check.

    ``missing`` holds (consumer port, reason) pairs for unsatisfied required
    ports; ``satisfied`` holds (consumer port, producer port) mappings, with
    an empty producer for unmatched optional ports. ``compatible`` is true
    exactly when ``missing`` is empty.
    """

    compatible: bool
    missing: tuple[tuple[str, str], ...] = ()
    satisfied: tuple[tuple[str, str], ...] = ()

    def to_obj(self) -> dict:
        return {
            "compatible": self.compatible,
            "missing": [{"port": p, "reason": r} for p, r in self.missing],
            "satisfied": [{"port": p, "producer": q} for p, q in self.satisfied],
        }

    @staticmethod
    def merge(reports: list["CompatReport"]) -> "CompatReport":
        missing = tuple(m for r in reports for m in r.missing)
        satisfied = tuple(s for r in reports for s in r.satisfied)
        return CompatReport(compatible=not missing, missing=missing, satisfied=satisfied)


def provider_assignment(
    provided: tuple[PortSpec, ...] | list[PortSpec],
    required: tuple[PortSpec, ...] | list[PortSpec],
) -> list[int | None]:
    """For each consumer port, the index of the provider port it claims.

    Required ports claim first, in declaration order, preferring a provider
    with the same name; optional ports take leftovers afterwards. None marks
    an unmatched port. The harness uses the indices to bind actual files, so
    this is the single source of truth for who feeds whom.
    """
    unused = list(enumerate(provided))
    assignment: list[int | None] = [None] * len(required)
    for claiming_required in (True, False):
        for i, port in enumerate(required):
            if port.required is not claiming_required:
                continue
            candidates = [(j, p) for j, p in unused if p.data_role is port.data_role]
            if not candidates:
                continue
            chosen = next(
                (c for c in candidates if c[1].port_name == port.port_name), candidates[0]
            )
            unused.remove(chosen)
            assignment[i] = chosen[0]
    return assignment


def ports_satisfied(
    provided: tuple[PortSpec, ...] | list[PortSpec],
    required: tuple[PortSpec, ...] | list[PortSpec],
    label: str = "",
) -> CompatReport:
    """Assign each required port a provider port with the same data role.

    Each provider feeds at most one consumer, so two inputs of the same role
    need two providers. Required ports claim providers first (same-name
    providers preferred); optional (required=false) ports take leftovers and
    never block compatibility, appearing with an empty producer when
    unmatched.
    """
    prefix = f"{label}:" if label else ""
    assignment = provider_assignment(provided, required)
    matched: dict[int, tuple[str, str]] = {}
    missing: list[tuple[str, str]] = []
    for i, port in enumerate(required):
        j = assignment[i]
        if port.required:
            if j is None:
                missing.append(
                    (prefix + port.port_name, f"no provider for role {port.data_role.value}")
                )
            else:
                matched[i] = (prefix + port.port_name, provided[j].port_name)
        else:
            matched[i] = (prefix + port.port_name, provided[j].port_name if j is not None else "")
    satisfied = tuple(matched[i] for i in sorted(matched))
    return CompatReport(compatible=not missing, missing=tuple(missing), satisfied=tuple(satisfied))


def _roles_covered(dataset: DatasetDescriptor, metric: MetricDescriptor) -> list[str]:
    """Input roles a metric consumes that the dataset carries no port for."""
    available = {p.data_role for p in dataset.provided_ports}
    gaps = []
    for port in metric.signature.inputs:
        if port.required and port.data_role not in available:
            gaps.append(port.data_role.value)
    return sorted(set(gaps))


def check_scenario(
    dataset: DatasetDescriptor,
    model: ModelDescriptor,
    metrics: list[MetricDescriptor] | tuple[MetricDescriptor, ...],
) -> CompatReport:
    """Full scenario compatibility: task agreement, dataset feeds the model,
    and every metric is fed by model outputs plus dataset ground truth."""
    reports = []
    for metric in metrics:
        if metric.signature.task is not model.signature.task:
            reports.append(
                CompatReport(
                    compatible=False,
                    missing=(
                        (
                            f"task:{metric.id}",
                            f"metric task {metric.signature.task.value} != model task "
                            f"{model.signature.task.value}",
                        ),
                    ),
                )
            )
    reports.append(ports_satisfied(dataset.provided_ports, model.signature.inputs, label="model"))
    for metric in metrics:
        providers = tuple(model.signature.outputs) + tuple(dataset.provided_ports)
        reports.append(ports_satisfied(providers, metric.signature.inputs, label=f"metric {metric.id}"))
    return CompatReport.merge(reports)


@dataclass(frozen=True)
class SuggestPartition:
    """Per-kind split of candidates into suitable and incompatible-with-reasons."""

    suitable: tuple = ()
    incompatible: tuple = ()  # pairs of (descriptor, tuple of reasons)

    def to_obj(self) -> dict:
        return {
            "suitable": [str(d.id) for d in self.suitable],
            "incompatible": [
                {"id": str(d.id), "reasons": list(reasons)} for d, reasons in self.incompatible
            ],
        }


def _candidate_reasons(
    candidate,
    datasets: list[DatasetDescriptor],
    models: list[ModelDescriptor],
    metrics: list[MetricDescriptor],
) -> list[str]:
    """Collect failures of every check involving the candidate that is already
    decidable from the chosen components. Checks whose counterpart kind has no
    chosen component stay vacuous."""
    kind = candidate.kind.value
    pool_d = datasets + ([candidate] if kind == "dataset" else [])
    pool_m = models + ([candidate] if kind == "model" else [])
    pool_a = metrics + ([candidate] if kind == "metric" else [])

    def involves(*parts) -> bool:
        return any(p is candidate for p in parts)

    reasons: list[str] = []
    for m in pool_m:
        for a in pool_a:
            if involves(m, a) and a.signature.task is not m.signature.task:
                reasons.append(
                    f"task mismatch: model {m.id} is {m.signature.task.value}, "
                    f"metric {a.id} is {a.signature.task.value}"
                )
    for d in pool_d:
        for m in pool_m:
            if involves(d, m):
                report = ports_satisfied(d.provided_ports, m.signature.inputs)
                for port, reason in report.missing:
                    reasons.append(f"model {m.id} input {port} unsatisfied by {d.id}: {reason}")
    for d in pool_d:
        for a in pool_a:
            if involves(d, a):
                for role in _roles_covered(d, a):
                    reasons.append(f"metric {a.id} input unsatisfied by {d.id}: missing role {role}")
            for m in pool_m:
                if not involves(d, a, m):
                    continue
                providers = tuple(m.signature.outputs) + tuple(d.provided_ports)
                report = ports_satisfied(providers, a.signature.inputs)
                for port, reason in report.missing:
                    reasons.append(
                        f"metric {a.id} input {port} unsatisfied by {d.id} with {m.id}: {reason}"
                    )
    seen = set()
    unique = []
    for r in reasons:
        if r not in seen:
            seen.add(r)
            unique.append(r)
    return unique


def suggest(partial: dict, candidates: dict) -> dict[str, SuggestPartition]:
    """Partition candidate components into suitable and incompatible sets.

    ``partial`` holds the already-chosen descriptors per kind (keys
    ``datasets``/``models``/``metrics``, each optional); ``candidates`` holds
    the per-kind lists to judge. Ordering is deterministic: suitable first,
    then by component id, within each kind.
    """
    chosen_d = list(partial.get("datasets", ()))
    chosen_m = list(partial.get("models", ()))
    chosen_a = list(partial.get("metrics", ()))
    out: dict[str, SuggestPartition] = {}
    for kind_key in ("datasets", "models", "metrics"):
        suitable = []
        incompatible = []
        for candidate in candidates.get(kind_key, ()):
            reasons = _candidate_reasons(candidate, chosen_d, chosen_m, chosen_a)
            if reasons:
                incompatible.append((candidate, tuple(reasons)))
            else:
                suitable.append(candidate)
        suitable.sort(key=lambda c: c.id)
        incompatible.sort(key=lambda pair: pair[0].id)
        out[kind_key] = SuggestPartition(tuple(suitable), tuple(incompatible))
    return out
