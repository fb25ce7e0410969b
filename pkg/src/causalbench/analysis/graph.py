"""Declared causal structure over benchmark factors and outcomes.

The graph is a priori knowledge, not something learned from run data.
Node names double as table column selectors: a node matches the column of
the same name, or every column under ``<name>.`` for the dotted families
(``data``, ``hyper``, ``hw``, ``sw``, ``accuracy``, ``time``, ``res``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Mapping

from .errors import InvalidGraph, UnknownNode
from .table import FACTOR, OUTCOME, RunTable

_KINDS = (FACTOR, OUTCOME)


@dataclass(frozen=True)
class CausalGraph:
    nodes: tuple[tuple[str, str], ...]
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple((str(n), str(k)) for n, k in self.nodes))
        object.__setattr__(self, "edges", tuple((str(a), str(b)) for a, b in self.edges))
        kinds = dict(self.nodes)
        if len(kinds) != len(self.nodes):
            raise InvalidGraph("duplicate node names")
        for name, kind in self.nodes:
            if kind not in _KINDS:
                raise InvalidGraph(f"node {name!r} has unknown kind {kind!r}")
        for a, b in self.edges:
            for endpoint in (a, b):
                if endpoint not in kinds:
                    raise InvalidGraph(f"edge endpoint {endpoint!r} is not a declared node")
            if kinds[a] == OUTCOME and kinds[b] == FACTOR:
                raise InvalidGraph(f"outcome {a!r} may not point at factor {b!r}")
        self._check_acyclic()

    def _check_acyclic(self) -> None:
        children: dict[str, list[str]] = {name: [] for name, _ in self.nodes}
        indegree = {name: 0 for name, _ in self.nodes}
        for a, b in self.edges:
            children[a].append(b)
            indegree[b] += 1
        queue = [n for n, d in indegree.items() if d == 0]
        seen = 0
        while queue:
            node = queue.pop()
            seen += 1
            for child in children[node]:
                indegree[child] -= 1
                if indegree[child] == 0:
                    queue.append(child)
        if seen != len(indegree):
            cyclic = sorted(n for n, d in indegree.items() if d > 0)
            raise InvalidGraph(f"graph has a cycle through {cyclic}")

    def kind(self, node: str) -> str:
        kinds = dict(self.nodes)
        if node not in kinds:
            raise UnknownNode(f"no node named {node!r}")
        return kinds[node]

    def parents(self, node: str) -> tuple[str, ...]:
        self.kind(node)
        return tuple(sorted(a for a, b in self.edges if b == node))

    def ancestors(self, node: str) -> tuple[str, ...]:
        self.kind(node)
        out: set[str] = set()
        frontier = [node]
        while frontier:
            current = frontier.pop()
            for a, b in self.edges:
                if b == current and a not in out:
                    out.add(a)
                    frontier.append(a)
        return tuple(sorted(out))

    def node_for_column(self, column: str) -> str:
        """The node owning a table column, by exact name or dotted prefix."""
        kinds = dict(self.nodes)
        if column in kinds:
            return column
        head = column.split(".", 1)[0]
        if head in kinds:
            return head
        raise UnknownNode(f"no graph node covers column {column!r}")

    def columns_for_node(self, node: str, table: RunTable) -> tuple[str, ...]:
        self.kind(node)
        prefix = node + "."
        return tuple(c for c in table.columns if c == node or c.startswith(prefix))

    def to_obj(self) -> dict:
        return {
            "nodes": [{"name": n, "kind": k} for n, k in self.nodes],
            "edges": [[a, b] for a, b in self.edges],
        }

    @classmethod
    def from_obj(cls, obj: Mapping) -> "CausalGraph":
        try:
            nodes = tuple((n["name"], n["kind"]) for n in obj["nodes"])
            edges = tuple((a, b) for a, b in obj["edges"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidGraph(f"malformed graph object: {exc}") from exc
        return cls(nodes=nodes, edges=edges)


def load_graph(path: Path | str) -> CausalGraph:
    try:
        body = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidGraph(f"{path}: {exc}") from exc
    return CausalGraph.from_obj(body)


def default_graph() -> CausalGraph:
    """The shipped factor/outcome DAG matching the run-table column scheme."""
    body = resources.files("causalbench.data").joinpath("causal_graph.json").read_text("utf-8")
    return CausalGraph.from_obj(json.loads(body))
