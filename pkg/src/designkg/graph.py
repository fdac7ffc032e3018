"""Per-document directed labeled graphs built from facts.

Nodes are normalized entity strings; each ordered node pair carries the set
of relationship labels observed between the pair, so parallel same-direction
facts collapse into one structural edge. Self-loop facts are dropped (and
counted) because a node relating to itself never occurs in the extracted
knowledge this package targets.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .facts import Fact, normalize_key


class EmptyGraph(ValueError):
    """Graph has no nodes."""


class UnknownEntity(KeyError):
    """Entity not present in the graph."""


@dataclass
class StructuralDigraph:
    """Unlabeled simple digraph over integer node ids."""

    n: int
    out_adj: list[set[int]]

    def in_adj(self) -> list[set[int]]:
        ins: list[set[int]] = [set() for _ in range(self.n)]
        for u, targets in enumerate(self.out_adj):
            for v in targets:
                ins[v].add(u)
        return ins

    def und_adj(self) -> list[set[int]]:
        und: list[set[int]] = [set() for _ in range(self.n)]
        for u, targets in enumerate(self.out_adj):
            for v in targets:
                und[u].add(v)
                und[v].add(u)
        return und

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            (u, v) for u, targets in enumerate(self.out_adj) for v in targets
        )

    @property
    def edge_count(self) -> int:
        return sum(len(t) for t in self.out_adj)

    def copy(self) -> "StructuralDigraph":
        return StructuralDigraph(self.n, [set(t) for t in self.out_adj])


@dataclass
class DocGraph:
    """Directed labeled graph for one document."""

    doc_id: str
    nodes: list[str] = field(default_factory=list)
    edges: dict[tuple[int, int], set[str]] = field(default_factory=dict)
    dropped_self_loops: int = 0
    _index: dict[str, int] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if not self._index:
            self._index = {name: i for i, name in enumerate(self.nodes)}

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        """Number of distinct ordered pairs carrying at least one label."""
        return len(self.edges)

    @property
    def label_count(self) -> int:
        return sum(len(labels) for labels in self.edges.values())

    def node_id(self, entity: str) -> int:
        key = normalize_key(entity)
        if key not in self._index:
            raise UnknownEntity(key)
        return self._index[key]

    def has_node(self, entity: str) -> bool:
        return normalize_key(entity) in self._index

    def add_node(self, entity: str) -> int:
        key = normalize_key(entity)
        if key not in self._index:
            self._index[key] = len(self.nodes)
            self.nodes.append(key)
        return self._index[key]

    def add_edge(self, head: str, tail: str, label: str) -> bool:
        """Add one labeled edge; returns False for a dropped self-loop."""
        h = self.add_node(head)
        t = self.add_node(tail)
        if h == t:
            self.dropped_self_loops += 1
            return False
        self.edges.setdefault((h, t), set()).add(normalize_key(label))
        return True

    def out_adj(self) -> list[set[int]]:
        out: list[set[int]] = [set() for _ in range(self.n_nodes)]
        for (h, t) in self.edges:
            out[h].add(t)
        return out

    def in_adj(self) -> list[set[int]]:
        ins: list[set[int]] = [set() for _ in range(self.n_nodes)]
        for (h, t) in self.edges:
            ins[t].add(h)
        return ins

    def und_adj(self) -> list[set[int]]:
        und: list[set[int]] = [set() for _ in range(self.n_nodes)]
        for (h, t) in self.edges:
            und[h].add(t)
            und[t].add(h)
        return und

    def structure(self) -> StructuralDigraph:
        """Structural copy with labels dropped."""
        return StructuralDigraph(self.n_nodes, self.out_adj())

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


def build_graph(facts: Iterable[Fact], doc_id: str | None = None) -> DocGraph:
    """Combine one document's facts into a graph.

    Nodes merge on normalized entity text; facts whose head and tail
    normalize to the same node are dropped and counted.
    """
    facts = list(facts)
    if doc_id is None:
        doc_ids = {f.doc_id for f in facts}
        if len(doc_ids) > 1:
            raise ValueError(f"facts span multiple documents: {sorted(doc_ids)}")
        doc_id = doc_ids.pop() if doc_ids else ""
    graph = DocGraph(doc_id=doc_id)
    for fact in facts:
        graph.add_edge(fact.head.text, fact.tail.text, fact.rel.text)
    return graph


def sparsity(graph: DocGraph) -> float:
    """Edge count divided by node count."""
    if graph.n_nodes == 0:
        raise EmptyGraph(f"document {graph.doc_id!r} has no nodes")
    return graph.edge_count / graph.n_nodes


def induced_subgraph(graph: DocGraph, node_ids: Iterable[int]) -> DocGraph:
    """Subgraph induced on the given node ids (renumbered, order preserved)."""
    keep = sorted(set(node_ids))
    remap = {old: new for new, old in enumerate(keep)}
    sub = DocGraph(doc_id=graph.doc_id, nodes=[graph.nodes[i] for i in keep])
    for (h, t), labels in graph.edges.items():
        if h in remap and t in remap:
            sub.edges[(remap[h], remap[t])] = set(labels)
    return sub


def neighborhood(graph: DocGraph, entity: str, hops: int = 1) -> DocGraph:
    """Induced subgraph on nodes within ``hops`` undirected steps of ``entity``."""
    if hops < 1:
        raise ValueError(f"hops must be >= 1, got {hops}")
    start = graph.node_id(entity)
    und = graph.und_adj()
    seen = {start: 0}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        if seen[u] == hops:
            continue
        for v in und[u]:
            if v not in seen:
                seen[v] = seen[u] + 1
                queue.append(v)
    return induced_subgraph(graph, seen)


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(graph: DocGraph, name: str | None = None) -> str:
    """Graphviz DOT rendering with labels joined by '; ' per edge."""
    lines = [f'digraph "{_dot_escape(name or graph.doc_id or "graph")}" {{']
    for node in graph.nodes:
        lines.append(f'  "{_dot_escape(node)}";')
    for (h, t) in graph.sorted_edges():
        label = "; ".join(sorted(graph.edges[(h, t)]))
        lines.append(
            f'  "{_dot_escape(graph.nodes[h])}" -> "{_dot_escape(graph.nodes[t])}"'
            f' [label="{_dot_escape(label)}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(graph: DocGraph) -> str:
    """One JSONL line: ``{doc_id, nodes:[...], edges:[{h,t,labels:[...]}]}``."""
    return json.dumps(
        {
            "doc_id": graph.doc_id,
            "nodes": list(graph.nodes),
            "edges": [
                {"h": h, "t": t, "labels": sorted(graph.edges[(h, t)])}
                for (h, t) in graph.sorted_edges()
            ],
        },
        ensure_ascii=False,
        sort_keys=True,
    )


def graph_from_json(line: str) -> DocGraph:
    obj = json.loads(line)
    graph = DocGraph(doc_id=obj["doc_id"], nodes=list(obj["nodes"]))
    for edge in obj["edges"]:
        graph.edges[(edge["h"], edge["t"])] = set(edge["labels"])
    return graph
