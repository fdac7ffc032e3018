"""Connected 3-node and 4-node subgraph enumeration and classification.

Every connected k-node induced subgraph is classified by its degree
signature: sorted in-degrees, sorted out-degrees, and sorted per-pair
directed-edge counts, formatted like ``011-002-011``. For k = 3 the
signature classes coincide exactly with the 13 isomorphism classes of
connected 3-node digraphs; for k = 4 the 134 signatures are a coarsening of
the 199 isomorphism classes, and :func:`enumerate_all_patterns` reports
which signatures merge non-isomorphic shapes.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Iterator, Mapping, Sequence

from .graph import DocGraph, StructuralDigraph


class DisconnectedSubgraph(ValueError):
    """Node set whose induced subgraph is not weakly connected."""


def _structure(graph: DocGraph | StructuralDigraph) -> StructuralDigraph:
    return graph.structure() if isinstance(graph, DocGraph) else graph


def _connected_subset(und: Sequence[set[int]], nodes: Sequence[int]) -> bool:
    subset = set(nodes)
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        u = stack.pop()
        for v in und[u] & subset:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == len(subset)


def pattern_signature(
    graph: DocGraph | StructuralDigraph, nodes: Iterable[int]
) -> str:
    """Degree signature of the induced subgraph on ``nodes``.

    Raises DisconnectedSubgraph when the induced subgraph is not weakly
    connected, since disconnected node sets have no pattern.
    """
    struct = _structure(graph)
    members = sorted(set(nodes))
    local = {node: i for i, node in enumerate(members)}
    k = len(members)
    ins = [0] * k
    outs = [0] * k
    pair_counts = {frozenset(p): 0 for p in combinations(range(k), 2)}
    connected_check: list[set[int]] = [set() for _ in range(k)]
    for node in members:
        for target in struct.out_adj[node] & set(members):
            u, v = local[node], local[target]
            outs[u] += 1
            ins[v] += 1
            pair_counts[frozenset((u, v))] += 1
            connected_check[u].add(v)
            connected_check[v].add(u)
    if not _connected_subset(connected_check, list(range(k))):
        raise DisconnectedSubgraph(f"nodes {members} induce a disconnected subgraph")
    groups = (sorted(ins), sorted(outs), sorted(pair_counts.values()))
    return "-".join("".join(str(d) for d in g) for g in groups)


def enumerate_3node(graph: DocGraph | StructuralDigraph) -> Iterator[tuple[int, int, int]]:
    """Every unordered node triple with a weakly connected induced subgraph.

    Triples are produced by pairing edges that share a node (every connected
    triple contains such a pair), deduplicated, and yielded in sorted order.
    """
    struct = _structure(graph)
    und = struct.und_adj()
    found: set[tuple[int, int, int]] = set()
    for center in range(struct.n):
        for a, b in combinations(sorted(und[center]), 2):
            found.add(tuple(sorted((center, a, b))))
    yield from sorted(found)


def enumerate_4node(
    graph: DocGraph | StructuralDigraph,
    seed_signatures: Iterable[str] | None = None,
    exhaustive: bool = False,
) -> Iterator[tuple[int, int, int, int]]:
    """Connected quadruples obtained by extending seed triples with one edge.

    Only triples whose signature is in ``seed_signatures`` are extended;
    ``exhaustive=True`` (or a seed covering all 13 signatures) makes this
    equal to brute-force enumeration of connected quadruples, since every
    connected quadruple contains a connected triple plus an incident edge.
    """
    seeds = None if exhaustive else frozenset(seed_signatures or ())
    if seeds is not None and not seeds:
        raise ValueError("seed_signatures must be non-empty unless exhaustive")
    struct = _structure(graph)
    und = struct.und_adj()
    found: set[tuple[int, int, int, int]] = set()
    for triple in enumerate_3node(struct):
        if seeds is not None and pattern_signature(struct, triple) not in seeds:
            continue
        neighbors: set[int] = set()
        for node in triple:
            neighbors |= und[node]
        for extra in neighbors - set(triple):
            found.add(tuple(sorted(triple + (extra,))))
    yield from sorted(found)


@dataclass(frozen=True)
class PatternCounts:
    """Signature counts for one graph's connected k-node subgraphs."""

    k: int
    counts: Mapping[str, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def get(self, signature: str) -> int:
        return self.counts.get(signature, 0)


def count_patterns(
    graph: DocGraph | StructuralDigraph,
    k: int,
    seed_signatures: Iterable[str] | None = None,
    exhaustive: bool | None = None,
) -> PatternCounts:
    """Aggregate signatures over the enumeration stream (one count per node set).

    For k = 4 the enumeration is seeded by ``seed_signatures``; omitting the
    seed implies exhaustive enumeration.
    """
    if k not in (3, 4):
        raise ValueError(f"k must be 3 or 4, got {k}")
    struct = _structure(graph)
    if k == 3:
        sets: Iterable[tuple[int, ...]] = enumerate_3node(struct)
    else:
        if exhaustive is None:
            exhaustive = seed_signatures is None
        seeds = None if seed_signatures is None else tuple(seed_signatures)
        if not exhaustive and seeds is not None and not seeds:
            return PatternCounts(k=k, counts={})  # nothing to extend from
        sets = enumerate_4node(struct, seeds, exhaustive=exhaustive)
    counts: Counter = Counter()
    for nodes in sets:
        counts[pattern_signature(struct, nodes)] += 1
    return PatternCounts(k=k, counts=dict(counts))


def brute_force_connected_sets(
    graph: DocGraph | StructuralDigraph, k: int
) -> set[tuple[int, ...]]:
    """All connected k-node sets by exhaustive subset enumeration (oracle)."""
    struct = _structure(graph)
    und = struct.und_adj()
    result: set[tuple[int, ...]] = set()
    for nodes in combinations(range(struct.n), k):
        if any(und[n] for n in nodes) and _connected_subset(und, nodes):
            result.add(nodes)
    return result


def _ordered_pairs(k: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(k) for j in range(k) if i != j]


def canonical_form_bits(k: int, edges: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    """Permutation-minimal adjacency bit vector: equal iff isomorphic."""
    edge_set = set(edges)
    pairs = _ordered_pairs(k)
    best: tuple[int, ...] | None = None
    for perm in permutations(range(k)):
        bits = tuple(1 if (perm[a], perm[b]) in edge_set else 0 for a, b in pairs)
        if best is None or bits < best:
            best = bits
    assert best is not None
    return best


@dataclass(frozen=True)
class PatternSpace:
    """Signature classes vs isomorphism classes for all connected k-digraphs."""

    k: int
    signature_classes: Mapping[str, tuple[tuple[int, ...], ...]]
    connected_labeled: int

    @property
    def signature_count(self) -> int:
        return len(self.signature_classes)

    @property
    def isomorphism_class_count(self) -> int:
        return len({c for classes in self.signature_classes.values() for c in classes})

    @property
    def collisions(self) -> dict[str, int]:
        """Signatures shared by more than one isomorphism class."""
        return {
            sig: len(classes)
            for sig, classes in sorted(self.signature_classes.items())
            if len(classes) > 1
        }


def enumerate_all_patterns(k: int) -> PatternSpace:
    """Brute-force the whole pattern space of connected k-node digraphs.

    Enumerates every labeled simple digraph without self-loops on k nodes
    whose underlying graph is weakly connected, groups them by degree
    signature, and cross-checks the groups against exact isomorphism classes
    computed from permutation-canonical forms.
    """
    if k not in (3, 4):
        raise ValueError(f"k must be 3 or 4, got {k}")
    pairs = _ordered_pairs(k)
    sig_to_classes: dict[str, set[tuple[int, ...]]] = {}
    connected = 0
    for mask in range(1, 1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        out_adj: list[set[int]] = [set() for _ in range(k)]
        for a, b in edges:
            out_adj[a].add(b)
        struct = StructuralDigraph(k, out_adj)
        try:
            sig = pattern_signature(struct, range(k))
        except DisconnectedSubgraph:
            continue
        connected += 1
        sig_to_classes.setdefault(sig, set()).add(canonical_form_bits(k, edges))
    return PatternSpace(
        k=k,
        signature_classes={
            sig: tuple(sorted(classes)) for sig, classes in sorted(sig_to_classes.items())
        },
        connected_labeled=connected,
    )


def canonical_labeled_form(
    graph: DocGraph,
    nodes: Iterable[int],
    mode: str = "rel-only",
    node_syntax: Mapping[str, str] | None = None,
) -> str:
    """Canonical string for a labeled subgraph, equal iff label-isomorphic.

    Encodes adjacency plus sorted relationship-label lists per edge (and the
    node syntax sequence in ``rel-entity-syntax`` mode) under every node
    ordering, returning the lexicographically smallest encoding. Exhaustive
    permutation makes equality hold exactly for label-preserving isomorphism.
    """
    if mode not in ("rel-only", "rel-entity-syntax"):
        raise ValueError(f"unknown mode {mode!r}")
    members = sorted(set(nodes))
    k = len(members)
    # Validates connectivity as a side effect.
    pattern_signature(graph, members)
    member_set = set(members)
    local_edges: dict[tuple[int, int], str] = {}
    for (h, t), labels in graph.edges.items():
        if h in member_set and t in member_set:
            local_edges[(members.index(h), members.index(t))] = ",".join(sorted(labels))
    syntaxes: list[str] = []
    if mode == "rel-entity-syntax":
        if node_syntax is None:
            raise ValueError("rel-entity-syntax mode requires node_syntax")
        syntaxes = [node_syntax.get(graph.nodes[i], "?") for i in members]
    pairs = _ordered_pairs(k)
    best: str | None = None
    for perm in permutations(range(k)):
        # perm maps original local position -> new position; invert for lookup.
        placed = [0] * k
        for original, new in enumerate(perm):
            placed[new] = original
        cells = []
        for a, b in pairs:
            label = local_edges.get((placed[a], placed[b]))
            cells.append(label if label is not None else "")
        encoding = "|".join(cells)
        if mode == "rel-entity-syntax":
            encoding += "||" + "|".join(syntaxes[placed[i]] for i in range(k))
        if best is None or encoding < best:
            best = encoding
    assert best is not None
    return best
