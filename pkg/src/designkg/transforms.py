"""Graph rewriting precepts: collapse attributes, concretize, explicate hierarchy.

Three families of audited edits:

* collapse-attribute: an ``A -of-> B`` fact folds into a compound entity
  named after both sides ("array" of "memory cells" -> "memory cell array"),
  re-attaching all other incident edges.
* relabel-relationship: abstract relationships ("in", "to", ...) are either
  rewritten from an explicit replacement table or emitted as suggestions for
  human review; concretization needs interpretation, so nothing is guessed.
* hierarchy-reduce: edges recognized as hierarchical are cleaned by
  transitive reduction (the redundant ``A -> C`` of ``A -> B -> C`` is
  removed), skipping cyclic strongly-connected components.

Every edit records the complete before/after state of each touched node and
edge, so applying the edit list to the original graph reproduces the
transformed graph exactly.
"""

from __future__ import annotations

import json
import logging
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .facts import TokenSpan, normalize_key
from .graph import DocGraph
from .lexicons import Lexicons, default_lexicons
from .syntax import HierarchyLexicon

logger = logging.getLogger(__name__)

ATTRIBUTE_LABEL = "of"
DEFAULT_ABSTRACT = frozenset({"in", "to", "with", "on", "for", "at", "from"})
# Only these determiners are stripped when composing compound entity names.
CORE_DETERMINERS = frozenset({"the", "a", "an", "said", "each"})


class MissingEdge(KeyError):
    """Requested edge does not exist."""


class WrongLabel(ValueError):
    """Edge does not carry the label required by the transform."""


EdgeState = tuple[str, str, tuple[str, ...]]  # (head, tail, sorted labels)


@dataclass(frozen=True)
class TransformEdit:
    """One audited graph edit, expressed over node names.

    ``removed_edges`` holds the full prior label set of every touched pair;
    ``added_edges`` holds the full resulting label set. Pairs absent from
    both are untouched by the edit.
    """

    kind: str  # collapse-attribute | relabel-relationship | hierarchy-reduce
    removed_nodes: tuple[str, ...] = ()
    added_nodes: tuple[str, ...] = ()
    removed_edges: tuple[EdgeState, ...] = ()
    added_edges: tuple[EdgeState, ...] = ()
    dropped_self_loops: tuple[EdgeState, ...] = ()
    provenance: tuple[str, ...] = ()

    def to_json(self) -> str:
        return json.dumps(
            {
                "kind": self.kind,
                "removed_nodes": list(self.removed_nodes),
                "added_nodes": list(self.added_nodes),
                "removed_edges": [list(e[:2]) + [list(e[2])] for e in self.removed_edges],
                "added_edges": [list(e[:2]) + [list(e[2])] for e in self.added_edges],
                "dropped_self_loops": [
                    list(e[:2]) + [list(e[2])] for e in self.dropped_self_loops
                ],
                "provenance": list(self.provenance),
            },
            ensure_ascii=False,
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, line: str) -> "TransformEdit":
        obj = json.loads(line)
        unpack = lambda rows: tuple((r[0], r[1], tuple(r[2])) for r in rows)
        return cls(
            kind=obj["kind"],
            removed_nodes=tuple(obj["removed_nodes"]),
            added_nodes=tuple(obj["added_nodes"]),
            removed_edges=unpack(obj["removed_edges"]),
            added_edges=unpack(obj["added_edges"]),
            dropped_self_loops=unpack(obj["dropped_self_loops"]),
            provenance=tuple(obj["provenance"]),
        )


def apply_edit(graph: DocGraph, edit: TransformEdit) -> DocGraph:
    """Apply one edit, returning a new graph; deterministic node ordering.

    Surviving nodes keep their relative order; added nodes are appended in
    the order recorded by the edit.
    """
    removed = set(edit.removed_nodes)
    nodes = [n for n in graph.nodes if n not in removed]
    for name in edit.added_nodes:
        if name not in nodes:
            nodes.append(name)
    name_edges: dict[tuple[str, str], set[str]] = {
        (graph.nodes[h], graph.nodes[t]): set(labels)
        for (h, t), labels in graph.edges.items()
    }
    for head, tail, _ in edit.removed_edges:
        name_edges.pop((head, tail), None)
    for head, tail, labels in edit.added_edges:
        name_edges[(head, tail)] = set(labels)
    result = DocGraph(doc_id=graph.doc_id, nodes=nodes)
    result.dropped_self_loops = graph.dropped_self_loops + len(edit.dropped_self_loops)
    index = {name: i for i, name in enumerate(nodes)}
    for (head, tail), labels in name_edges.items():
        if head in index and tail in index and labels:
            result.edges[(index[head], index[tail])] = set(labels)
    return result


def apply_edits(graph: DocGraph, edits: Iterable[TransformEdit]) -> DocGraph:
    """Replay a recorded edit list against a graph."""
    for edit in edits:
        graph = apply_edit(graph, edit)
    return graph


def core_name(entity: str, lexicons: Lexicons | None = None, singularize: bool = False) -> str:
    """Strip leading determiners; optionally singularize the final token.

    Singularization naively strips a trailing "s" unless the word ends in
    "ss" or appears in the plural-exception lexicon.
    """
    lex = lexicons or default_lexicons()
    tokens = normalize_key(entity).split()
    # A bare determiner is kept as-is; only leading ones before content go.
    while len(tokens) > 1 and tokens[0] in CORE_DETERMINERS:
        tokens = tokens[1:]
    if singularize and tokens:
        last = tokens[-1]
        if (
            last.endswith("s")
            and not last.endswith("ss")
            and len(last) >= 3
            and last not in lex.plural_exceptions
        ):
            tokens[-1] = last[:-1]
    return " ".join(tokens)


def _name_edges(graph: DocGraph) -> dict[tuple[str, str], set[str]]:
    return {
        (graph.nodes[h], graph.nodes[t]): set(labels)
        for (h, t), labels in graph.edges.items()
    }


def collapse_attribute(
    graph: DocGraph,
    head: str,
    tail: str,
    lexicons: Lexicons | None = None,
) -> tuple[DocGraph, TransformEdit]:
    """Fold an ``head -of-> tail`` edge into a compound entity.

    The merged node is named ``core(tail) + " " + core(head)`` (tail first,
    with its final token singularized). All other edges incident to either
    endpoint re-attach to the merged node; re-attachments that would form
    self-loops are dropped and logged, and coincident edges merge their
    label sets.
    """
    h_key = normalize_key(head)
    t_key = normalize_key(tail)
    try:
        h_id, t_id = graph.node_id(h_key), graph.node_id(t_key)
    except KeyError as exc:
        raise MissingEdge(f"no edge ({head!r}, {tail!r})") from exc
    labels = graph.edges.get((h_id, t_id))
    if labels is None:
        raise MissingEdge(f"no edge ({head!r}, {tail!r})")
    if ATTRIBUTE_LABEL not in labels:
        raise WrongLabel(
            f"edge ({head!r}, {tail!r}) carries {sorted(labels)}, not '{ATTRIBUTE_LABEL}'"
        )
    merged = (
        core_name(t_key, lexicons, singularize=True)
        + " "
        + core_name(h_key, lexicons)
    ).strip()
    if not merged:
        merged = f"{t_key} {h_key}"

    endpoints = {h_key, t_key}
    name_edges = _name_edges(graph)
    removed_edges: list[EdgeState] = []
    dropped: list[EdgeState] = []
    rewired: dict[tuple[str, str], set[str]] = {}
    for (u, v), edge_labels in sorted(name_edges.items()):
        if u not in endpoints and v not in endpoints:
            continue
        removed_edges.append((u, v, tuple(sorted(edge_labels))))
        keep = set(edge_labels)
        if (u, v) == (h_key, t_key):
            keep.discard(ATTRIBUTE_LABEL)  # the collapsed relation itself
            if not keep:
                continue
        nu = merged if u in endpoints else u
        nv = merged if v in endpoints else v
        if nu == nv:
            dropped.append((nu, nv, tuple(sorted(keep))))
            continue
        rewired.setdefault((nu, nv), set()).update(keep)

    # Coincident merge with edges already present at the merged node's pairs
    # (only possible when the merged name collides with an existing node).
    added_edges: list[EdgeState] = []
    for (nu, nv), new_labels in sorted(rewired.items()):
        existing = name_edges.get((nu, nv))
        if existing is not None and (nu, nv) not in [e[:2] for e in removed_edges]:
            removed_edges.append((nu, nv, tuple(sorted(existing))))
            new_labels = new_labels | existing
        added_edges.append((nu, nv, tuple(sorted(new_labels))))

    edit = TransformEdit(
        kind="collapse-attribute",
        removed_nodes=tuple(sorted(endpoints - {merged})),
        added_nodes=(merged,),
        removed_edges=tuple(removed_edges),
        added_edges=tuple(added_edges),
        dropped_self_loops=tuple(dropped),
        provenance=(f"{h_key} :: {ATTRIBUTE_LABEL} :: {t_key}",),
    )
    return apply_edit(graph, edit), edit


@dataclass(frozen=True)
class RelabelTable:
    """Replacement table for abstract relationships.

    Keys are ``(relationship, head_syntax, tail_syntax)`` with empty strings
    as wildcards; lookups try the most specific key first.
    """

    rules: Mapping[tuple[str, str, str], str]

    @classmethod
    def load_tsv(cls, path: str | Path) -> "RelabelTable":
        rules: dict[tuple[str, str, str], str] = {}
        for line_no, raw in enumerate(
            Path(path).read_text(encoding="utf-8").splitlines(), start=1
        ):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                raise ValueError(
                    f"{path}:{line_no}: expected 4 tab-separated fields, got {len(parts)}"
                )
            rel, head_syntax, tail_syntax, replacement = (p.strip() for p in parts)
            if not rel or not replacement:
                raise ValueError(f"{path}:{line_no}: empty relationship or replacement")
            key = (normalize_key(rel), head_syntax, tail_syntax)
            if key in rules:
                raise ValueError(f"{path}:{line_no}: duplicate key {key}")
            rules[key] = normalize_key(replacement)
        return cls(rules)

    def lookup(
        self, rel: str, head_syntax: str = "", tail_syntax: str = ""
    ) -> str | None:
        for key in (
            (rel, head_syntax, tail_syntax),
            (rel, head_syntax, ""),
            (rel, "", tail_syntax),
            (rel, "", ""),
        ):
            if key in self.rules:
                return self.rules[key]
        return None


@dataclass(frozen=True)
class RelabelSuggestion:
    """An abstract edge with no table entry, left for human review."""

    head: str
    tail: str
    label: str


def suggest_relabels(
    graph: DocGraph,
    table: RelabelTable | None = None,
    abstract: frozenset[str] = DEFAULT_ABSTRACT,
    node_syntax: Mapping[str, str] | None = None,
) -> tuple[DocGraph, list[TransformEdit], list[RelabelSuggestion]]:
    """Flag abstract relationship labels; apply table rewrites, suggest the rest."""
    if not abstract:
        raise ValueError("abstract relationship set must be non-empty")
    syntax_of = node_syntax or {}
    edits: list[TransformEdit] = []
    suggestions: list[RelabelSuggestion] = []
    work = graph
    for (h, t) in sorted(graph.edges):
        head, tail = graph.nodes[h], graph.nodes[t]
        for label in sorted(graph.edges[(h, t)]):
            if label not in abstract:
                continue
            replacement = (
                table.lookup(label, syntax_of.get(head, ""), syntax_of.get(tail, ""))
                if table is not None
                else None
            )
            if replacement is None:
                suggestions.append(RelabelSuggestion(head, tail, label))
                continue
            current = set(_name_edges(work)[(head, tail)])
            new_labels = (current - {label}) | {replacement}
            edit = TransformEdit(
                kind="relabel-relationship",
                removed_edges=((head, tail, tuple(sorted(current))),),
                added_edges=((head, tail, tuple(sorted(new_labels))),),
                provenance=(f"{head} :: {label} :: {tail} -> {replacement}",),
            )
            work = apply_edit(work, edit)
            edits.append(edit)
    return work, edits, suggestions


def _hierarchy_adjacency(
    graph: DocGraph,
    lex: HierarchyLexicon,
    lexicons: Lexicons | None,
    cache: dict[str, bool],
) -> dict[tuple[int, int], set[str]]:
    """Edges (by id pair) with the subset of labels matching the lexicon."""
    marked: dict[tuple[int, int], set[str]] = {}
    for pair, labels in graph.edges.items():
        hits = set()
        for label in labels:
            if label not in cache:
                cache[label] = (
                    lex.match(TokenSpan.from_text(label), lexicons) is not None
                )
            if cache[label]:
                hits.add(label)
        if hits:
            marked[pair] = hits
    return marked


def _strongly_connected(nodes: Sequence[int], adj: Mapping[int, set[int]]) -> list[set[int]]:
    """Kosaraju SCCs over the given node subset."""
    order: list[int] = []
    seen: set[int] = set()
    for start in nodes:
        if start in seen:
            continue
        seen.add(start)
        stack = [(start, iter(sorted(adj.get(start, ()))))]
        while stack:
            u, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                order.append(u)
                stack.pop()
            elif nxt not in seen:
                seen.add(nxt)
                stack.append((nxt, iter(sorted(adj.get(nxt, ())))))
    reverse: dict[int, set[int]] = {}
    for u, targets in adj.items():
        for v in targets:
            reverse.setdefault(v, set()).add(u)
    assigned: set[int] = set()
    components: list[set[int]] = []
    for start in reversed(order):
        if start in assigned:
            continue
        component = {start}
        queue = deque([start])
        assigned.add(start)
        while queue:
            u = queue.popleft()
            for v in reverse.get(u, ()):
                if v not in assigned:
                    assigned.add(v)
                    component.add(v)
                    queue.append(v)
        components.append(component)
    return components


def _reachable(adj: Mapping[int, set[int]], src: int, dst: int, skip_edge: tuple[int, int]) -> bool:
    queue = deque([src])
    seen = {src}
    while queue:
        u = queue.popleft()
        for v in adj.get(u, ()):
            if (u, v) == skip_edge:
                continue
            if v == dst:
                return True
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return False


def explicate_hierarchy(
    graph: DocGraph,
    lex: HierarchyLexicon | None = None,
    lexicons: Lexicons | None = None,
) -> tuple[DocGraph, list[TransformEdit]]:
    """Make hierarchical structure explicit and minimal.

    First, attribute edges pointing out of hierarchy parents are collapsed
    (an "examples -of-> material" head with child edges becomes "material
    examples"), then the hierarchical edge subset is transitively reduced.
    Cyclic strongly-connected components are skipped and logged rather than
    reduced. Running the operation twice yields the same graph as once.
    """
    lex = lex or HierarchyLexicon.load()
    cache: dict[str, bool] = {}
    edits: list[TransformEdit] = []
    work = graph

    # Collapse attribute edges whose head is a hierarchy parent, repeating
    # until none remain (each collapse shrinks the node count).
    while True:
        marked = _hierarchy_adjacency(work, lex, lexicons, cache)
        parents = {h for (h, _t) in marked}
        candidates = sorted(
            (work.nodes[h], work.nodes[t])
            for (h, t), labels in work.edges.items()
            if ATTRIBUTE_LABEL in labels
            and h in parents
            and any(ph == h and pt != t for (ph, pt) in marked)
        )
        if not candidates:
            break
        head, tail = candidates[0]
        work, edit = collapse_attribute(work, head, tail, lexicons)
        edits.append(edit)

    # Transitive reduction of the hierarchical subset.
    marked = _hierarchy_adjacency(work, lex, lexicons, cache)
    adj: dict[int, set[int]] = {}
    for (h, t) in marked:
        adj.setdefault(h, set()).add(t)
    nodes = sorted({n for pair in marked for n in pair})
    cyclic_nodes: set[int] = set()
    for component in _strongly_connected(nodes, adj):
        if len(component) > 1:
            cyclic_nodes |= component
            logger.warning(
                "document %s: skipping cyclic hierarchy component %s",
                work.doc_id,
                sorted(work.nodes[n] for n in component),
            )
    for (h, t) in sorted(marked):
        if h in cyclic_nodes or t in cyclic_nodes:
            continue
        if not _reachable(adj, h, t, skip_edge=(h, t)):
            continue
        head, tail = work.nodes[h], work.nodes[t]
        current = set(work.edges[(h, t)])
        remaining = current - marked[(h, t)]
        edit = TransformEdit(
            kind="hierarchy-reduce",
            removed_edges=((head, tail, tuple(sorted(current))),),
            added_edges=((head, tail, tuple(sorted(remaining))),) if remaining else (),
            provenance=tuple(
                f"{head} :: {label} :: {tail}" for label in sorted(marked[(h, t)])
            ),
        )
        work = apply_edit(work, edit)
        edits.append(edit)
        adj[h].discard(t)
    return work, edits
