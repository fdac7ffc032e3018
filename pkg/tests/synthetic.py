"""Synthetic corpora used by significance and acceptance tests."""

import random

from designkg.graph import DocGraph, StructuralDigraph

FAN_IN = "002-011-011"


def fan_in_farm(doc_id: str, m: int = 16) -> DocGraph:
    """A graph with m pure fan-ins that randomization reliably de-purifies.

    Each sink y_i is fed by sources s_i and s_{i+5}; the sources carry two
    ring layers (offsets 1 and 3). No original feeder pair is adjacent, so
    every fan-in is induced exactly; degree-preserving trades tangle the
    dense source wiring into feeder pairs, which can only lower the pure
    fan-in count. Hence P - R >= 0 structurally, and > 0 after real mixing.
    """
    g = DocGraph(doc_id=doc_id)
    for i in range(m):
        g.add_edge(f"s{i}", f"s{(i + 1) % m}", "r")
        g.add_edge(f"s{i}", f"s{(i + 3) % m}", "r")
        g.add_edge(f"s{i}", f"y{i}", "r")
        g.add_edge(f"s{(i + 5) % m}", f"y{i}", "r")
    return g


def rigid_background(doc_id: str, gadgets: int) -> DocGraph:
    """Disjoint 2-source fan-in gadgets.

    Sources have out-degree 1 / in-degree 0 and sinks in-degree 2 /
    out-degree 0, so every degree-preserving graph on this sequence is again
    a disjoint union of pure fan-ins: all pattern counts, and therefore all
    deltas, are exactly invariant under randomization.
    """
    g = DocGraph(doc_id=doc_id)
    for i in range(gadgets):
        g.add_edge(f"u{i}", f"sink{i}", "r")
        g.add_edge(f"v{i}", f"sink{i}", "r")
    return g


def planted_corpus(n_background: int = 45, n_planted: int = 5) -> tuple[dict, list[str]]:
    """Background docs with exactly-zero deltas plus fan-in-excess docs."""
    graphs: dict[str, DocGraph] = {}
    for d in range(n_background):
        graphs[f"BG{d:02d}"] = rigid_background(f"BG{d:02d}", 4 + d % 5)
    planted_ids = [f"PL{d:02d}" for d in range(n_planted)]
    for doc_id in planted_ids:
        graphs[doc_id] = fan_in_farm(doc_id)
    return graphs, planted_ids


def random_digraph(n: int, m: int, seed: int) -> StructuralDigraph:
    """Simple random digraph with exactly m edges and no self-loops."""
    rng = random.Random(seed)
    out: list[set[int]] = [set() for _ in range(n)]
    edges: set[tuple[int, int]] = set()
    attempts = 0
    while len(edges) < m and attempts < 100 * m:
        u, v = rng.sample(range(n), 2)
        attempts += 1
        if (u, v) not in edges:
            edges.add((u, v))
            out[u].add(v)
    return StructuralDigraph(n, out)


def synthetic_fact_corpus(path, n_docs: int = 100, facts_per_doc: int = 50, seed: int = 0):
    """Write a TSV fact corpus exercising every pipeline stage."""
    rng = random.Random(seed)
    nouns = [
        "the housing", "a sensor", "the controller", "a signal", "the valve",
        "a membrane", "the circuit", "a nozzle", "the piston", "a filter",
        "the chamber", "an electrode", "the shaft", "a bearing", "the coil",
        "a substrate", "the layer", "a terminal", "the pump", "an actuator",
        "the gear", "a spring", "the duct", "a rotor", "the panel",
    ]
    rels = [
        "of", "in", "to", "include", "includes", "comprises", "such as",
        "with", "for", "connected to", "mounted on", "is part of",
        "wherein", "has", "from",
    ]
    with open(path, "w", encoding="utf-8") as handle:
        for d in range(n_docs):
            doc_id = f"DOC{d:04d}"
            for f in range(facts_per_doc):
                head, tail = rng.sample(nouns, 2)
                rel = rng.choice(rels)
                sentence = f // 5
                handle.write(f"{doc_id}\t{sentence}\t{head}\t{rel}\t{tail}\n")
    return path
