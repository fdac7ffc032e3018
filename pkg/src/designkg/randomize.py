"""Degree-preserving graph randomization via curveball trades.

One trade picks a random node pair and re-partitions the out-neighbors the
two nodes do not share, which preserves every in-degree and out-degree. The
pair itself is excluded from the tradable set so no self-loop can ever be
created; this is conservative (an edge between the traded pair never moves)
but guarantees the constraint.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import DocGraph, StructuralDigraph


class NodeSetMismatch(ValueError):
    """Graphs compared over different node sets."""


def _attempt_trade(
    out_adj: list[set[int]], rng: random.Random
) -> tuple[int, int, set[int], set[int], set[int], set[int]] | None:
    """Pick a pair and re-partition; returns the applied delta or None.

    The returned tuple is ``(i, j, old_i, new_i, old_j, new_j)`` where the
    old/new sets cover only the tradable (non-shared) out-neighbors.
    """
    n = len(out_adj)
    if n < 2:
        return None
    i, j = rng.sample(range(n), 2)
    exclude = {i, j}
    only_i = out_adj[i] - out_adj[j] - exclude
    only_j = out_adj[j] - out_adj[i] - exclude
    if not only_i and not only_j:
        return None
    pool = sorted(only_i | only_j)
    rng.shuffle(pool)
    new_i = set(pool[: len(only_i)])
    if new_i == only_i:
        return None
    new_j = set(pool[len(only_i):])
    out_adj[i] = (out_adj[i] - only_i) | new_i
    out_adj[j] = (out_adj[j] - only_j) | new_j
    return i, j, only_i, new_i, only_j, new_j


def curveball_trade(out_adj: list[set[int]], rng: random.Random) -> bool:
    """Apply one curveball trade in place; True when a neighbor moved."""
    return _attempt_trade(out_adj, rng) is not None


def perturbation(
    original: DocGraph | StructuralDigraph, randomized: StructuralDigraph
) -> float:
    """Fraction of randomized edges absent from the original graph."""
    base = original.structure() if isinstance(original, DocGraph) else original
    if base.n != randomized.n:
        raise NodeSetMismatch(f"{base.n} nodes vs {randomized.n} nodes")
    base_edges = base.edge_set()
    if not base_edges:
        raise ValueError("original graph has no edges")
    moved = sum(1 for edge in randomized.edge_set() if edge not in base_edges)
    return moved / len(base_edges)


@dataclass
class RandomizeResult:
    """Outcome of randomizing one graph (labels dropped)."""

    graph: StructuralDigraph
    achieved_perturbation: float
    trades_executed: int
    seed: int
    target: float

    @property
    def reached_target(self) -> bool:
        return self.achieved_perturbation >= self.target


def randomize(
    graph: DocGraph | StructuralDigraph,
    target: float = 0.5,
    max_trades: int = 30000,
    seed: int = 0,
) -> RandomizeResult:
    """Trade until the perturbation target is met or the trade budget runs out.

    Fully deterministic given the seed. Some rigid structures can never
    reach the target; the result records the achieved perturbation so such
    cases are visible to the caller.
    """
    base = graph.structure() if isinstance(graph, DocGraph) else graph.copy()
    if base.edge_count == 0:
        raise ValueError("cannot randomize a graph with no edges")
    rng = random.Random(seed)
    working = base.copy()
    original_edges = base.edge_set()
    total = len(original_edges)

    # Perturbation is maintained incrementally: count of working edges that
    # do not exist in the original.
    moved = 0
    trades = 0
    while moved / total < target and trades < max_trades:
        delta = _attempt_trade(working.out_adj, rng)
        trades += 1
        if delta is None:
            continue
        for node, old, new in ((delta[0], delta[2], delta[3]), (delta[1], delta[4], delta[5])):
            for gone in old - new:
                if (node, gone) not in original_edges:
                    moved -= 1
            for added in new - old:
                if (node, added) not in original_edges:
                    moved += 1
    return RandomizeResult(
        graph=working,
        achieved_perturbation=moved / total,
        trades_executed=trades,
        seed=seed,
        target=target,
    )


def randomize_ensemble(
    graph: DocGraph | StructuralDigraph,
    count: int = 30,
    target: float = 0.5,
    max_trades: int = 30000,
    seed: int = 0,
) -> list[RandomizeResult]:
    """Independent randomizations with seeds derived from ``seed``."""
    return [
        randomize(graph, target=target, max_trades=max_trades, seed=seed + offset)
        for offset in range(count)
    ]
