"""Corpus-level orchestration: graphs, mining, randomization, and scoring.

Per-document work is embarrassingly parallel; results are always merged in
document order, so outputs are identical regardless of worker count.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, TypeVar

from .facts import Corpus
from .graph import DocGraph, build_graph
from .mining import PatternCounts, count_patterns
from .randomize import RandomizeResult, randomize, randomize_ensemble
from .significance import (
    DEFAULT_THRESHOLD,
    CorpusStandardization,
    MotifScore,
    ZeroEdges,
    corpus_z_prime,
    delta,
)

T = TypeVar("T")
R = TypeVar("R")


def derive_seed(master_seed: int, doc_id: str) -> int:
    """Stable per-document seed, independent of process layout and hashing."""
    digest = hashlib.sha256(f"{master_seed}:{doc_id}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def parallel_map(
    fn: Callable[[T], R], items: Sequence[T], jobs: int = 1
) -> list[R]:
    """Order-preserving map, optionally across processes."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    chunksize = max(1, len(items) // (jobs * 4))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=chunksize))


def build_doc_graphs(corpus: Corpus, min_fact_freq: int = 1) -> dict[str, DocGraph]:
    """One graph per document, in first-seen document order.

    ``min_fact_freq`` keeps only facts whose identical triple occurs at
    least that many times corpus-wide (recurring knowledge).
    """
    graphs: dict[str, DocGraph] = {}
    for doc_id, facts in corpus.iter_documents():
        if min_fact_freq > 1:
            facts = [
                f for f in facts if corpus.fact_freq[f.triple_key] >= min_fact_freq
            ]
        graphs[doc_id] = build_graph(facts, doc_id=doc_id)
    return graphs


def _mine_one(args: tuple[str, DocGraph, int, tuple[str, ...] | None]) -> tuple[str, PatternCounts]:
    doc_id, graph, k, seeds = args
    return doc_id, count_patterns(graph, k, seed_signatures=seeds)


def mine_corpus(
    graphs: dict[str, DocGraph],
    k: int = 3,
    seed_signatures: dict[str, tuple[str, ...]] | tuple[str, ...] | None = None,
    jobs: int = 1,
) -> dict[str, PatternCounts]:
    """Pattern counts per document. Seeds may be global or per-document."""
    tasks = []
    for doc_id, graph in graphs.items():
        if isinstance(seed_signatures, dict):
            seeds = seed_signatures.get(doc_id, ())
        else:
            seeds = seed_signatures
        tasks.append((doc_id, graph, k, tuple(seeds) if seeds is not None else None))
    return dict(parallel_map(_mine_one, tasks, jobs))


def _randomize_one(
    args: tuple[str, DocGraph, float, int, int]
) -> tuple[str, RandomizeResult | None]:
    doc_id, graph, target, max_trades, seed = args
    if graph.edge_count == 0:
        return doc_id, None
    return doc_id, randomize(graph, target=target, max_trades=max_trades, seed=seed)


def randomize_corpus(
    graphs: dict[str, DocGraph],
    seed: int,
    target: float = 0.5,
    max_trades: int = 30000,
    jobs: int = 1,
) -> dict[str, RandomizeResult | None]:
    """One randomized null graph per document (edgeless documents map to None)."""
    tasks = [
        (doc_id, graph, target, max_trades, derive_seed(seed, doc_id))
        for doc_id, graph in graphs.items()
    ]
    return dict(parallel_map(_randomize_one, tasks, jobs))


@dataclass(frozen=True)
class ScoringResult:
    """Motif scores for every (document, signature) pair plus corpus stats."""

    k: int
    scores: tuple[MotifScore, ...]
    standardization: dict[str, CorpusStandardization]
    skipped_docs: tuple[str, ...]  # documents without edges


def score_corpus(
    graphs: dict[str, DocGraph],
    k: int = 3,
    seed: int = 0,
    target: float = 0.5,
    max_trades: int = 30000,
    threshold: float = DEFAULT_THRESHOLD,
    seed_signatures: dict[str, tuple[str, ...]] | tuple[str, ...] | None = None,
    include_absent: bool = True,
    jobs: int = 1,
    randomized: dict[str, RandomizeResult | None] | None = None,
) -> ScoringResult:
    """Compare per-document pattern counts against degree-preserving nulls.

    ``include_absent=True`` lets documents where a signature never occurs
    (neither originally nor in the null) contribute delta = 0 to the corpus
    distribution. Signatures whose deltas carry no spread at all cannot be
    standardized; they are reported with z' = 0 and nothing significant.
    """
    if randomized is None:
        randomized = randomize_corpus(graphs, seed, target, max_trades, jobs)
    doc_ids = [d for d, result in randomized.items() if result is not None]
    skipped = tuple(d for d, result in randomized.items() if result is None)

    original_counts = mine_corpus(
        {d: graphs[d] for d in doc_ids}, k, seed_signatures, jobs
    )
    null_graphs = {d: randomized[d].graph for d in doc_ids}  # type: ignore[union-attr]
    null_tasks = []
    for doc_id in doc_ids:
        if isinstance(seed_signatures, dict):
            seeds = seed_signatures.get(doc_id, ())
        else:
            seeds = seed_signatures
        null_tasks.append(
            (doc_id, null_graphs[doc_id], k, tuple(seeds) if seeds is not None else None)
        )
    null_counts = dict(parallel_map(_mine_one, null_tasks, jobs))

    signatures = sorted(
        {
            sig
            for counts in list(original_counts.values()) + list(null_counts.values())
            for sig in counts.counts
        }
    )
    scores: list[MotifScore] = []
    standardization: dict[str, CorpusStandardization] = {}
    for signature in signatures:
        deltas: dict[str, float] = {}
        for doc_id in doc_ids:
            p = original_counts[doc_id].get(signature)
            r = null_counts[doc_id].get(signature)
            if not include_absent and p == 0 and r == 0:
                continue
            deltas[doc_id] = delta(p, r, graphs[doc_id].edge_count)
        if not deltas:
            continue
        if len(deltas) >= 2 and len(set(deltas.values())) > 1:
            result = corpus_z_prime(deltas, threshold)
            standardization[signature] = result
            doc_scores = result.scores
        else:
            # No spread (or a single document): nothing stands out, so the
            # signature is kept for ranking but nothing is significant.
            doc_scores = {doc_id: (0.0, False) for doc_id in deltas}
        for doc_id, (z, significant) in doc_scores.items():
            scores.append(
                MotifScore(
                    doc_id=doc_id,
                    signature=signature,
                    p=original_counts[doc_id].get(signature),
                    r=null_counts[doc_id].get(signature),
                    e=graphs[doc_id].edge_count,
                    delta=deltas[doc_id],
                    z_prime=z,
                    significant=significant,
                )
            )
    scores.sort(key=lambda s: (s.signature, s.doc_id))
    return ScoringResult(
        k=k,
        scores=tuple(scores),
        standardization=standardization,
        skipped_docs=skipped,
    )


def ensemble_counts(
    graph: DocGraph,
    signature: str,
    k: int = 3,
    count: int = 30,
    seed: int = 0,
    target: float = 0.5,
    max_trades: int = 30000,
) -> list[int]:
    """Null-ensemble counts of one signature, for classic z-score checks."""
    results = randomize_ensemble(
        graph, count=count, target=target, max_trades=max_trades, seed=seed
    )
    return [count_patterns(r.graph, k).get(signature) for r in results]
