"""Statistical significance of subgraph patterns against degree-preserving nulls.

Constrained randomization of sparse document graphs often reproduces pattern
counts exactly, making the classic per-document z-score over a null ensemble
degenerate (zero variance). The corpus-level score therefore standardizes
the edge-normalized difference ``delta = (P - R) / E`` across all documents
and flags a pattern as a motif in a document when its standardized delta
exceeds the threshold (1.64 for one-sided 95%).
"""

from __future__ import annotations

import logging
import statistics
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

logger = logging.getLogger(__name__)

DEFAULT_THRESHOLD = 1.64


class ZeroVariance(ValueError):
    """Spread of the comparison sample is zero."""


class ZeroEdges(ValueError):
    """Document graph has no edges to normalize by."""


class TooFewDocuments(ValueError):
    """Corpus-level standardization needs at least two documents."""


def z_score(p: int, samples: Sequence[int]) -> float:
    """Classic motif z-score of an observed count against a null ensemble."""
    if len(samples) < 2:
        raise ValueError(f"need at least 2 null samples, got {len(samples)}")
    spread = statistics.stdev(samples)
    if spread == 0:
        raise ZeroVariance("null ensemble counts are all equal")
    return (p - statistics.mean(samples)) / spread


def delta(p: int, r: int, e: int) -> float:
    """Edge-normalized count difference ``(P - R) / E``."""
    if e < 1:
        raise ZeroEdges("edge count must be >= 1")
    return (p - r) / e


@dataclass(frozen=True)
class MotifScore:
    """Per-document significance record for one pattern."""

    doc_id: str
    signature: str
    p: int
    r: int
    e: int
    delta: float
    z_prime: float
    significant: bool


@dataclass(frozen=True)
class CorpusStandardization:
    """Corpus mean/std of delta plus the per-document standardized scores."""

    mu: float
    sigma: float
    scores: Mapping[str, tuple[float, bool]]


def corpus_z_prime(
    deltas: Mapping[str, float], threshold: float = DEFAULT_THRESHOLD
) -> CorpusStandardization:
    """Standardize per-document deltas across the corpus.

    Every document's delta is scored as ``(delta - mu) / sigma`` with sample
    (n-1) standard deviation; a document is significant when its score
    strictly exceeds the threshold.
    """
    if len(deltas) < 2:
        raise TooFewDocuments(f"need >= 2 documents, got {len(deltas)}")
    values = list(deltas.values())
    mu = statistics.mean(values)
    sigma = statistics.stdev(values)
    if sigma == 0:
        raise ZeroVariance("delta is constant across documents")
    scores = {
        doc_id: ((d - mu) / sigma, (d - mu) / sigma > threshold)
        for doc_id, d in deltas.items()
    }
    return CorpusStandardization(mu=mu, sigma=sigma, scores=scores)


@dataclass(frozen=True)
class MotifRanking:
    """Patterns ranked by the number of documents where they are significant."""

    entries: tuple[tuple[str, int, int], ...]  # (signature, patent_count, raw_count)

    def as_rows(self) -> list[tuple[str, int, int]]:
        return list(self.entries)

    def top(self, n: int) -> list[tuple[str, int, int]]:
        return list(self.entries[:n])


def rank_motifs(scores: Iterable[MotifScore]) -> MotifRanking:
    """Rank signatures by document count (significant), ties by raw count."""
    patent_counts: dict[str, int] = {}
    raw_counts: dict[str, int] = {}
    for score in scores:
        patent_counts.setdefault(score.signature, 0)
        raw_counts.setdefault(score.signature, 0)
        raw_counts[score.signature] += score.p
        if score.significant:
            patent_counts[score.signature] += 1
    entries = sorted(
        (
            (sig, patent_counts[sig], raw_counts[sig])
            for sig in patent_counts
        ),
        key=lambda row: (-row[1], -row[2], row[0]),
    )
    return MotifRanking(tuple(entries))


def classification_rollup(
    scores: Iterable[MotifScore], doc_class: Mapping[str, str]
) -> dict[str, MotifRanking]:
    """Per-class rankings plus the overall one under key ``"overall"``.

    Documents missing from the class map are warned about and bucketed under
    ``"unclassified"``.
    """
    scores = list(scores)
    by_class: dict[str, list[MotifScore]] = {}
    warned: set[str] = set()
    for score in scores:
        cls = doc_class.get(score.doc_id)
        if cls is None:
            if score.doc_id not in warned:
                logger.warning("document %s has no class; using 'unclassified'", score.doc_id)
                warned.add(score.doc_id)
            cls = "unclassified"
        by_class.setdefault(cls, []).append(score)
    rollup = {cls: rank_motifs(members) for cls, members in sorted(by_class.items())}
    rollup["overall"] = rank_motifs(scores)
    return rollup
