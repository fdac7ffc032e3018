"""Zipf distribution fitting and cumulative-distribution bucketing.

The discrete Zipf PMF over N ranked items is ``pmf(k) = k**-s / H(N, s)``
with ``H(N, s) = sum_{k=1..N} k**-s``. Fitting minimizes the squared error
between observed rank proportions and the PMF over the exponent ``s``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.optimize import minimize_scalar


class RankOutOfRange(ValueError):
    """Rank outside 1..N."""


class DegenerateData(ValueError):
    """Too few ranked items to fit."""


# Cumulative-proportion windows used by all percentile reports.
CDF_BOUNDARIES: tuple[tuple[float, float], ...] = (
    (0.0, 0.05),
    (0.05, 0.1),
    (0.1, 0.2),
    (0.2, 0.3),
    (0.3, 0.4),
    (0.4, 0.5),
    (0.5, 0.8),
    (0.8, 1.0),
)


def harmonic_number(n: int, s: float) -> float:
    """Generalized harmonic number ``sum_{k=1..n} k**-s`` (stable fsum)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return math.fsum(k ** -s for k in range(1, n + 1))


def zipf_pmf(k: int, s: float, n: int) -> float:
    """Probability of rank ``k`` under the Zipf distribution (s, n)."""
    if not 1 <= k <= n:
        raise RankOutOfRange(f"rank {k} outside 1..{n}")
    return k ** -s / harmonic_number(n, s)


def zipf_pmf_vector(s: float, n: int) -> np.ndarray:
    """All rank probabilities at once; sums to 1."""
    ranks = np.arange(1, n + 1, dtype=float)
    weights = ranks ** -s
    return weights / weights.sum()


@dataclass(frozen=True)
class RankedProportions:
    """Terms rank-ordered by count, with proportions summing to 1."""

    items: tuple[tuple[str, int], ...]
    proportions: tuple[float, ...]

    def __post_init__(self) -> None:
        if any(c < 1 for _, c in self.items):
            raise ValueError("counts must be >= 1")
        props = self.proportions
        if any(props[i] < props[i + 1] for i in range(len(props) - 1)):
            raise ValueError("proportions must be non-increasing")
        if props and abs(math.fsum(props) - 1.0) > 1e-9:
            raise ValueError("proportions must sum to 1")

    @classmethod
    def from_counts(cls, counts: Mapping[str, int] | Iterable[tuple[str, int]]) -> "RankedProportions":
        pairs = counts.items() if isinstance(counts, Mapping) else counts
        # Descending count, ties broken lexicographically for determinism.
        ranked = sorted(pairs, key=lambda kv: (-kv[1], kv[0]))
        total = sum(c for _, c in ranked)
        if total <= 0:
            raise DegenerateData("no counted items")
        return cls(tuple(ranked), tuple(c / total for _, c in ranked))

    def __len__(self) -> int:
        return len(self.items)


@dataclass(frozen=True)
class ZipfFit:
    """Fitted exponent with the RMS residual of the fit."""

    s: float
    error: float
    n: int


def fit_zipf(data: RankedProportions, bounds: tuple[float, float] = (0.01, 10.0)) -> ZipfFit:
    """Least-squares fit of the Zipf exponent to observed rank proportions.

    Minimizes ``sum_k (p_k - pmf(k; s, N))**2`` by bounded 1-D minimization
    over ``s`` and reports the root-mean-square residual at the optimum.
    """
    n = len(data)
    if n < 2:
        raise DegenerateData(f"need at least 2 ranked items, got {n}")
    observed = np.asarray(data.proportions)

    def loss(s: float) -> float:
        return float(np.sum((observed - zipf_pmf_vector(s, n)) ** 2))

    result = minimize_scalar(
        loss, bounds=bounds, method="bounded", options={"xatol": 1e-6}
    )
    s_hat = float(result.x)
    rmse = math.sqrt(loss(s_hat) / n)
    return ZipfFit(s=s_hat, error=rmse, n=n)


@dataclass(frozen=True)
class CdfBucket:
    lo: float
    hi: float
    unique_count: int
    top_terms: tuple[str, ...]


@dataclass(frozen=True)
class CdfBuckets:
    """Terms partitioned into fixed cumulative-proportion windows."""

    boundaries: tuple[tuple[float, float], ...]
    buckets: tuple[CdfBucket, ...]

    def total_terms(self) -> int:
        return sum(b.unique_count for b in self.buckets)


def bucket_cdf(data: RankedProportions, top_k: int = 30) -> CdfBuckets:
    """Assign each term to the first window that covers its cumulative share.

    The cumulative proportion is taken after including the term itself, so a
    single term (cumulative 1.0) lands in the last window. Each bucket
    reports its unique-term count and the top ``top_k`` terms by count, ties
    broken lexicographically.
    """
    members: list[list[tuple[str, int]]] = [[] for _ in CDF_BOUNDARIES]
    cum = 0.0
    for (term, count), prop in zip(data.items, data.proportions):
        cum = min(cum + prop, 1.0)
        for idx, (_, hi) in enumerate(CDF_BOUNDARIES):
            if hi >= cum - 1e-12:
                members[idx].append((term, count))
                break
    buckets = []
    for (lo, hi), terms in zip(CDF_BOUNDARIES, members):
        top = sorted(terms, key=lambda kv: (-kv[1], kv[0]))[:top_k]
        buckets.append(CdfBucket(lo, hi, len(terms), tuple(t for t, _ in top)))
    return CdfBuckets(CDF_BOUNDARIES, tuple(buckets))
