"""Rank correlation between the term frequencies of two corpora.

``kendall_tau`` is the tie-corrected tau-b,

    tau = (c - d) / sqrt((n0 - T) (n0 - U)),   n0 = n (n - 1) / 2,

with ``T`` and ``U`` the tied pairs in each variable, computed in
O(n log n) by sorting and counting inversions.
"""

from __future__ import annotations

import math
from collections import Counter
from typing import Mapping, Sequence

import numpy as np
from scipy.stats import rankdata

from ..vocabulary import rank_terms, top_tenth

__all__ = [
    "MAX_TERMS",
    "MIN_POINTS",
    "correlation_vectors",
    "kendall_tau",
    "rank_correlation",
    "spearman_rho",
    "tie_pairs",
]

MAX_TERMS = 1000
MIN_POINTS = 5


def tie_pairs(values: Sequence) -> int:
    """Number of pairs tied on ``values``: sum of t (t - 1) / 2 over tie groups."""
    return sum(t * (t - 1) // 2 for t in Counter(values).values())


def _count_inversions(seq: list) -> int:
    """Pairs i < j with seq[i] > seq[j] (bottom-up merge sort)."""
    n = len(seq)
    src = list(seq)
    dst = [None] * n
    inversions = 0
    width = 1
    while width < n:
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i, j, k = lo, mid, lo
            while i < mid and j < hi:
                if src[j] < src[i]:
                    dst[k] = src[j]
                    inversions += mid - i
                    j += 1
                else:
                    dst[k] = src[i]
                    i += 1
                k += 1
            dst[k:hi] = src[i:mid] + src[j:hi]
        src, dst = dst, src
        width *= 2
    return inversions


def kendall_tau(x: Sequence[float], y: Sequence[float]) -> float | None:
    """Kendall's tau-b; None when either variable is constant or n < 2."""
    x = list(x)
    y = list(y)
    if len(x) != len(y):
        raise ValueError("x and y must have the same length")
    n = len(x)
    if n < 2:
        return None
    n0 = n * (n - 1) // 2
    T = tie_pairs(x)
    U = tie_pairs(y)
    V = tie_pairs(zip(x, y))
    if T == n0 or U == n0:
        return None
    # sorting by (x, y) leaves only pairs discordant in y as inversions
    order = sorted(range(n), key=lambda i: (x[i], y[i]))
    swaps = _count_inversions([y[i] for i in order])
    concordant_minus_discordant = n0 - T - U + V - 2 * swaps
    return concordant_minus_discordant / math.sqrt((n0 - T) * (n0 - U))


def spearman_rho(x: Sequence[float], y: Sequence[float]) -> float | None:
    """Spearman's rho as the Pearson correlation of average ranks.

    Without ties this equals ``1 - 6 sum d^2 / (n (n^2 - 1))``.
    """
    rx = rankdata(np.asarray(x, dtype=float))
    ry = rankdata(np.asarray(y, dtype=float))
    if len(rx) != len(ry):
        raise ValueError("x and y must have the same length")
    if len(rx) < 2:
        return None
    dx = rx - rx.mean()
    dy = ry - ry.mean()
    denom = math.sqrt(float(dx @ dx) * float(dy @ dy))
    if denom == 0:
        return None
    return float(np.clip((dx @ dy) / denom, -1.0, 1.0))


def _top_terms(counts: Mapping[str, int], max_terms: int) -> list[str]:
    ranked = rank_terms(counts)
    head = ranked[:top_tenth(len(ranked))]
    return [t for t, c in head if c > 1][:max_terms]


def correlation_vectors(collection: Mapping[str, int], root: Mapping[str, int],
                        max_terms: int = MAX_TERMS) -> tuple[list[str], np.ndarray, np.ndarray]:
    """Terms and paired frequency vectors compared by the correlation metrics.

    Each corpus contributes at most ``max_terms`` of its top-10% terms, leaving
    out terms seen only once. A term missing from one corpus gets frequency 0
    there, which ranks it at the bottom of that corpus.
    """
    terms = sorted(set(_top_terms(collection, max_terms)) | set(_top_terms(root, max_terms)))
    x = np.array([collection.get(t, 0) for t in terms], dtype=float)
    y = np.array([root.get(t, 0) for t in terms], dtype=float)
    return terms, x, y


def rank_correlation(collection: Mapping[str, int], root: Mapping[str, int], kind: str = "kendall",
                     max_terms: int = MAX_TERMS, min_points: int = MIN_POINTS) -> float | None:
    """Rank agreement of a collection's term frequencies with its root articles'.

    Returns None (undefined) with fewer than ``min_points`` compared terms.
    """
    if kind not in ("kendall", "spearman"):
        raise ValueError("kind must be 'kendall' or 'spearman'")
    terms, x, y = correlation_vectors(collection, root, max_terms)
    if len(terms) < min_points:
        return None
    if kind == "kendall":
        return kendall_tau(x.tolist(), y.tolist())
    return spearman_rho(x, y)
