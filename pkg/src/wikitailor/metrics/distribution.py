"""Per-article vocabulary counts and the density metrics built on them."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ..errors import UndefinedMetricError

log = logging.getLogger(__name__)

__all__ = ["MetricsConfig", "TermDistribution", "density", "augmented_density"]


@dataclass(frozen=True)
class MetricsConfig:
    epsilon: float = 1e-12
    K: float = 0.0
    aggregation: str = "median"
    vocab_size: int = 100
    esa_floor: int = 10_000

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if not 0 <= self.K < 1:
            raise ValueError("K must lie in [0, 1)")
        if self.aggregation not in ("median", "mean"):
            raise ValueError("aggregation must be 'median' or 'mean'")


@dataclass(frozen=True)
class TermDistribution:
    """Vocabulary-term counts for each article of a collection.

    ``counts[a, i]`` is the number of occurrences of ``terms[i]`` in article
    ``a``; ``totals[a]`` the article's token count and ``c_max[a]`` the count of
    its most frequent token (any token, not only vocabulary terms).
    """

    terms: tuple[str, ...]
    counts: np.ndarray
    totals: np.ndarray
    c_max: np.ndarray

    @property
    def N(self) -> int:
        return int(self.counts.shape[0])

    @classmethod
    def from_tokens(cls, docs: Iterable[Sequence[str]], terms: Sequence[str]) -> "TermDistribution":
        terms = tuple(dict.fromkeys(terms))
        col = {t: i for i, t in enumerate(terms)}
        rows, totals, maxima = [], [], []
        for tokens in docs:
            bag = Counter(tokens)
            row = np.zeros(len(terms), dtype=np.int64)
            for t, c in bag.items():
                j = col.get(t)
                if j is not None:
                    row[j] = c
            rows.append(row)
            totals.append(len(tokens))
            maxima.append(max(bag.values(), default=0))
        if not rows:
            raise UndefinedMetricError("collection has no articles")
        return cls(terms, np.vstack(rows), np.asarray(totals, dtype=np.int64),
                   np.asarray(maxima, dtype=np.int64))

    def in_domain(self) -> np.ndarray:
        """c_terms per article: total occurrences of vocabulary terms."""
        return self.counts.sum(axis=1)


def density(dist: TermDistribution) -> float:
    """Mean number of vocabulary-term occurrences per article."""
    return float(dist.in_domain().sum() / dist.N)


def augmented_density(dist: TermDistribution, cfg: MetricsConfig = MetricsConfig()) -> tuple[float, int]:
    """Mean augmented in-domain frequency ``K + (1-K) c_terms / c_max``.

    Returns the value and the number of articles excluded because they have no
    tokens at all.
    """
    keep = dist.c_max > 0
    excluded = int((~keep).sum())
    if excluded:
        log.info("augmented density: %d empty article(s) excluded", excluded)
    if not keep.any():
        raise UndefinedMetricError("every article is empty")
    ratio = dist.in_domain()[keep] / dist.c_max[keep]
    return float(np.mean(cfg.K + (1 - cfg.K) * ratio)), excluded
