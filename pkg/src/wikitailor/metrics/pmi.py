"""Pointwise mutual information of vocabulary term pairs, with whole articles as
co-occurrence windows.

Two probability estimates are supported. ``art`` pools token counts over the
collection::

    p(w)      = sum_a c_a(w) / sum_a T_a
    p(wi, wj) = sum_a m_a(wi, wj) / sum_a T_a

``col`` averages per-article relative frequencies::

    p(w)      = mean_a c_a(w) / T_a
    p(wi, wj) = mean_a m_a(wi, wj) / T_a

where ``T_a`` is the article's token count and ``m_a(wi, wj)`` the number of
co-occurrences of the pair in article ``a``: ``min(c_a(wi), c_a(wj))``, which
is zero unless both terms are present.
"""

from __future__ import annotations

import numpy as np

from ..errors import UndefinedMetricError
from .distribution import MetricsConfig, TermDistribution

__all__ = ["pair_probabilities", "pair_scores", "pmi_family", "VARIANTS"]

VARIANTS = ("art", "col")


def pair_probabilities(dist: TermDistribution, variant: str = "art"):
    """Marginals ``p`` (V,) and joint ``p_ij`` (V, V) under the given estimate."""
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    counts = dist.counts.astype(np.float64)
    totals = dist.totals.astype(np.float64)
    if variant == "art":
        mass = totals.sum()
        if mass == 0:
            raise UndefinedMetricError("collection has no tokens")
        weights = np.full(dist.N, 1.0 / mass)
    else:
        keep = totals > 0
        if not keep.any():
            raise UndefinedMetricError("collection has no tokens")
        weights = np.zeros(dist.N)
        weights[keep] = 1.0 / totals[keep] / keep.sum()
    p = weights @ counts
    V = counts.shape[1]
    joint = np.zeros((V, V))
    for i in range(V):
        m = np.minimum(counts[:, i:i + 1], counts[:, i:])
        joint[i, i:] = weights @ m
        joint[i:, i] = joint[i, i:]
    return p, joint


def pair_scores(dist: TermDistribution, cfg: MetricsConfig = MetricsConfig(), variant: str = "art",
                normalised: bool = False) -> np.ndarray:
    """(N)PMI of every unordered pair i < j, in row-major pair order."""
    if len(dist.terms) < 2:
        raise UndefinedMetricError("PMI needs a vocabulary of at least two terms")
    p, joint = pair_probabilities(dist, variant)
    iu, ju = np.triu_indices(len(p), k=1)
    pij = joint[iu, ju] + cfg.epsilon
    pmi = np.log2(pij / (p[iu] * p[ju] + cfg.epsilon))
    if not normalised:
        return pmi
    # the bound |NPMI| <= 1 can be exceeded by O(epsilon^2) when p_ij = p_i = p_j = 1/2
    return np.clip(pmi / -np.log2(pij), -1.0, 1.0)


def pmi_family(dist: TermDistribution, cfg: MetricsConfig = MetricsConfig(), variant: str = "art",
               normalised: bool = False) -> float:
    """Median (or mean, per ``cfg.aggregation``) (N)PMI over all term pairs."""
    scores = pair_scores(dist, cfg, variant, normalised)
    if cfg.aggregation == "median":
        return float(np.median(scores))
    return float(np.mean(scores))
