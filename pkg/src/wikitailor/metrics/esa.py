"""Explicit semantic analysis space and the angular cohesion metric."""

from __future__ import annotations

import logging
import math
import warnings
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy import sparse

from ..errors import UndefinedMetricError
from ..store import CorpusStore
from ..textprep import PreprocessConfig, preprocess

log = logging.getLogger(__name__)

__all__ = [
    "ESA_FLOOR",
    "EsaSpace",
    "angular_dispersion",
    "build_esa_space",
    "d_esa",
    "esa_vectors",
    "shared_reference_ids",
]

ESA_FLOOR = 10_000


@dataclass(frozen=True)
class EsaSpace:
    """tf-idf weighted term-document matrix over a reference collection.

    ``weights`` holds raw ``tf * ln(N / df)`` values, one row per reference
    document, so terms present in every reference document weigh 0;
    ``matrix`` is the same with L2-normalised rows.
    """

    lang: str
    doc_ids: tuple[int, ...]
    vocabulary: Mapping[str, int]
    idf: np.ndarray
    weights: sparse.csr_matrix
    matrix: sparse.csr_matrix

    @property
    def size(self) -> int:
        return len(self.doc_ids)

    @classmethod
    def from_token_lists(cls, doc_ids: Sequence[int], docs: Sequence[Sequence[str]], lang: str = "",
                         floor: int = ESA_FLOOR) -> "EsaSpace":
        if len(doc_ids) != len(docs):
            raise ValueError("doc_ids and docs differ in length")
        if len(docs) < floor:
            warnings.warn(f"ESA reference has {len(docs)} documents, below the floor of {floor}",
                          stacklevel=2)
        bags = [Counter(d) for d in docs]
        df = Counter()
        for bag in bags:
            df.update(bag.keys())
        vocabulary = {t: i for i, t in enumerate(sorted(df))}
        n = len(docs)
        idf = np.zeros(len(vocabulary))
        for t, i in vocabulary.items():
            idf[i] = math.log(n / df[t])
        rows, cols, vals = [], [], []
        for r, bag in enumerate(bags):
            for t, tf in sorted(bag.items()):
                j = vocabulary[t]
                w = tf * idf[j]
                if w > 0:
                    rows.append(r)
                    cols.append(j)
                    vals.append(w)
        m = sparse.csr_matrix((vals, (rows, cols)), shape=(n, len(vocabulary)), dtype=np.float64)
        norms = np.sqrt(np.asarray(m.multiply(m).sum(axis=1)).ravel())
        scale = np.divide(1.0, norms, out=np.zeros_like(norms), where=norms > 0)
        unit = sparse.csr_matrix(sparse.diags(scale) @ m)
        return cls(lang, tuple(int(d) for d in doc_ids), vocabulary, idf, m, unit)

    def weight(self, doc_id: int, term: str) -> float:
        """Raw tf-idf weight of ``term`` in a reference document (0 if absent)."""
        j = self.vocabulary.get(term)
        if j is None:
            return 0.0
        return float(self.weights[self.doc_ids.index(doc_id), j])

    def term_vector(self, tokens: Sequence[str]) -> np.ndarray:
        vec = np.zeros(len(self.vocabulary))
        for t, tf in Counter(tokens).items():
            j = self.vocabulary.get(t)
            if j is not None:
                vec[j] = tf * self.idf[j]
        return vec


def shared_reference_ids(stores: Sequence[CorpusStore]) -> list[int]:
    """Articles of ``stores[0]`` langlinked to an existing article in every other store."""
    base, others = stores[0], stores[1:]
    out = []
    for article_id in sorted(base.articles):
        ok = True
        for other in others:
            title = base.langlinks.entries.get((article_id, other.edition))
            if title is None or other.article_id_for_title(title) is None:
                ok = False
                break
        if ok:
            out.append(article_id)
    return out


def build_esa_space(store: CorpusStore, reference_ids: Iterable[int], cfg: PreprocessConfig,
                    floor: int = ESA_FLOOR) -> EsaSpace:
    """ESA space over the given reference articles of ``store``."""
    ids = sorted(set(reference_ids))
    docs = [preprocess(store.articles[i].body, cfg) for i in ids]
    return EsaSpace.from_token_lists(ids, docs, store.edition, floor=floor)


def esa_vectors(docs: Sequence[Sequence[str]], space: EsaSpace) -> np.ndarray:
    """ESA representation of each document: cosine against every reference document."""
    out = np.zeros((len(docs), space.size))
    for r, tokens in enumerate(docs):
        vec = space.term_vector(tokens)
        norm = math.sqrt(float(vec @ vec))
        if norm > 0:
            out[r] = space.matrix @ (vec / norm)
    return out


def _angle(u: np.ndarray, v: np.ndarray) -> float:
    # 2*atan2(|u-v|, |u+v|) for unit vectors; exact 0 for identical directions
    return 2.0 * math.atan2(float(np.linalg.norm(u - v)), float(np.linalg.norm(u + v)))


def angular_dispersion(vectors: np.ndarray) -> tuple[float, int]:
    """Mean angle between each non-zero vector and the centroid of those vectors.

    Returns the mean angle and the number of zero vectors left out.
    """
    vectors = np.asarray(vectors, dtype=np.float64)
    norms = np.linalg.norm(vectors, axis=1)
    keep = norms > 0
    excluded = int((~keep).sum())
    if not keep.any():
        raise UndefinedMetricError("every ESA vector is zero")
    kept = vectors[keep]
    if len(kept) == 1:
        return 0.0, excluded
    centroid = kept.mean(axis=0)
    c = centroid / np.linalg.norm(centroid)
    units = kept / norms[keep][:, None]
    angles = [_angle(u, c) for u in units]
    return float(np.mean(angles)), excluded


def d_esa(docs: Sequence[Sequence[str]], space: EsaSpace) -> tuple[float, int]:
    """Average angular distance of a collection's articles to their ESA centroid.

    ``docs`` are preprocessed token lists. Articles whose ESA vector is zero are
    excluded; their number is returned alongside the value.
    """
    value, excluded = angular_dispersion(esa_vectors(docs, space))
    if excluded:
        log.info("d_ESA: %d article(s) with zero ESA vector excluded", excluded)
    return value, excluded
