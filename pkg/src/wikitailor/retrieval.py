"""Inverted index and vocabulary-query retrieval for the IR extraction model.

Relevance of a document ``d`` to a query is

    score(d) = sum_t  tf(t, d) / |d| * ln(1 + N / df(t))

over the query terms present in ``d``; ``|d|`` is the preprocessed token
count and ``N`` the number of indexed documents.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .store import CorpusStore
from .textprep import PreprocessConfig, preprocess
from .vocabulary import Vocabulary

__all__ = [
    "THRESHOLDS",
    "InvertedIndex",
    "IrExtraction",
    "build_index",
    "extract_ir",
    "query",
    "threshold_select",
    "write_ir_outputs",
]

# threshold mode -> divisor of the maximum score (None keeps everything)
THRESHOLDS: dict[str, int | None] = {"all": None, "100": 100, "10": 10}


@dataclass
class InvertedIndex:
    postings: dict[str, list[tuple[int, int]]] = field(default_factory=dict)
    doc_lengths: dict[int, int] = field(default_factory=dict)

    @property
    def doc_count(self) -> int:
        return len(self.doc_lengths)

    @property
    def doc_freqs(self) -> dict[str, int]:
        return {t: len(p) for t, p in self.postings.items()}

    def df(self, term: str) -> int:
        return len(self.postings.get(term, ()))

    def add(self, doc_id: int, tokens: Sequence[str]) -> None:
        if doc_id in self.doc_lengths:
            raise ValueError(f"document {doc_id} already indexed")
        self.doc_lengths[doc_id] = len(tokens)
        for term, tf in sorted(Counter(tokens).items()):
            self.postings.setdefault(term, []).append((doc_id, tf))


def build_index(store: CorpusStore, cfg: PreprocessConfig, ids: Iterable[int] | None = None) -> InvertedIndex:
    """Index the preprocessed bodies of ``store`` (or of ``ids`` only), in id order."""
    index = InvertedIndex()
    doc_ids = sorted(store.articles) if ids is None else sorted(set(ids))
    for doc_id in doc_ids:
        index.add(doc_id, preprocess(store.articles[doc_id].body, cfg))
    return index


def query(index: InvertedIndex, vocab: Vocabulary | Sequence[str], query_size: int) -> list[tuple[int, float]]:
    """Score every document containing one of the first ``query_size`` vocabulary
    terms; result sorted by descending score, ties by ascending id."""
    if query_size < 1:
        raise ValueError("query_size must be >= 1")
    terms = vocab.top(query_size) if isinstance(vocab, Vocabulary) else list(vocab)[:query_size]
    n = index.doc_count
    scores: dict[int, float] = {}
    # accumulate in vocabulary rank order for reproducible floating-point sums
    for term in terms:
        plist = index.postings.get(term)
        if not plist:
            continue
        idf = math.log1p(n / len(plist))
        for doc_id, tf in plist:
            length = index.doc_lengths[doc_id]
            scores[doc_id] = scores.get(doc_id, 0.0) + tf / length * idf
    return sorted(((d, s) for d, s in scores.items() if s > 0), key=lambda ds: (-ds[1], ds[0]))


@dataclass
class IrExtraction:
    domain: str
    lang: str
    query_size: int
    threshold_mode: str
    scored: list[tuple[int, float]]
    article_ids: frozenset[int]

    def summary(self) -> dict:
        return {
            "model": "IR",
            "domain": self.domain,
            "lang": self.lang,
            "query_size": self.query_size,
            "threshold": self.threshold_mode,
            "retrieved": len(self.scored),
            "articles": len(self.article_ids),
            "max_score": self.scored[0][1] if self.scored else 0.0,
        }


def threshold_select(scored: Sequence[tuple[int, float]], mode: str) -> list[tuple[int, float]]:
    """Keep results scoring strictly above max/100 or max/10, or all of them."""
    if mode not in THRESHOLDS:
        raise ValueError(f"unknown threshold mode {mode!r}; expected one of {sorted(THRESHOLDS)}")
    if not scored:
        return []
    divisor = THRESHOLDS[mode]
    if divisor is None:
        return list(scored)
    cut = max(s for _, s in scored) / divisor
    return [(d, s) for d, s in scored if s > cut]


def extract_ir(index: InvertedIndex, vocab: Vocabulary, query_size: int, mode: str,
               lang: str = "") -> IrExtraction:
    scored = query(index, vocab, query_size)
    kept = threshold_select(scored, mode)
    return IrExtraction(vocab.domain, lang or vocab.lang, query_size, mode, scored,
                        frozenset(d for d, _ in kept))


def write_ir_outputs(extraction: IrExtraction, directory: str | Path, extra: dict | None = None) -> None:
    """``articles.txt``, ``scores.tsv`` and ``extraction.json`` for one run."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    (directory / "articles.txt").write_text("".join(f"{a}\n" for a in sorted(extraction.article_ids)),
                                            encoding="utf-8")
    (directory / "scores.tsv").write_text("".join(f"{d}\t{s!r}\n" for d, s in extraction.scored
                                                  if d in extraction.article_ids),
                                          encoding="utf-8")
    info = extraction.summary()
    if extra:
        info.update(extra)
    (directory / "extraction.json").write_text(json.dumps(info, indent=2, sort_keys=True) + "\n", encoding="utf-8")
