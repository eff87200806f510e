"""Level-wise breadth-first selection over the category graph.

Categories are grouped by the depth at which the breadth-first search first
reaches them. A level is accepted while the share of its categories whose
preprocessed title contains a vocabulary term stays at or above ``k`` percent;
the first failing level ends the extraction. The root level is always kept.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import TailorError
from .store import CategoryNode, CorpusStore
from .textprep import PreprocessConfig, preprocess
from .vocabulary import Vocabulary

__all__ = [
    "DEFAULT_PROBE_DEPTH",
    "LevelStats",
    "WtExtraction",
    "bfs_levels",
    "emit_curve",
    "is_positive",
    "score_level",
    "traverse_and_extract",
    "write_wt_outputs",
]

DEFAULT_PROBE_DEPTH = 20
CURVE_HEADER = ("depth", "total", "positive", "fraction")


@dataclass(frozen=True)
class LevelStats:
    depth: int
    categories_total: int
    categories_positive: int

    @property
    def positive_fraction(self) -> float:
        if self.categories_total == 0:
            return 0.0
        return self.categories_positive / self.categories_total

    def accepted(self, k: float) -> bool:
        # exact comparison: positive/total >= k/100  <=>  100*positive >= k*total
        return self.categories_total > 0 and 100 * self.categories_positive >= k * self.categories_total


@dataclass
class WtExtraction:
    domain: str
    lang: str
    threshold_k: float
    stop_depth: int
    levels: list[LevelStats]
    article_ids: frozenset[int]
    category_ids: frozenset[int] = field(default_factory=frozenset)

    def summary(self) -> dict:
        return {
            "model": "WT",
            "domain": self.domain,
            "lang": self.lang,
            "k": self.threshold_k,
            "stop_depth": self.stop_depth,
            "explored_depth": self.levels[-1].depth if self.levels else 0,
            "categories": len(self.category_ids),
            "articles": len(self.article_ids),
        }


def _title_terms(title: str, cfg: PreprocessConfig, cache: dict) -> frozenset[str]:
    terms = cache.get(title)
    if terms is None:
        terms = cache[title] = frozenset(preprocess(title, cfg))
    return terms


def is_positive(category: CategoryNode, vocab_terms: frozenset[str], cfg: PreprocessConfig,
                cache: dict | None = None) -> bool:
    """True when the category title shares at least one term with the vocabulary."""
    cache = {} if cache is None else cache
    return not _title_terms(category.title, cfg, cache).isdisjoint(vocab_terms)


def score_level(categories: Sequence[CategoryNode], vocab: Vocabulary | Iterable[str],
                cfg: PreprocessConfig, depth: int = 0, _cache: dict | None = None) -> LevelStats:
    terms = frozenset(vocab.words if isinstance(vocab, Vocabulary) else vocab)
    cache = {} if _cache is None else _cache
    positive = sum(1 for c in categories if is_positive(c, terms, cfg, cache))
    return LevelStats(depth, len(categories), positive)


def bfs_levels(store: CorpusStore, root: CategoryNode, max_depth: int | None = None) -> Iterator[list[CategoryNode]]:
    """Yield the categories at depth 0, 1, 2, ... by first visit.

    Within a level categories are ordered by id. Each category appears once,
    so cycles cannot stall the search.
    """
    visited = {root.category_id}
    level = [root]
    depth = 0
    while level:
        yield level
        if max_depth is not None and depth >= max_depth:
            return
        nxt = set()
        for node in level:
            for child in node.children:
                if child not in visited and child in store.categories:
                    nxt.add(child)
        visited.update(nxt)
        level = [store.categories[c] for c in sorted(nxt)]
        depth += 1


def traverse_and_extract(store: CorpusStore, root: CategoryNode, vocab: Vocabulary, k: float,
                         cfg: PreprocessConfig, probe_depth: int = DEFAULT_PROBE_DEPTH) -> WtExtraction:
    """Run the graph-based selection from ``root`` at threshold ``k`` percent.

    The search keeps going past the stop level up to ``probe_depth`` so that
    ``levels`` describes the whole positives curve; this never changes which
    articles are selected.
    """
    if not 0 < k <= 100:
        raise ValueError("k must lie in (0, 100]")
    if store.categories.get(root.category_id) != root:
        raise TailorError(f"root category {root.title!r} is not part of the {store.edition} store")
    terms = frozenset(vocab.words)
    cache: dict = {}
    levels: list[LevelStats] = []
    selected_cats: set[int] = set()
    stop_depth = 0
    stopped = False
    for depth, level in enumerate(bfs_levels(store, root)):
        stats = score_level(level, terms, cfg, depth, cache)
        levels.append(stats)
        if depth == 0:
            selected_cats.update(c.category_id for c in level)
        elif not stopped and stats.accepted(k):
            stop_depth = depth
            selected_cats.update(c.category_id for c in level)
        else:
            stopped = True
        if stopped and depth >= probe_depth:
            break
    articles = set()
    for cid in selected_cats:
        articles.update(store.categories[cid].article_ids)
    articles &= store.articles.keys()
    return WtExtraction(vocab.domain or root.title, store.edition, k, stop_depth, levels,
                        frozenset(articles), frozenset(selected_cats))


def emit_curve(extraction: WtExtraction, path: str | Path) -> None:
    """Write the per-depth positives curve as CSV."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CURVE_HEADER)
        for lv in extraction.levels:
            writer.writerow([lv.depth, lv.categories_total, lv.categories_positive,
                             repr(round(lv.positive_fraction, 12))])


def write_wt_outputs(extraction: WtExtraction, directory: str | Path, extra: dict | None = None) -> None:
    """``articles.txt``, ``levels.csv`` and ``extraction.json`` for one run."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    (directory / "articles.txt").write_text("".join(f"{a}\n" for a in sorted(extraction.article_ids)),
                                            encoding="utf-8")
    emit_curve(extraction, directory / "levels.csv")
    info = extraction.summary()
    if extra:
        info.update(extra)
    (directory / "extraction.json").write_text(json.dumps(info, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
                                               encoding="utf-8")
