"""Characteristic domain vocabulary built from a root category's seed articles."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .errors import CategoryNotFoundError, EmptySeedError, EmptyVocabularyError
from .store import CategoryNode, CorpusStore
from .textprep import PreprocessConfig, preprocess

__all__ = [
    "CAP_MODES",
    "MIN_SEED_ARTICLES",
    "Vocabulary",
    "build_vocabulary",
    "edit_distance",
    "find_root_category",
    "rank_terms",
    "select_seed_articles",
    "top_tenth",
]

CAP_MODES = ("top10pct", "top100-of-10pct", "top500-of-10pct", "topK")
MIN_SEED_ARTICLES = 10


@dataclass(frozen=True)
class Vocabulary:
    domain: str
    lang: str
    terms: tuple[tuple[str, int], ...]
    cap_mode: str = "top10pct"

    def __post_init__(self):
        if self.cap_mode not in CAP_MODES:
            raise ValueError(f"unknown cap mode {self.cap_mode!r}")

    def __len__(self):
        return len(self.terms)

    @property
    def words(self) -> list[str]:
        return [t for t, _ in self.terms]

    def top(self, n: int) -> list[str]:
        return [t for t, _ in self.terms[:n]]

    def to_tsv(self, path: str | Path) -> None:
        Path(path).write_text("".join(f"{t}\t{c}\n" for t, c in self.terms), encoding="utf-8")

    @classmethod
    def from_tsv(cls, path: str | Path, domain: str, lang: str, cap_mode: str = "top10pct") -> "Vocabulary":
        terms = []
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            if line.strip():
                term, count = line.split("\t")
                terms.append((term, int(count)))
        return cls(domain, lang, tuple(terms), cap_mode)


def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance with unit costs."""
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def find_root_category(store: CorpusStore, name: str) -> CategoryNode:
    """Category whose title equals ``name`` ignoring case.

    Raises :class:`CategoryNotFoundError` listing the five nearest titles by
    edit distance when there is no exact match.
    """
    wanted = " ".join(name.replace("_", " ").split()).casefold()
    for node in sorted(store.categories.values(), key=lambda c: c.category_id):
        if node.title.casefold() == wanted:
            return node
    ranked = sorted(store.categories.values(),
                    key=lambda c: (edit_distance(c.title.casefold(), wanted), c.title))
    raise CategoryNotFoundError(name, [c.title for c in ranked[:5]])


def select_seed_articles(store: CorpusStore, root: CategoryNode,
                         minimum: int = MIN_SEED_ARTICLES) -> set[int]:
    seeds = set(root.article_ids)
    if len(seeds) < minimum:
        for child in root.children:
            seeds.update(store.categories[child].article_ids)
    seeds &= store.articles.keys()
    if not seeds:
        raise EmptySeedError(f"category {root.title!r} and its children hold no articles")
    return seeds


def rank_terms(counts: Counter | dict[str, int]) -> list[tuple[str, int]]:
    """Terms by descending count; equal counts in lexicographic order."""
    return sorted(((t, c) for t, c in counts.items() if c > 0), key=lambda tc: (-tc[1], tc[0]))


def top_tenth(n_unique: int) -> int:
    """Ten percent of ``n_unique`` rounded up, in exact integer arithmetic."""
    return (n_unique + 9) // 10


def _cap_for(cap_mode: str, k: int | None) -> int | None:
    if cap_mode == "top10pct":
        return None
    if cap_mode == "top100-of-10pct":
        return 100
    if cap_mode == "top500-of-10pct":
        return 500
    if k is None or k < 1:
        raise ValueError("cap_mode 'topK' needs a positive k")
    return k


def build_vocabulary(store: CorpusStore, seeds: Iterable[int], cfg: PreprocessConfig,
                     cap_mode: str = "top10pct", k: int | None = None,
                     domain: str | None = None) -> Vocabulary:
    """Rank the terms of the concatenated seed articles and keep the top 10%.

    Parameters
    ----------
    seeds : article ids, concatenated in ascending id order
    cap_mode : one of ``CAP_MODES``; the 100/500/K caps apply inside the 10% cut
    k : cap size for ``topK``
    domain : root category title recorded on the result
    """
    seeds = sorted(set(seeds))
    if not seeds:
        raise EmptySeedError("no seed articles")
    if cap_mode not in CAP_MODES:
        raise ValueError(f"unknown cap mode {cap_mode!r}")
    text = "\n".join(store.articles[s].body for s in seeds)
    ranked = rank_terms(Counter(preprocess(text, cfg)))
    if not ranked:
        raise EmptyVocabularyError("seed articles contain no terms after preprocessing")
    size = top_tenth(len(ranked))
    cap = _cap_for(cap_mode, k)
    if cap is not None:
        size = min(size, cap)
    return Vocabulary(domain or "", cfg.lang, tuple(ranked[:size]), cap_mode)
