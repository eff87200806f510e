"""In-memory stores and random inputs shared by the test modules."""

from __future__ import annotations

import random
from typing import Mapping, Sequence

from wikitailor.store import ArticleRecord, CategoryNode, CorpusStore, LangLinkTable


def make_store(graph: Mapping[str, Sequence[str]], members: Mapping[str, Sequence[int]] | None = None,
               bodies: Mapping[int, str] | None = None, lang: str = "en",
               langlinks: Sequence[tuple[int, str, str]] = (), titles: Mapping[int, str] | None = None,
               first_cat_id: int = 100_000) -> CorpusStore:
    """Build a store from ``{category title: [child titles]}``.

    Category ids follow the order in which titles first appear in ``graph``.
    ``members`` maps category titles to article ids; ``bodies`` gives article
    text (default ``"text"``).
    """
    members = members or {}
    bodies = dict(bodies or {})
    titles = dict(titles or {})
    order: list[str] = []
    for parent, kids in graph.items():
        for t in (parent, *kids):
            if t not in order:
                order.append(t)
    for t in members:
        if t not in order:
            order.append(t)
    ids = {t: first_cat_id + i for i, t in enumerate(order)}
    cats_of: dict[int, set[int]] = {}
    for t, arts in members.items():
        for a in arts:
            cats_of.setdefault(a, set()).add(ids[t])
            bodies.setdefault(a, "text")
    categories = {
        ids[t]: CategoryNode(ids[t], t, tuple(sorted(ids[c] for c in graph.get(t, ()))),
                             tuple(sorted(set(members.get(t, ())))))
        for t in order
    }
    articles = {
        a: ArticleRecord(a, titles.get(a, f"Article {a}"), body, tuple(sorted(cats_of.get(a, ()))), lang)
        for a, body in sorted(bodies.items())
    }
    return CorpusStore(lang, articles, categories, LangLinkTable.from_pairs(langlinks), "test")


def random_graph_store(rng: random.Random, n_categories: int, cycle_rate: float = 0.10,
                       positive_rate: float = 0.5, max_articles: int = 4) -> tuple[CorpusStore, str]:
    """A random rooted category DAG with back edges forming cycles.

    Titles are ``Orbit N`` (positive for vocabulary ``{orbit}``) or ``Cuisine N``.
    Returns the store and the root title.
    """
    titles = ["Orbit 0"]
    for i in range(1, n_categories):
        titles.append(f"Orbit {i}" if rng.random() < positive_rate else f"Cuisine {i}")
    graph: dict[str, list[str]] = {t: [] for t in titles}
    for i in range(1, n_categories):
        parent = titles[rng.randrange(0, i)]
        graph[parent].append(titles[i])
        if rng.random() < 0.2 and i > 1:
            other = titles[rng.randrange(0, i)]
            if titles[i] not in graph[other]:
                graph[other].append(titles[i])
    n_back = int(round(cycle_rate * n_categories))
    for _ in range(n_back):
        a, b = rng.randrange(1, n_categories), rng.randrange(0, n_categories)
        if b <= a and titles[b] not in graph[titles[a]]:
            graph[titles[a]].append(titles[b])
    members = {}
    next_article = 1
    for t in titles:
        k = rng.randint(0, max_articles)
        members[t] = list(range(next_article, next_article + k))
        next_article += k
    return make_store(graph, members), titles[0]


def random_docs(rng: random.Random, n_docs: int, alphabet: Sequence[str], min_len: int = 1,
                max_len: int = 30) -> list[list[str]]:
    return [[rng.choice(alphabet) for _ in range(rng.randint(min_len, max_len))] for _ in range(n_docs)]
