"""Multilingual comparable corpora from per-language selections and langlinks."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import TailorError
from .store import CorpusStore

log = logging.getLogger(__name__)

__all__ = [
    "AlignedSet",
    "extract_parallel_titles",
    "intersect_languages",
    "langlink_edges",
    "read_aligned",
    "union_languages",
    "write_aligned",
    "write_titles",
]

Node = tuple[str, int]


@dataclass(frozen=True)
class AlignedSet:
    languages: tuple[str, ...]
    tuples: tuple[tuple[int | None, ...], ...]
    mode: str

    def __post_init__(self):
        if len(self.languages) < 2:
            raise ValueError("alignment needs at least two languages")
        if self.mode not in ("intersection", "union"):
            raise ValueError(f"unknown alignment mode {self.mode!r}")

    def project(self, lang: str) -> set[int]:
        i = self.languages.index(lang)
        return {t[i] for t in self.tuples if t[i] is not None}


def langlink_edges(stores: Mapping[str, CorpusStore]) -> list[tuple[Node, Node]]:
    """Undirected langlink edges between articles of the given stores.

    Titles are resolved to ids in the target store; links to unknown titles or
    to editions not supplied are dropped. One-way links count as links.
    """
    edges = set()
    one_way = 0
    for lang, store in stores.items():
        for (src, target_lang), title in store.langlinks.entries.items():
            target_store = stores.get(target_lang)
            if target_store is None or src not in store.articles:
                continue
            target = target_store.article_id_for_title(title)
            if target is None:
                continue
            a, b = (lang, src), (target_lang, target)
            edges.add((a, b) if a < b else (b, a))
            back = target_store.langlinks.entries.get((target, lang))
            if back is None or store.article_id_for_title(back) != src:
                one_way += 1
    if one_way:
        log.info("%d langlinks have no matching reverse link; treated as symmetric", one_way)
    return sorted(edges)


class _Components:
    """Union-find that refuses merges putting two articles of one language together."""

    def __init__(self):
        self.parent: dict[Node, Node] = {}
        self.langs: dict[Node, dict[str, int]] = {}

    def add(self, node: Node) -> None:
        if node not in self.parent:
            self.parent[node] = node
            self.langs[node] = {node[0]: node[1]}

    def find(self, node: Node) -> Node:
        root = node
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[node] != root:
            self.parent[node], node = root, self.parent[node]
        return root

    def union(self, a: Node, b: Node) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return True
        la, lb = self.langs[ra], self.langs[rb]
        clash = la.keys() & lb.keys()
        if clash:
            log.warning("conflicting langlinks %s-%s: %s already aligned; link ignored",
                        a, b, ", ".join(f"{l}:{la[l]}/{lb[l]}" for l in sorted(clash)))
            return False
        if rb < ra:
            ra, rb = rb, ra
            la, lb = lb, la
        self.parent[rb] = ra
        la.update(lb)
        del self.langs[rb]
        return True

    def groups(self) -> list[dict[str, int]]:
        return [self.langs[r] for r in self.parent if self.parent[r] == r]


def _prepare(extractions: Sequence[tuple[str, Iterable[int]]],
             stores: Sequence[CorpusStore] | Mapping[str, CorpusStore]):
    if len(extractions) < 2:
        raise TailorError("alignment needs selections in at least two languages")
    if not isinstance(stores, Mapping):
        stores = {s.edition: s for s in stores}
    languages = tuple(lang for lang, _ in extractions)
    if len(set(languages)) != len(languages):
        raise TailorError("each language may appear only once")
    missing = [lang for lang in languages if lang not in stores]
    if missing:
        raise TailorError(f"no corpus store for language(s) {', '.join(missing)}")
    selected = {(lang, int(a)) for lang, ids in extractions for a in ids}
    edges = langlink_edges({lang: stores[lang] for lang in languages})
    return languages, selected, edges


def _to_tuples(groups, languages) -> tuple[tuple[int | None, ...], ...]:
    rows = [tuple(g.get(lang) for lang in languages) for g in groups]
    return tuple(sorted(rows, key=lambda r: tuple((x is None, x or 0) for x in r)))


def intersect_languages(extractions: Sequence[tuple[str, Iterable[int]]],
                        stores: Sequence[CorpusStore] | Mapping[str, CorpusStore]) -> AlignedSet:
    """Tuples of articles selected in every language and connected by langlinks.

    Connectivity is transitive (a pivot article may link the others), but every
    member must itself be selected in its own language.
    """
    languages, selected, edges = _prepare(extractions, stores)
    comps = _Components()
    for node in sorted(selected):
        comps.add(node)
    for a, b in edges:
        if a in selected and b in selected:
            comps.union(a, b)
    full = [g for g in comps.groups() if len(g) == len(languages)]
    return AlignedSet(languages, _to_tuples(full, languages), "intersection")


def union_languages(extractions: Sequence[tuple[str, Iterable[int]]],
                    stores: Sequence[CorpusStore] | Mapping[str, CorpusStore]) -> AlignedSet:
    """Tuples seeded by any language's selection, with the other slots filled by
    their langlinked articles when those exist (selected or not)."""
    languages, selected, edges = _prepare(extractions, stores)
    comps = _Components()
    for node in sorted(selected):
        comps.add(node)
    # links among selected articles take precedence over links to unselected ones
    both = [(a, b) for a, b in edges if a in selected and b in selected]
    for a, b in both:
        comps.union(a, b)
    # grow outwards from the selected articles through unselected pivots
    adjacency: dict[Node, list[Node]] = {}
    for a, b in edges:
        adjacency.setdefault(a, []).append(b)
        adjacency.setdefault(b, []).append(a)
    frontier = sorted(selected)
    seen = set(selected)
    while frontier:
        nxt = []
        for node in frontier:
            for other in sorted(adjacency.get(node, ())):
                if other in selected:
                    continue
                comps.add(other)
                if comps.union(node, other) and other not in seen:
                    seen.add(other)
                    nxt.append(other)
        frontier = sorted(nxt)
    groups = [g for g in comps.groups() if any((lang, i) in selected for lang, i in g.items())]
    return AlignedSet(languages, _to_tuples(groups, languages), "union")


def extract_parallel_titles(aligned: AlignedSet,
                            stores: Sequence[CorpusStore] | Mapping[str, CorpusStore]) -> list[tuple[str, ...]]:
    """Title rows (one per tuple, columns in ``aligned.languages`` order); absent slots are ''."""
    if not isinstance(stores, Mapping):
        stores = {s.edition: s for s in stores}
    rows = []
    for tup in aligned.tuples:
        rows.append(tuple("" if a is None else stores[lang].articles[a].title
                          for lang, a in zip(aligned.languages, tup)))
    return rows


def write_titles(aligned: AlignedSet, stores, path: str | Path) -> None:
    lines = ["\t".join(aligned.languages)]
    lines += ["\t".join(row) for row in extract_parallel_titles(aligned, stores)]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_aligned(aligned: AlignedSet, path: str | Path) -> None:
    """One tuple per row, ``lang:article_id`` cells, empty cell for an absent slot."""
    lines = ["\t".join("" if a is None else f"{lang}:{a}" for lang, a in zip(aligned.languages, tup))
             for tup in aligned.tuples]
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def read_aligned(path: str | Path, languages: Sequence[str], mode: str) -> AlignedSet:
    tuples = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        cells = line.split("\t")
        row = []
        for lang, cell in zip(languages, cells):
            if cell:
                cell_lang, _, ident = cell.partition(":")
                if cell_lang != lang:
                    raise ValueError(f"cell {cell!r} in column for {lang}")
                row.append(int(ident))
            else:
                row.append(None)
        tuples.append(tuple(row))
    return AlignedSet(tuple(languages), tuple(tuples), mode)
