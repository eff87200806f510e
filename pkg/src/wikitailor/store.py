"""Wikipedia dump ingestion and the persisted corpus store.

A :class:`CorpusStore` holds one edition's main-namespace content articles,
its category graph and its inter-language links. Stores are immutable after
construction and round-trip losslessly through :func:`persist_store` and
:func:`load_store`.
"""

from __future__ import annotations

import bz2
import gzip
import hashlib
import io
import json
import logging
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from .errors import (ConfigurationError, DumpParseError, IntegrityError,
                     StoreFormatError, StoreIOError)
from .wikitext import category_links, interlanguage_links, normalise_title, strip_markup

log = logging.getLogger(__name__)

__all__ = [
    "ArticleRecord",
    "CategoryNode",
    "LangLinkTable",
    "CorpusStore",
    "EditionConfig",
    "parse_dump",
    "persist_store",
    "load_store",
    "iter_sql_tuples",
]

STORE_FILES = ("articles.jsonl", "categories.jsonl", "langlinks.tsv")


@dataclass(frozen=True)
class ArticleRecord:
    article_id: int
    title: str
    body: str
    categories: tuple[int, ...] = ()
    lang: str = "en"


@dataclass(frozen=True)
class CategoryNode:
    category_id: int
    title: str
    children: tuple[int, ...] = ()
    article_ids: tuple[int, ...] = ()


@dataclass(frozen=True)
class LangLinkTable:
    """``(source article id, target language) -> target title``."""

    entries: Mapping[tuple[int, str], str] = field(default_factory=dict)

    @classmethod
    def from_pairs(cls, rows: Iterable[tuple[int, str, str]]) -> "LangLinkTable":
        entries: dict[tuple[int, str], str] = {}
        for source, lang, title in rows:
            key = (int(source), lang)
            if key in entries:
                if entries[key] != title:
                    log.warning("conflicting langlink %s:%s -> %r ignored (keeping %r)",
                                source, lang, title, entries[key])
                continue
            entries[key] = title
        return cls(entries)

    def targets(self, article_id: int) -> dict[str, str]:
        return {lang: t for (src, lang), t in self.entries.items() if src == article_id}

    def __len__(self):
        return len(self.entries)


@dataclass(eq=True)
class CorpusStore:
    edition: str
    articles: dict[int, ArticleRecord]
    categories: dict[int, CategoryNode]
    langlinks: LangLinkTable
    dump_fingerprint: str
    _title_index: dict[str, int] | None = field(default=None, compare=False, repr=False)
    _category_index: dict[str, int] | None = field(default=None, compare=False, repr=False)

    def article_id_for_title(self, title: str) -> int | None:
        if self._title_index is None:
            self._title_index = {a.title: a.article_id for a in self.articles.values()}
        return self._title_index.get(normalise_title(title))

    def category_by_title(self, title: str) -> CategoryNode | None:
        if self._category_index is None:
            self._category_index = {c.title: c.category_id for c in self.categories.values()}
        cid = self._category_index.get(normalise_title(title))
        return self.categories.get(cid) if cid is not None else None

    def edge_count(self) -> int:
        return sum(len(c.children) for c in self.categories.values())

    def summary(self) -> dict:
        return {
            "edition": self.edition,
            "articles": len(self.articles),
            "categories": len(self.categories),
            "category_edges": self.edge_count(),
            "langlinks": len(self.langlinks),
        }


# --------------------------------------------------------------------------
# Edition configuration

_REDIRECT_MARKERS = {
    "en": ["#redirect"],
    "fr": ["#redirection"],
    "es": ["#redirección", "#redireccion"],
    "de": ["#weiterleitung"],
    "ar": ["#تحويل"],
    "ro": ["#redirecționare", "#redirectionare"],
    "ca": ["#redirecciona", "#redirect"],
    "eu": ["#birzuzendu"],
    "el": ["#ανακατευθυνση"],
    "oc": ["#redireccion"],
}

_DISAMBIG_TEMPLATES = {
    "en": ["disambig", "disambiguation", "dab", "hndis", "geodis", "numberdis"],
    "fr": ["homonymie", "bandeau standard pour page d'homonymie"],
    "es": ["desambiguación", "desambiguacion", "desambig"],
    "de": ["begriffsklärung"],
    "ar": ["توضيح"],
    "ro": ["dezambiguizare"],
    "ca": ["desambiguació", "desambiguacio"],
    "eu": ["argipen"],
    "el": ["αποσαφήνιση"],
    "oc": ["omonimia", "homonimia"],
}

_DISAMBIG_TITLES = {
    "en": ["(disambiguation)"],
    "fr": ["(homonymie)"],
    "es": ["(desambiguación)"],
    "de": ["(begriffsklärung)"],
    "ar": ["(توضيح)"],
    "ro": ["(dezambiguizare)"],
    "ca": ["(desambiguació)"],
    "eu": ["(argipena)"],
    "el": ["(αποσαφήνιση)"],
    "oc": ["(omonimia)"],
}

# always checked, whatever the edition
_COMMON_TEMPLATES = ["disambig", "numberdis"]
_COMMON_TITLE_PATTERNS = ["{{numberdis}}", "(disambiguation)"]

KNOWN_LANGS = ("en", "fr", "es", "de", "ar", "ro", "ca", "eu", "el", "oc", "it", "pt",
               "nl", "sv", "da", "no", "fi", "hu", "ru", "tr", "pl", "ja", "zh")


@dataclass(frozen=True)
class EditionConfig:
    """Per-edition heuristics for discarding redirects and disambiguation pages."""

    lang: str
    redirect_markers: tuple[str, ...] = ()
    disambig_templates: tuple[str, ...] = ()
    disambig_title_patterns: tuple[str, ...] = ()
    interwiki_langs: tuple[str, ...] = KNOWN_LANGS

    @classmethod
    def for_language(cls, lang: str) -> "EditionConfig":
        return cls(
            lang=lang,
            redirect_markers=tuple(dict.fromkeys(_REDIRECT_MARKERS.get(lang, []) + ["#redirect"])),
            disambig_templates=tuple(dict.fromkeys(_DISAMBIG_TEMPLATES.get(lang, []) + _COMMON_TEMPLATES)),
            disambig_title_patterns=tuple(dict.fromkeys(_DISAMBIG_TITLES.get(lang, []) + _COMMON_TITLE_PATTERNS)),
        )

    def is_redirect_text(self, text: str) -> bool:
        head = text.lstrip()[:64].lower()
        return any(head.startswith(m) for m in self.redirect_markers)

    def is_disambiguation(self, title: str, text: str) -> bool:
        lowered = title.lower()
        if any(p.lower() in lowered for p in self.disambig_title_patterns):
            return True
        return self._template_re.search(text) is not None

    @property
    def _template_re(self) -> re.Pattern:
        return _template_regex(self.disambig_templates)


_template_cache: dict[tuple[str, ...], re.Pattern] = {}


def _template_regex(names: tuple[str, ...]) -> re.Pattern:
    if names not in _template_cache:
        alts = "|".join(re.escape(n) for n in names)
        _template_cache[names] = re.compile(r"\{\{\s*(?:" + alts + r")\s*(?:\||\}\})", re.I)
    return _template_cache[names]


# --------------------------------------------------------------------------
# Input helpers

def _open_binary(path: Path):
    with open(path, "rb") as fh:
        magic = fh.read(3)
    if magic.startswith(b"BZh"):
        return bz2.open(path, "rb")
    if magic.startswith(b"\x1f\x8b"):
        return gzip.open(path, "rb")
    return open(path, "rb")


def _file_sha256(paths: Iterable[Path]) -> str:
    digest = hashlib.sha256()
    for path in paths:
        with open(path, "rb") as fh:
            for chunk in iter(lambda: fh.read(1 << 20), b""):
                digest.update(chunk)
    return digest.hexdigest()


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _byte_offset(path: Path, line: int, column: int) -> int:
    offset = 0
    with _open_binary(path) as fh:
        for i, raw in enumerate(fh, start=1):
            if i == line:
                return offset + column
            offset += len(raw)
    return offset


@dataclass
class _RawPage:
    page_id: int
    title: str
    ns: int | None
    redirect: bool
    text: str


def _iter_pages(path: Path, namespaces: dict[int, str]) -> Iterator[_RawPage]:
    parser = ET.XMLPullParser(events=("end",))
    page: dict = {}
    in_revision = False
    with _open_binary(path) as fh:
        try:
            for chunk in iter(lambda: fh.read(1 << 20), b""):
                parser.feed(chunk)
                for _, elem in parser.read_events():
                    tag = _local(elem.tag)
                    if tag == "namespace":
                        key = elem.get("key")
                        if key is not None:
                            namespaces[int(key)] = (elem.text or "").strip()
                    elif tag == "title" and "title" not in page:
                        page["title"] = elem.text or ""
                    elif tag == "ns" and "ns" not in page:
                        page["ns"] = int((elem.text or "0").strip())
                    elif tag == "id" and "id" not in page:
                        # the first <id> inside <page> is the page id
                        page["id"] = int((elem.text or "0").strip())
                    elif tag == "redirect":
                        page["redirect"] = True
                    elif tag == "text":
                        page["text"] = elem.text or ""
                    elif tag == "revision":
                        elem.clear()
                    elif tag == "page":
                        if "id" in page and "title" in page:
                            yield _RawPage(page["id"], page["title"], page.get("ns"),
                                           page.get("redirect", False), page.get("text", ""))
                        page = {}
                        elem.clear()
                    elif tag == "siteinfo":
                        page = {}
                    elif tag == "contributor":
                        # contributors carry their own <id>; skip them
                        pass
            parser.close()
            for _ in parser.read_events():
                pass
        except ET.ParseError as exc:
            line, column = exc.position
            raise DumpParseError(f"malformed XML: {exc}", _byte_offset(path, line, column), str(path)) from None


def iter_sql_tuples(path: str | Path, table: str) -> Iterator[tuple]:
    """Yield value tuples of ``INSERT INTO `table` VALUES (...),(...);`` statements.

    Handles quoted strings with backslash escapes, NULL and numbers. Other
    statements in the file are skipped.
    """
    path = Path(path)
    with _open_binary(path) as fh:
        data = fh.read().decode("utf-8", errors="replace")
    marker = re.compile(r"INSERT INTO `?" + re.escape(table) + r"`? VALUES\s*", re.I)
    escapes = {"0": "\0", "n": "\n", "r": "\r", "t": "\t", "Z": "\x1a"}
    for m in marker.finditer(data):
        i = m.end()
        n = len(data)
        while i < n:
            while i < n and data[i] in " \n\r\t,":
                i += 1
            if i >= n or data[i] == ";":
                break
            if data[i] != "(":
                raise DumpParseError(f"unexpected {data[i]!r} in {table} values", i, str(path))
            i += 1
            row: list = []
            while True:
                while data[i] in " \n\r\t":
                    i += 1
                ch = data[i]
                if ch == "'":
                    i += 1
                    buf = []
                    while True:
                        c = data[i]
                        if c == "\\":
                            nxt = data[i + 1]
                            buf.append(escapes.get(nxt, nxt))
                            i += 2
                        elif c == "'":
                            if i + 1 < n and data[i + 1] == "'":
                                buf.append("'")
                                i += 2
                            else:
                                i += 1
                                break
                        else:
                            buf.append(c)
                            i += 1
                    row.append("".join(buf))
                else:
                    j = i
                    while data[j] not in ",)":
                        j += 1
                    token = data[i:j].strip()
                    i = j
                    if token.upper() == "NULL":
                        row.append(None)
                    else:
                        try:
                            row.append(int(token))
                        except ValueError:
                            try:
                                row.append(float(token))
                            except ValueError:
                                raise DumpParseError(f"bad SQL literal {token!r}", j, str(path)) from None
                while data[i] in " \n\r\t":
                    i += 1
                if data[i] == ",":
                    i += 1
                    continue
                if data[i] == ")":
                    i += 1
                    break
                raise DumpParseError(f"unexpected {data[i]!r} in {table} row", i, str(path))
            yield tuple(row)


# --------------------------------------------------------------------------
# parse_dump

def parse_dump(dump_path: str | Path, lang: str, categorylinks_sql: str | Path | None = None,
               langlinks_sql: str | Path | None = None,
               edition: EditionConfig | None = None) -> CorpusStore:
    """Build a :class:`CorpusStore` from a pages-articles XML dump.

    Only main-namespace pages survive; redirects and disambiguation pages are
    dropped using the dump's redirect flag when present and the edition's
    title and body patterns otherwise. Category membership and subcategory
    edges come from ``categorylinks_sql`` when given, else from the category
    tags in the wikitext. Inter-language links likewise come from
    ``langlinks_sql`` or from inline ``[[xx:Title]]`` links.
    """
    dump_path = Path(dump_path)
    edition = edition or EditionConfig.for_language(lang)
    namespaces: dict[int, str] = {}

    article_pages: list[_RawPage] = []
    category_pages: list[_RawPage] = []
    dropped = {"redirect": 0, "disambiguation": 0, "other_namespace": 0}
    layout_checked = False
    cat_prefix = ""
    max_page_id = 0
    for page in _iter_pages(dump_path, namespaces):
        max_page_id = max(max_page_id, page.page_id)
        if not layout_checked:
            if 14 not in namespaces or not namespaces[14]:
                raise ConfigurationError(
                    f"{dump_path}: siteinfo does not declare the Category namespace (key 14)")
            cat_prefix = namespaces[14]
            layout_checked = True
        ns = page.ns
        if ns is None:
            ns = 14 if page.title.startswith(cat_prefix + ":") else 0
            for key, name in namespaces.items():
                if key not in (0, 14) and name and page.title.startswith(name + ":"):
                    ns = key
        if ns == 14:
            category_pages.append(page)
            continue
        if ns != 0:
            dropped["other_namespace"] += 1
            continue
        if page.redirect or edition.is_redirect_text(page.text):
            dropped["redirect"] += 1
            continue
        if edition.is_disambiguation(page.title, page.text):
            dropped["disambiguation"] += 1
            continue
        article_pages.append(page)
    if not layout_checked and namespaces and 14 not in namespaces:
        raise ConfigurationError(f"{dump_path}: siteinfo does not declare the Category namespace (key 14)")
    log.info("%s: %d articles kept, dropped %s", dump_path, len(article_pages), dropped)

    cat_names = tuple(dict.fromkeys([namespaces.get(14, "Category"), "Category"]))

    def strip_cat_prefix(title: str) -> str:
        for name in cat_names:
            if title.startswith(name + ":"):
                return normalise_title(title[len(name) + 1:])
        return normalise_title(title)

    # category ids: page ids for categories with a page, synthetic ids otherwise
    cat_ids: dict[str, int] = {}
    for page in sorted(category_pages, key=lambda p: p.page_id):
        cat_ids.setdefault(strip_cat_prefix(page.title), page.page_id)

    parents_of: dict[str, list[str]] = {}
    members_of: dict[int, list[str]] = {}
    if categorylinks_sql is None:
        for page in category_pages:
            parents_of[strip_cat_prefix(page.title)] = category_links(page.text, cat_names)
        for page in article_pages:
            members_of[page.page_id] = category_links(page.text, cat_names)
    else:
        cat_title_by_page = {p.page_id: strip_cat_prefix(p.title) for p in category_pages}
        article_ids = {p.page_id for p in article_pages}
        for row in iter_sql_tuples(categorylinks_sql, "categorylinks"):
            cl_from, cl_to = int(row[0]), normalise_title(str(row[1]))
            cl_type = str(row[-1]) if len(row) >= 7 else None
            if cl_from in cat_title_by_page and cl_type in (None, "subcat"):
                parents_of.setdefault(cat_title_by_page[cl_from], []).append(cl_to)
            elif cl_from in article_ids and cl_type in (None, "page"):
                members_of.setdefault(cl_from, []).append(cl_to)

    referenced = set()
    for titles in parents_of.values():
        referenced.update(titles)
    for titles in members_of.values():
        referenced.update(titles)
    # synthetic ids come after every page id of the dump, whatever its namespace
    next_id = max_page_id + 1
    for title in sorted(referenced - cat_ids.keys()):
        cat_ids[title] = next_id
        next_id += 1

    children: dict[int, set[int]] = {cid: set() for cid in cat_ids.values()}
    members: dict[int, set[int]] = {cid: set() for cid in cat_ids.values()}
    for child_title, parent_titles in parents_of.items():
        child = cat_ids[child_title]
        for parent in parent_titles:
            if cat_ids[parent] != child:
                children[cat_ids[parent]].add(child)

    articles: dict[int, ArticleRecord] = {}
    known = tuple(l for l in edition.interwiki_langs if l != lang)
    for page in sorted(article_pages, key=lambda p: p.page_id):
        if page.page_id in articles:
            log.warning("duplicate page id %d (%r) ignored", page.page_id, page.title)
            continue
        cats = sorted({cat_ids[t] for t in members_of.get(page.page_id, [])})
        for cid in cats:
            members[cid].add(page.page_id)
        body = strip_markup(page.text, category_names=cat_names, known_langs=known)
        articles[page.page_id] = ArticleRecord(page.page_id, normalise_title(page.title), body,
                                               tuple(cats), lang)

    categories = {
        cid: CategoryNode(cid, title, tuple(sorted(children[cid])), tuple(sorted(members[cid])))
        for title, cid in sorted(cat_ids.items(), key=lambda kv: kv[1])
    }

    if langlinks_sql is not None:
        rows = ((int(r[0]), str(r[1]), normalise_title(str(r[2])))
                for r in iter_sql_tuples(langlinks_sql, "langlinks"))
    else:
        rows = ((p.page_id, ll, title) for p in sorted(article_pages, key=lambda p: p.page_id)
                for ll, title in interlanguage_links(p.text, known))
    langlinks = LangLinkTable.from_pairs(
        (src, ll, title) for src, ll, title in rows if src in articles and ll != lang and title)

    extra = [Path(p) for p in (categorylinks_sql, langlinks_sql) if p is not None]
    return CorpusStore(lang, articles, categories, langlinks, _file_sha256([dump_path, *extra]))


# --------------------------------------------------------------------------
# persistence

def _dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


def _serialise(store: CorpusStore) -> dict[str, bytes]:
    arts = "".join(
        _dumps({"id": a.article_id, "title": a.title, "lang": a.lang,
                "categories": list(a.categories), "body": a.body}) + "\n"
        for a in sorted(store.articles.values(), key=lambda a: a.article_id))
    cats = "".join(
        _dumps({"id": c.category_id, "title": c.title, "children": list(c.children),
                "articles": list(c.article_ids)}) + "\n"
        for c in sorted(store.categories.values(), key=lambda c: c.category_id))
    links = "".join(f"{src}\t{lang}\t{title}\n"
                    for (src, lang), title in sorted(store.langlinks.entries.items()))
    return {"articles.jsonl": arts.encode("utf-8"), "categories.jsonl": cats.encode("utf-8"),
            "langlinks.tsv": links.encode("utf-8")}


def persist_store(store: CorpusStore, directory: str | Path) -> None:
    """Write ``store`` under ``directory`` (created if needed); output is byte-stable."""
    directory = Path(directory)
    try:
        directory.mkdir(parents=True, exist_ok=True)
        blobs = _serialise(store)
        for name, data in blobs.items():
            (directory / name).write_bytes(data)
        meta = {
            "edition": store.edition,
            "dump_fingerprint": store.dump_fingerprint,
            "counts": store.summary(),
            "sha256": {name: hashlib.sha256(data).hexdigest() for name, data in blobs.items()},
        }
        (directory / "meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
                                             encoding="utf-8")
    except OSError as exc:
        raise StoreIOError(f"cannot write store ({exc.strerror})", getattr(exc, "filename", directory)) from exc


def _read_jsonl(path: Path, required: tuple[str, ...]) -> list[dict]:
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                raise StoreFormatError(f"invalid JSON ({exc.msg})", path, lineno) from None
            if not isinstance(row, dict) or any(k not in row for k in required):
                raise StoreFormatError(f"record missing one of {required}", path, lineno)
            rows.append(row)
    return rows


def load_store(directory: str | Path) -> CorpusStore:
    """Read a store written by :func:`persist_store` and verify its checksums."""
    directory = Path(directory)
    try:
        meta = json.loads((directory / "meta.json").read_text(encoding="utf-8"))
    except OSError as exc:
        raise StoreIOError("cannot read store metadata", directory / "meta.json") from exc
    except json.JSONDecodeError as exc:
        raise StoreFormatError(f"invalid JSON ({exc.msg})", directory / "meta.json", exc.lineno) from None
    try:
        art_rows = _read_jsonl(directory / "articles.jsonl", ("id", "title", "lang", "categories", "body"))
        cat_rows = _read_jsonl(directory / "categories.jsonl", ("id", "title", "children", "articles"))
        link_rows = []
        with open(directory / "langlinks.tsv", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                parts = line.rstrip("\n").split("\t")
                if len(parts) != 3 or not parts[0].isdigit():
                    raise StoreFormatError("malformed langlink row", directory / "langlinks.tsv", lineno)
                link_rows.append((int(parts[0]), parts[1], parts[2]))
    except OSError as exc:
        raise StoreIOError("cannot read store file", exc.filename) from exc

    expected = meta.get("sha256", {})
    for name in STORE_FILES:
        digest = hashlib.sha256((directory / name).read_bytes()).hexdigest()
        if expected.get(name) != digest:
            raise IntegrityError(f"checksum mismatch for {name}", directory / name)

    articles = {
        r["id"]: ArticleRecord(r["id"], r["title"], r["body"], tuple(r["categories"]), r["lang"])
        for r in art_rows
    }
    categories = {
        r["id"]: CategoryNode(r["id"], r["title"], tuple(r["children"]), tuple(r["articles"]))
        for r in cat_rows
    }
    return CorpusStore(meta["edition"], articles, categories,
                       LangLinkTable({(s, l): t for s, l, t in link_rows}), meta["dump_fingerprint"])
