"""Wikitext markup removal and link extraction."""

from __future__ import annotations

import html
import re

__all__ = ["strip_markup", "category_links", "interlanguage_links", "normalise_title"]

_COMMENT = re.compile(r"<!--.*?-->", re.S)
_REF_BLOCK = re.compile(r"<ref\b[^>/]*>.*?</ref\s*>", re.S | re.I)
_REF_EMPTY = re.compile(r"<ref\b[^>]*/>", re.I)
_DROP_ELEMENTS = re.compile(
    r"<(math|gallery|timeline|nowiki|pre|source|syntaxhighlight|score|code)\b[^>]*>.*?</\1\s*>",
    re.S | re.I,
)
_TAG = re.compile(r"</?[A-Za-z][^>]*>")
_EXTERNAL_LINK = re.compile(r"\[(?:https?:|ftp:|//)[^\s\]]*\s*([^\]]*)\]")
_BARE_URL = re.compile(r"https?://\S+")
_HEADING = re.compile(r"^\s*(=+)\s*(.*?)\s*\1\s*$", re.M)
_QUOTES = re.compile(r"'{2,}")
_LIST_MARKS = re.compile(r"^[*#:;]+\s*", re.M)
_HRULE = re.compile(r"^-{4,}", re.M)
_MAGIC = re.compile(r"__[A-Z]+__")
_BLANKS = re.compile(r"[ \t]+")
_NEWLINES = re.compile(r"\n{3,}")

_LINK_PREFIX = re.compile(r"^\s*:?\s*([^:|\]]+?)\s*:(.*)$", re.S)


def normalise_title(title: str) -> str:
    """Canonical page title: underscores to spaces, collapsed blanks, first letter upper."""
    title = html.unescape(title).replace("_", " ")
    title = " ".join(title.split())
    if title:
        title = title[0].upper() + title[1:]
    return title


def _remove_nested(text: str, open_tok: str, close_tok: str, keep=None) -> str:
    """Remove balanced ``open_tok ... close_tok`` spans, innermost first.

    ``keep`` maps the inner text of a span to its replacement; None deletes it.
    Unbalanced openers are left in place.
    """
    if open_tok not in text:
        return text
    pieces: list[list[str]] = [[]]
    i = 0
    n = len(text)
    lo, lc = len(open_tok), len(close_tok)
    while i < n:
        j_open = text.find(open_tok, i)
        j_close = text.find(close_tok, i) if len(pieces) > 1 else -1
        candidates = [j for j in (j_open, j_close) if j >= 0]
        if not candidates:
            pieces[-1].append(text[i:])
            break
        j = min(candidates)
        pieces[-1].append(text[i:j])
        if j == j_open:
            pieces.append([])
            i = j + lo
        else:
            inner = "".join(pieces.pop())
            replacement = keep(inner) if keep is not None else ""
            pieces[-1].append(replacement or "")
            i = j + lc
    # unbalanced openers: restore their text
    while len(pieces) > 1:
        inner = "".join(pieces.pop())
        pieces[-1].append(open_tok + inner)
    return "".join(pieces[0])


def _remove_tables(text: str) -> str:
    out = []
    depth = 0
    for line in text.split("\n"):
        stripped = line.lstrip()
        if stripped.startswith("{|"):
            depth += 1
            continue
        if depth and stripped.startswith("|}"):
            depth -= 1
            continue
        if depth == 0:
            out.append(line)
    return "\n".join(out)


def _wikilink_handler(drop_namespaces: set[str], known_langs: set[str]):
    def handle(inner: str) -> str:
        target, _, label = inner.partition("|")
        m = _LINK_PREFIX.match(target)
        if m and not target.lstrip().startswith(":"):
            prefix = m.group(1).strip().lower()
            if prefix in drop_namespaces or prefix in known_langs:
                return ""
        if label:
            # [[File:x|thumb|caption]]-style leftovers keep only the last field
            return label.rsplit("|", 1)[-1]
        return target.lstrip(": ").split("#", 1)[0]

    return handle


_DEFAULT_DROP_NS = {
    "category", "file", "image", "media", "template", "wikipedia", "help",
    "portal", "special", "user", "talk", "wp", "wikt", "wiktionary",
}


def strip_markup(wikitext: str, category_names=("category",), file_names=("file", "image"),
                 known_langs=()) -> str:
    """Plain running text of an article: templates, tables, references and
    markup removed, link anchors kept."""
    text = _COMMENT.sub("", wikitext)
    text = _REF_BLOCK.sub("", text)
    text = _REF_EMPTY.sub("", text)
    text = _DROP_ELEMENTS.sub("", text)
    text = _remove_nested(text, "{{", "}}")
    text = _remove_tables(text)
    drop = set(_DEFAULT_DROP_NS) | {c.lower() for c in category_names} | {f.lower() for f in file_names}
    text = _remove_nested(text, "[[", "]]", keep=_wikilink_handler(drop, {l.lower() for l in known_langs}))
    text = _EXTERNAL_LINK.sub(lambda m: m.group(1), text)
    text = _BARE_URL.sub("", text)
    text = _HEADING.sub(lambda m: m.group(2), text)
    text = _QUOTES.sub("", text)
    text = _TAG.sub("", text)
    text = _MAGIC.sub("", text)
    text = html.unescape(text)
    text = _LIST_MARKS.sub("", text)
    text = _HRULE.sub("", text)
    text = _BLANKS.sub(" ", text)
    lines = [line.strip() for line in text.split("\n")]
    return _NEWLINES.sub("\n\n", "\n".join(lines)).strip()


def _link_regex(prefixes) -> re.Pattern:
    alts = "|".join(sorted((re.escape(p) for p in prefixes), key=len, reverse=True))
    return re.compile(r"\[\[\s*(" + alts + r")\s*:\s*([^\]|\n]+?)\s*(?:\|[^\]]*)?\]\]", re.I)


def category_links(wikitext: str, category_names=("category",)) -> list[str]:
    """Normalised titles of the categories tagged in ``wikitext``, in order, unique."""
    seen = {}
    for m in _link_regex(category_names).finditer(_COMMENT.sub("", wikitext)):
        title = normalise_title(m.group(2).split("#", 1)[0])
        if title:
            seen.setdefault(title, None)
    return list(seen)


def interlanguage_links(wikitext: str, known_langs) -> list[tuple[str, str]]:
    """``(lang, title)`` pairs for inline interlanguage links such as ``[[fr:Espace]]``."""
    if not known_langs:
        return []
    out = []
    for m in _link_regex(known_langs).finditer(_COMMENT.sub("", wikitext)):
        title = normalise_title(m.group(2))
        if title:
            out.append((m.group(1).lower(), title))
    return out
