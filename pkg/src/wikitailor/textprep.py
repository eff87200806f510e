"""Multilingual preprocessing shared by vocabulary building, indexing and metrics.

The pipeline is: lowercase, split into letter runs (digits, punctuation and
underscores act as separators), drop stopwords, stem, strip diacritics, drop
short tokens. Stemming plus stripping is iterated to a fixed point so that
preprocessing the joined output returns the same tokens.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

import regex
import snowballstemmer

__all__ = [
    "PreprocessConfig",
    "STEMMERS",
    "load_stopwords",
    "preprocess",
    "strip_diacritics",
]

# Porter for English; Snowball for the rest. Occitan has no published stemmer.
STEMMERS: dict[str, str | None] = {
    "en": "porter",
    "fr": "french",
    "es": "spanish",
    "de": "german",
    "ar": "arabic",
    "ro": "romanian",
    "ca": "catalan",
    "eu": "basque",
    "el": "greek",
    "oc": None,
    "it": "italian",
    "pt": "portuguese",
    "nl": "dutch",
    "sv": "swedish",
    "da": "danish",
    "no": "norwegian",
    "fi": "finnish",
    "hu": "hungarian",
    "ru": "russian",
    "tr": "turkish",
}

_LETTERS = regex.compile(r"[^\W\d_]+")
_FIXED_POINT_ROUNDS = 8


def strip_diacritics(text: str) -> str:
    decomposed = unicodedata.normalize("NFKD", text)
    return "".join(ch for ch in decomposed if not unicodedata.combining(ch))


def load_stopwords(source: str | Path) -> frozenset[str]:
    """Read a stopword file: one token per line, ``#`` starts a comment.

    ``source`` is either a path or a language code of a bundled list. Unknown
    language codes yield an empty list. A plain ``str`` of letters only is
    always taken as a language code, never as a path.
    """
    path = Path(source)
    if isinstance(source, str) and source.isalpha():
        bundled = resources.files("wikitailor") / "data" / "stopwords" / f"{source}.txt"
        if not bundled.is_file():
            return frozenset()
        text = bundled.read_text(encoding="utf-8")
    else:
        text = path.read_text(encoding="utf-8")
    words = set()
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip().lower()
        if line:
            words.add(line)
    return frozenset(words)


@dataclass(frozen=True)
class PreprocessConfig:
    lang: str
    stopword_list: frozenset[str] = field(default_factory=frozenset)
    min_token_len: int = 4
    stemmer: str | None = None

    def __post_init__(self):
        if self.min_token_len < 1:
            raise ValueError("min_token_len must be >= 1")
        lowered = frozenset(w.lower() for w in self.stopword_list)
        if lowered != self.stopword_list:
            object.__setattr__(self, "stopword_list", lowered)

    @classmethod
    def for_language(cls, lang: str, stopwords: str | Path | None = None,
                     min_token_len: int | None = None) -> "PreprocessConfig":
        """Default configuration for an edition, with bundled stopwords."""
        if min_token_len is None:
            min_token_len = 3 if lang == "ar" else 4
        words = load_stopwords(stopwords if stopwords is not None else lang)
        return cls(lang=lang, stopword_list=words, min_token_len=min_token_len,
                   stemmer=STEMMERS.get(lang))

    @property
    def _stop_forms(self) -> frozenset[str]:
        return _stop_forms(self.stopword_list)


@lru_cache(maxsize=64)
def _stop_forms(words: frozenset[str]) -> frozenset[str]:
    return words | frozenset(strip_diacritics(w) for w in words)


@lru_cache(maxsize=None)
def _stemmer(name: str):
    return snowballstemmer.stemmer(name)


@lru_cache(maxsize=1 << 18)
def _normalise(token: str, stemmer: str | None) -> str:
    current = token
    for _ in range(_FIXED_POINT_ROUNDS):
        stemmed = _stemmer(stemmer).stemWord(current) if stemmer else current
        stemmed = strip_diacritics(stemmed).lower()
        if stemmed == current:
            break
        current = stemmed
    return current


def preprocess(text: str, cfg: PreprocessConfig) -> list[str]:
    """Turn raw text into the ordered list of index terms."""
    if not text:
        return []
    stop = cfg._stop_forms
    out = []
    for raw in _LETTERS.findall(text.lower()):
        if raw in stop:
            continue
        term = _normalise(raw, cfg.stemmer)
        if len(term) < cfg.min_token_len or term in stop:
            continue
        if not _LETTERS.fullmatch(term):
            continue
        out.append(term)
    return out
