"""Evaluation-set sampling, crowd precision, Fleiss' kappa and Pearson's r."""

from __future__ import annotations

import csv
import math
import random
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import TailorError, UndefinedMetricError

__all__ = [
    "IN_DOMAIN",
    "OTHER",
    "EvalSet",
    "Judgment",
    "build_eval_set",
    "category_matrix",
    "fleiss_kappa",
    "group_judgments",
    "pearson",
    "precision",
    "read_judgments",
    "write_eval_set",
]

IN_DOMAIN = "in-domain"
OTHER = "other"
LABELS = (IN_DOMAIN, OTHER)


@dataclass(frozen=True)
class Judgment:
    article_id: int
    annotator_id: str
    label: str

    def __post_init__(self):
        if self.label not in LABELS:
            raise ValueError(f"label must be one of {LABELS}, got {self.label!r}")


@dataclass(frozen=True)
class EvalSet:
    common: tuple[int, ...]
    only_a: tuple[int, ...]
    only_b: tuple[int, ...]

    @property
    def sizes(self) -> dict[str, int]:
        return {"common": len(self.common), "only_a": len(self.only_a), "only_b": len(self.only_b)}

    def set_a(self) -> tuple[int, ...]:
        """Articles judged for system A: its exclusive stratum plus the common one."""
        return tuple(sorted(self.only_a + self.common))

    def set_b(self) -> tuple[int, ...]:
        return tuple(sorted(self.only_b + self.common))


def build_eval_set(sel_a: Iterable[int], sel_b: Iterable[int], n_per_stratum: int = 100,
                   seed: int = 0) -> EvalSet:
    """Sample up to ``n_per_stratum`` articles uniformly from the intersection and
    from each system's exclusive articles. Strata smaller than that are taken whole."""
    if n_per_stratum < 1:
        raise ValueError("n_per_stratum must be >= 1")
    a, b = set(sel_a), set(sel_b)
    strata = (sorted(a & b), sorted(a - b), sorted(b - a))
    if not any(strata):
        raise TailorError("both selections are empty; nothing to evaluate")
    rng = random.Random(seed)
    picked = []
    for pool in strata:
        if len(pool) <= n_per_stratum:
            picked.append(tuple(pool))
        else:
            picked.append(tuple(sorted(rng.sample(pool, n_per_stratum))))
    return EvalSet(*picked)


def write_eval_set(evalset: EvalSet, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("article_id", "stratum"))
        for stratum in ("common", "only_a", "only_b"):
            for a in getattr(evalset, stratum):
                w.writerow((a, stratum))


def read_judgments(path: str | Path) -> list[Judgment]:
    """Parse ``article_id,annotator_id,label`` rows (header required)."""
    out = []
    seen = set()
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.DictReader(fh), start=2):
            try:
                j = Judgment(int(row["article_id"]), row["annotator_id"].strip(), row["label"].strip())
            except (KeyError, ValueError, AttributeError) as exc:
                raise TailorError(f"{path}: bad judgment at line {lineno}: {exc}") from None
            key = (j.article_id, j.annotator_id)
            if key in seen:
                raise TailorError(f"{path}: second label for article {j.article_id} by {j.annotator_id}")
            seen.add(key)
            out.append(j)
    return out


def group_judgments(judgments: Iterable[Judgment]) -> dict[int, list[str]]:
    grouped: dict[int, list[str]] = defaultdict(list)
    for j in sorted(judgments, key=lambda j: (j.article_id, j.annotator_id)):
        grouped[j.article_id].append(j.label)
    return dict(grouped)


def precision(labels: Mapping[int, Sequence[str]], mode: str = "soft", raters: int = 3) -> float:
    """Share of articles judged in-domain unanimously (``hard``) or by a
    majority of two out of three annotators (``soft``)."""
    if mode not in ("hard", "soft"):
        raise ValueError("mode must be 'hard' or 'soft'")
    if not labels:
        raise UndefinedMetricError("no judged articles")
    need = raters if mode == "hard" else raters // 2 + 1
    hits = 0
    for article, labs in labels.items():
        if len(labs) != raters:
            raise TailorError(f"article {article} has {len(labs)} judgments, expected {raters}")
        if sum(1 for l in labs if l == IN_DOMAIN) >= need:
            hits += 1
    return hits / len(labels)


def category_matrix(labels: Mapping[int, Sequence[str]], categories: Sequence[str] = LABELS) -> np.ndarray:
    """Items x categories matrix of rating counts, items in ascending id order."""
    index = {c: i for i, c in enumerate(categories)}
    mat = np.zeros((len(labels), len(categories)), dtype=np.int64)
    for r, article in enumerate(sorted(labels)):
        for lab in labels[article]:
            mat[r, index[lab]] += 1
    return mat


def fleiss_kappa(counts) -> float:
    """Fleiss' kappa of an items x categories matrix of rating counts.

    Every item must have the same number of ratings (at least two). Raises
    :class:`UndefinedMetricError` when a single category receives every rating,
    since chance agreement is then 1.
    """
    counts = np.asarray(counts, dtype=np.int64)
    if counts.ndim != 2 or counts.shape[0] == 0:
        raise ValueError("expected a non-empty items x categories matrix")
    if (counts < 0).any():
        raise ValueError("counts must be non-negative")
    per_item = counts.sum(axis=1)
    n = int(per_item[0])
    if n < 2 or (per_item != n).any():
        raise ValueError("every item needs the same number (>= 2) of ratings")
    items = counts.shape[0]
    p_j = counts.sum(axis=0) / (items * n)
    P_i = ((counts * counts).sum(axis=1) - n) / (n * (n - 1))
    P_bar = P_i.mean()
    P_e = float((p_j * p_j).sum())
    if math.isclose(P_e, 1.0, rel_tol=0, abs_tol=1e-15):
        raise UndefinedMetricError("degenerate ratings: a single category was used throughout")
    return float((P_bar - P_e) / (1 - P_e))


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Sample Pearson correlation coefficient."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be 1-d and equally long")
    if len(x) < 3:
        raise UndefinedMetricError("Pearson correlation needs at least 3 points")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0 or syy == 0:
        raise UndefinedMetricError("zero variance")
    return float(np.clip((dx @ dy) / math.sqrt(sxx * syy), -1.0, 1.0))
