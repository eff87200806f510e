"""All domainness metrics for one collection, and tables across collections."""

from __future__ import annotations

import csv
import json
import math
from collections import Counter
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Sequence

from ..errors import UndefinedMetricError
from .distribution import MetricsConfig, TermDistribution, augmented_density, density
from .dom import dom_score
from .esa import EsaSpace, d_esa
from .pmi import pmi_family
from .rankcorr import rank_correlation

__all__ = ["DomainnessReport", "compute_report", "with_dom", "write_report_json", "write_report_table"]

METRIC_COLUMNS = ("c_terms_per_n", "c_hat_terms", "pmi_art", "pmi_col", "npmi_art", "npmi_col",
                  "rho", "tau", "d_esa", "dom")


@dataclass(frozen=True)
class DomainnessReport:
    collection: str
    n_articles: int
    c_terms_per_n: float | None = None
    c_hat_terms: float | None = None
    pmi_art: float | None = None
    pmi_col: float | None = None
    npmi_art: float | None = None
    npmi_col: float | None = None
    rho: float | None = None
    tau: float | None = None
    d_esa: float | None = None
    dom: float | None = None
    excluded: dict = field(default_factory=dict)
    config: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def _try(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except UndefinedMetricError:
        return None


def compute_report(name: str, docs: Sequence[Sequence[str]], root_docs: Sequence[Sequence[str]],
                   vocab_terms: Sequence[str], cfg: MetricsConfig = MetricsConfig(),
                   space: EsaSpace | None = None) -> DomainnessReport:
    """Metric values for one collection.

    ``docs`` and ``root_docs`` are preprocessed token lists of the collection
    and of the domain's root (seed) articles; ``vocab_terms`` is the ranked
    vocabulary, of which the first ``cfg.vocab_size`` terms are used. Values
    that are undefined on this input are None.
    """
    terms = list(vocab_terms)[:cfg.vocab_size]
    excluded: dict[str, int] = {}
    values: dict[str, float | None] = {}
    if docs:
        dist = TermDistribution.from_tokens(docs, terms)
        values["c_terms_per_n"] = density(dist)
        aug = _try(augmented_density, dist, cfg)
        if aug is not None:
            values["c_hat_terms"], excluded["c_hat_terms"] = aug
        excluded["pmi_col"] = int((dist.totals == 0).sum())
        for variant in ("art", "col"):
            values[f"pmi_{variant}"] = _try(pmi_family, dist, cfg, variant, False)
            values[f"npmi_{variant}"] = _try(pmi_family, dist, cfg, variant, True)
        coll_counts = Counter()
        for d in docs:
            coll_counts.update(d)
        root_counts = Counter()
        for d in root_docs:
            root_counts.update(d)
        values["rho"] = rank_correlation(coll_counts, root_counts, "spearman")
        values["tau"] = rank_correlation(coll_counts, root_counts, "kendall")
        if space is not None:
            res = _try(d_esa, docs, space)
            if res is not None:
                values["d_esa"], excluded["d_esa"] = res
    config = {"epsilon": cfg.epsilon, "K": cfg.K, "aggregation": cfg.aggregation,
              "vocab_size": len(terms), "esa_reference_size": space.size if space is not None else 0}
    return DomainnessReport(name, len(docs), excluded=excluded, config=config, **values)


def with_dom(reports: Sequence[DomainnessReport]) -> list[DomainnessReport]:
    """Fill ``dom`` for every report having both PMI_col and d_ESA, normalising
    over exactly those reports."""
    usable = {r.collection: r for r in reports if r.pmi_col is not None and r.d_esa is not None}
    if len(usable) < 2:
        return list(reports)
    dom = dom_score({k: r.pmi_col for k, r in usable.items()}, {k: r.d_esa for k, r in usable.items()})
    return [replace(r, dom=dom[r.collection]) if r.collection in dom else r for r in reports]


def _clean(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    return obj


def write_report_json(report: DomainnessReport, path: str | Path) -> None:
    Path(path).write_text(json.dumps(_clean(report.to_dict()), indent=2, sort_keys=True) + "\n",
                          encoding="utf-8")


def write_report_table(reports: Sequence[DomainnessReport], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("collection", "n_articles") + METRIC_COLUMNS)
        for r in sorted(reports, key=lambda r: r.collection):
            row = [r.collection, r.n_articles]
            for col in METRIC_COLUMNS:
                v = getattr(r, col)
                row.append("" if v is None else repr(v))
            writer.writerow(row)
