"""Domainness metrics: term density, (N)PMI, rank correlation, ESA cohesion and Dom."""

from .distribution import MetricsConfig, TermDistribution, augmented_density, density
from .dom import dom_score, minmax
from .esa import (EsaSpace, angular_dispersion, build_esa_space, d_esa, esa_vectors,
                  shared_reference_ids)
from .pmi import pair_probabilities, pair_scores, pmi_family
from .rankcorr import correlation_vectors, kendall_tau, rank_correlation, spearman_rho
from .report import DomainnessReport, compute_report, with_dom, write_report_json, write_report_table

__all__ = [
    "DomainnessReport",
    "EsaSpace",
    "MetricsConfig",
    "TermDistribution",
    "angular_dispersion",
    "augmented_density",
    "build_esa_space",
    "compute_report",
    "correlation_vectors",
    "d_esa",
    "density",
    "dom_score",
    "esa_vectors",
    "kendall_tau",
    "minmax",
    "pair_probabilities",
    "pair_scores",
    "pmi_family",
    "rank_correlation",
    "shared_reference_ids",
    "spearman_rho",
    "with_dom",
    "write_report_json",
    "write_report_table",
]
