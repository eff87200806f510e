"""Combined domainness score over a comparison set of collections."""

from __future__ import annotations

import logging
from typing import Mapping

from ..errors import UndefinedMetricError

log = logging.getLogger(__name__)

__all__ = ["dom_score", "minmax"]


def minmax(values: Mapping[str, float], descending: bool = False) -> dict[str, float]:
    """Rescale to [0, 1] across the set; lower raw values score higher when
    ``descending``. A degenerate range maps every entry to 0.5."""
    lo, hi = min(values.values()), max(values.values())
    if hi == lo:
        log.warning("degenerate range (all values %r); component set to 0.5", lo)
        return {k: 0.5 for k in values}
    span = hi - lo
    if descending:
        return {k: (hi - v) / span for k, v in values.items()}
    return {k: (v - lo) / span for k, v in values.items()}


def dom_score(pmi_col: Mapping[str, float], d_esa: Mapping[str, float]) -> dict[str, float]:
    """Dom = (normalised PMI_col + normalised d_ESA) / 2 for each collection.

    Both mappings are keyed by collection name and must cover the same
    collections; at least two are needed for the normalisation. Smaller ESA
    distances are better, so that component is normalised in reverse.
    """
    if set(pmi_col) != set(d_esa):
        raise ValueError("PMI_col and d_ESA must cover the same collections")
    if len(pmi_col) < 2:
        raise UndefinedMetricError("Dom needs at least two collections to normalise over")
    p = minmax(pmi_col)
    d = minmax(d_esa, descending=True)
    return {k: (p[k] + d[k]) / 2 for k in sorted(pmi_col)}
