"""System names of the form ``k-WTn`` and ``q-IRt``.

``50-WT100``: graph model, levels need 50% positive titles, vocabulary capped
at the top 100 terms within the top 10%. ``WTall`` keeps the whole 10%.
``100-IR10``: retrieval model, 100-term query, keep scores above max/10;
``IR100`` keeps scores above max/100 and ``IRall`` keeps everything.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import SystemNameError

__all__ = ["SystemSpec", "parse_system_name", "GRAMMAR"]

GRAMMAR = "k-WT{100|500|all} with k in (0,100], or q-IR{10|100|all} with q >= 1 (e.g. 50-WT100, 100-IR10)"

_PATTERN = re.compile(r"^(\d+)-(WT|IR)(\d+|all)$")
_WT_CAPS = {"100": "top100-of-10pct", "500": "top500-of-10pct", "all": "top10pct"}
_IR_THRESHOLDS = {"10": "10", "100": "100", "all": "all"}


@dataclass(frozen=True)
class SystemSpec:
    name: str
    model: str                      # "WT" or "IR"
    k: int | None = None            # WT: percentage of positive titles
    cap_mode: str | None = None     # WT: vocabulary cap
    query_size: int | None = None   # IR: number of query terms
    threshold: str | None = None    # IR: "all", "100" (max/100) or "10" (max/10)


def parse_system_name(name: str) -> SystemSpec:
    m = _PATTERN.match(name.strip())
    if not m:
        raise SystemNameError(f"unrecognised system name {name!r}; expected {GRAMMAR}")
    number, model, suffix = int(m.group(1)), m.group(2), m.group(3)
    if model == "WT":
        if suffix not in _WT_CAPS or not 0 < number <= 100:
            raise SystemNameError(f"unrecognised system name {name!r}; expected {GRAMMAR}")
        return SystemSpec(name, "WT", k=number, cap_mode=_WT_CAPS[suffix])
    if suffix not in _IR_THRESHOLDS or number < 1:
        raise SystemNameError(f"unrecognised system name {name!r}; expected {GRAMMAR}")
    return SystemSpec(name, "IR", query_size=number, threshold=_IR_THRESHOLDS[suffix])
