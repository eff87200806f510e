import pytest

from wikitailor.errors import SystemNameError
from wikitailor.systems import parse_system_name


@pytest.mark.parametrize("name, model, k, cap, q, thr", [
    ("50-WT100", "WT", 50, "top100-of-10pct", None, None),
    ("60-WTall", "WT", 60, "top10pct", None, None),
    ("70-WT500", "WT", 70, "top500-of-10pct", None, None),
    ("100-IR10", "IR", None, None, 100, "10"),
    ("50-IR100", "IR", None, None, 50, "100"),
    ("50-IRall", "IR", None, None, 50, "all"),
])
def test_grammar(name, model, k, cap, q, thr):
    s = parse_system_name(name)
    assert (s.model, s.k, s.cap_mode, s.query_size, s.threshold) == (model, k, cap, q, thr)


@pytest.mark.parametrize("name", ["70-XX9", "0-WT100", "101-WT100", "50-WT7", "50-IR5", "WT100", ""])
def test_rejects(name):
    with pytest.raises(SystemNameError, match="expected"):
        parse_system_name(name)
