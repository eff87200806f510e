import json
import sys
from pathlib import Path

import pytest

HERE = Path(__file__).parent
sys.path.insert(0, str(HERE))

MINIDUMP = HERE / "fixtures" / "minidump"


@pytest.fixture(scope="session")
def minidump_dir() -> Path:
    return MINIDUMP


@pytest.fixture(scope="session")
def ground_truth() -> dict:
    return json.loads((MINIDUMP / "ground_truth.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def minidump_stores(tmp_path_factory):
    """Both fixture editions parsed once and persisted; returns (stores, dirs)."""
    from wikitailor.store import load_store, parse_dump, persist_store

    base = tmp_path_factory.mktemp("stores")
    en = parse_dump(MINIDUMP / "enwiki-pages-articles.xml", "en")
    fr = parse_dump(MINIDUMP / "frwiki-pages-articles.xml.bz2", "fr",
                    MINIDUMP / "frwiki-categorylinks.sql", MINIDUMP / "frwiki-langlinks.sql")
    dirs = {"en": base / "en", "fr": base / "fr"}
    persist_store(en, dirs["en"])
    persist_store(fr, dirs["fr"])
    return {"en": load_store(dirs["en"]), "fr": load_store(dirs["fr"])}, dirs


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(module.RESULTS, key=lambda l: int(l.split()[2])):
        terminalreporter.write_line(line)
