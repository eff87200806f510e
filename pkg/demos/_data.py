# where the demos find the bundled mini-dump
from pathlib import Path

MINIDUMP = Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "minidump"


def load_both():
    from wikitailor import parse_dump
    en = parse_dump(MINIDUMP / "enwiki-pages-articles.xml", "en")
    fr = parse_dump(MINIDUMP / "frwiki-pages-articles.xml.bz2", "fr",
                    MINIDUMP / "frwiki-categorylinks.sql", MINIDUMP / "frwiki-langlinks.sql")
    return en, fr
