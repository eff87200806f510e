import pytest
from hypothesis import given, settings, strategies as st

from wikitailor.textprep import PreprocessConfig, load_stopwords, preprocess, strip_diacritics

EN = PreprocessConfig.for_language("en")
FR = PreprocessConfig.for_language("fr")


def test_english_pipeline_drops_short_numeric_and_stopwords():
    assert preprocess("The 3 big satellites orbit", EN) == ["satellit", "orbit"]


def test_empty_text():
    assert preprocess("", EN) == []


def test_french_all_filtered():
    assert preprocess("Ééé!!! 123", FR) == []


def test_diacritics_removed_after_stemming():
    assert preprocess("Télescopes spatiaux", FR) == ["telescop", "spatial"]
    assert strip_diacritics("Ångström") == "Angstrom"


def test_arabic_keeps_three_letter_tokens():
    cfg = PreprocessConfig.for_language("ar")
    assert cfg.min_token_len == 3


def test_occitan_has_no_stemmer():
    cfg = PreprocessConfig.for_language("oc")
    assert cfg.stemmer is None
    assert preprocess("Astronomia estelas", cfg) == ["astronomia", "estelas"]


def test_stopwords_loaded_for_every_bundled_language():
    for lang in ("en", "fr", "es", "de", "ar", "ro", "ca", "eu", "el", "oc"):
        assert len(load_stopwords(lang)) > 10, lang


def test_custom_stopword_file(tmp_path):
    path = tmp_path / "stop.txt"
    path.write_text("# comment\norbit\n", encoding="utf-8")
    cfg = PreprocessConfig.for_language("en", stopwords=path)
    assert preprocess("orbit comet", cfg) == ["comet"]


def test_invalid_min_length():
    with pytest.raises(ValueError):
        PreprocessConfig("en", min_token_len=0)


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet=st.characters(blacklist_categories=("Cs",)), max_size=80))
def test_idempotent_and_well_formed(text):
    for cfg in (EN, FR):
        once = preprocess(text, cfg)
        assert preprocess(" ".join(once), cfg) == once
        for tok in once:
            assert len(tok) >= cfg.min_token_len
            assert tok == tok.lower()
            assert not any(ch.isdigit() for ch in tok)
