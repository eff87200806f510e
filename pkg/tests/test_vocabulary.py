import pytest

from helpers import make_store
from wikitailor.errors import CategoryNotFoundError, EmptySeedError, EmptyVocabularyError
from wikitailor.textprep import PreprocessConfig
from wikitailor.vocabulary import (Vocabulary, build_vocabulary, edit_distance, find_root_category, rank_terms,
                                   select_seed_articles, top_tenth)

EN = PreprocessConfig.for_language("en")


def sport_store():
    return make_store({"Sport": ["Football", "Tennis"]},
                      members={"Sport": [1, 2, 3, 4], "Football": list(range(10, 30))})


def test_find_root_case_insensitive():
    store = sport_store()
    assert find_root_category(store, "sport").title == "Sport"


def test_find_root_suggestions():
    with pytest.raises(CategoryNotFoundError) as info:
        find_root_category(sport_store(), "Sprots")
    assert info.value.suggestions[0] == "Sport"
    with pytest.raises(CategoryNotFoundError):
        find_root_category(sport_store(), "Mountaineering")


def test_edit_distance():
    assert edit_distance("sprots", "sport") == 3
    assert edit_distance("", "abc") == 3


def test_seed_selection_rules():
    store = make_store({"Root": []}, members={"Root": list(range(1, 13))})
    assert select_seed_articles(store, find_root_category(store, "Root")) == set(range(1, 13))
    store = sport_store()
    assert select_seed_articles(store, find_root_category(store, "Sport")) == set(range(1, 5)) | set(range(10, 30))
    empty = make_store({"Root": ["Child"]})
    with pytest.raises(EmptySeedError):
        select_seed_articles(empty, find_root_category(empty, "Root"))


def test_hand_example_top_tenth_ceiling():
    store = make_store({"Astro": []}, members={"Astro": [1]}, bodies={1: "orbit orbit star star star comet"})
    vocab = build_vocabulary(store, {1}, PreprocessConfig("en", min_token_len=1))
    assert vocab.terms == (("star", 3),)
    assert rank_terms({"orbit": 2, "star": 3, "comet": 1}) == [("star", 3), ("orbit", 2), ("comet", 1)]


def test_top_tenth_integer_rounding():
    assert [top_tenth(n) for n in (1, 3, 10, 11, 40, 100, 101)] == [1, 1, 1, 2, 4, 10, 11]


def test_cap_not_binding_and_ties():
    words = [f"term{chr(97 + i // 26)}{chr(97 + i % 26)}" for i in range(40)]
    body = " ".join(w for i, w in enumerate(words) for _ in range(50 - i))
    store = make_store({"R": []}, members={"R": [1]}, bodies={1: body})
    cfg = PreprocessConfig("en", min_token_len=1)
    assert len(build_vocabulary(store, {1}, cfg, "top100-of-10pct")) == 4
    assert len(build_vocabulary(store, {1}, cfg, "topK", k=2)) == 2
    tied = make_store({"R": []}, members={"R": [1]}, bodies={1: "zeta " * 5 + "alpha " * 5})
    assert rank_terms({"zeta": 5, "alpha": 5}) == [("alpha", 5), ("zeta", 5)]
    assert build_vocabulary(tied, {1}, cfg).words == ["alpha"]


def test_empty_vocabulary():
    store = make_store({"R": []}, members={"R": [1]}, bodies={1: "the of 123"})
    with pytest.raises(EmptyVocabularyError):
        build_vocabulary(store, {1}, EN)


def test_tsv_round_trip(tmp_path):
    v = Vocabulary("Astronomy", "en", (("star", 3), ("orbit", 2)), "top10pct")
    v.to_tsv(tmp_path / "v.tsv")
    assert Vocabulary.from_tsv(tmp_path / "v.tsv", "Astronomy", "en") == v
