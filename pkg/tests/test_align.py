import pytest

from helpers import make_store
from wikitailor.align import (AlignedSet, extract_parallel_titles, intersect_languages, read_aligned,
                              union_languages, write_aligned, write_titles)
from wikitailor.errors import TailorError


def stores(links_en=(), links_fr=(), links_de=(), en=(1, 2, 3), fr=(11, 12, 13), de=(21, 22)):
    mk = lambda lang, ids, links: make_store({}, bodies={i: "x" for i in ids}, lang=lang, langlinks=links,
                                             titles={i: f"{lang.capitalize()}{i}" for i in ids})
    return {"en": mk("en", en, links_en), "fr": mk("fr", fr, links_fr), "de": mk("de", de, links_de)}


def test_intersection_basic():
    s = stores(links_en=[(1, "fr", "Fr11")])
    assert intersect_languages([("en", {1}), ("fr", {11})], s).tuples == ((1, 11),)
    assert intersect_languages([("en", {1}), ("fr", set())], s).tuples == ()


def test_intersection_three_languages():
    s = stores(links_en=[(1, "fr", "Fr11"), (1, "de", "De21")], links_fr=[(11, "de", "De21")])
    got = intersect_languages([("en", {1}), ("fr", {11}), ("de", {21})], s)
    assert got.tuples == ((1, 11, 21),)


def test_one_way_link_is_symmetric():
    s = stores(links_fr=[(11, "en", "En1")])
    assert intersect_languages([("en", {1}), ("fr", {11})], s).tuples == ((1, 11),)


def test_union_rules():
    s = stores(links_en=[(1, "fr", "Fr11")])
    assert union_languages([("en", {1}), ("fr", set())], s).tuples == ((1, 11),)
    assert union_languages([("en", {2}), ("fr", set())], s).tuples == ((2, None),)
    assert union_languages([("en", {1}), ("fr", {11})], s).tuples == ((1, 11),)


def test_language_clash_keeps_lower_id():
    # two English articles both link to fr11
    s = stores(links_en=[(1, "fr", "Fr11"), (2, "fr", "Fr11")])
    got = union_languages([("en", {1, 2}), ("fr", {11})], s)
    assert (1, 11) in got.tuples and (2, None) in got.tuples


def test_titles_and_round_trip(tmp_path):
    s = stores(links_en=[(1, "fr", "Fr11")])
    aligned = union_languages([("en", {1, 2}), ("fr", set())], s)
    assert extract_parallel_titles(aligned, s) == [("En1", "Fr11"), ("En2", "")]
    write_titles(aligned, s, tmp_path / "t.tsv")
    assert (tmp_path / "t.tsv").read_text().splitlines() == ["en\tfr", "En1\tFr11", "En2\t"]
    write_aligned(aligned, tmp_path / "a.tsv")
    assert read_aligned(tmp_path / "a.tsv", ["en", "fr"], "union") == aligned
    empty = AlignedSet(("en", "fr"), (), "intersection")
    write_titles(empty, s, tmp_path / "e.tsv")
    assert (tmp_path / "e.tsv").read_text() == "en\tfr\n"


def test_needs_two_languages():
    with pytest.raises(TailorError):
        intersect_languages([("en", {1})], stores())
