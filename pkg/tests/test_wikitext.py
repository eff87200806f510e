from wikitailor.wikitext import category_links, interlanguage_links, normalise_title, strip_markup


def test_normalise_title():
    assert normalise_title("space_telescopes") == "Space telescopes"
    assert normalise_title("  a   b ") == "A b"


def test_strip_markup_keeps_link_anchors_and_drops_templates():
    text = ("{{Infobox star | name = {{nested|x}} }}\n'''Vega''' is a [[star]] in [[Lyra (constellation)|Lyra]].\n"
            "[[Category:Stars]]\n[[fr:Véga]]\n[[File:Vega.png|thumb|A star]]")
    out = strip_markup(text, known_langs=("fr",))
    assert "Infobox" not in out and "nested" not in out
    assert "Vega is a star in Lyra." in out
    assert "Stars" not in out and "Véga" not in out and "png" not in out


def test_link_with_colon_in_title_is_kept():
    out = strip_markup("See [[Star Wars: Episode IV]].", known_langs=("fr",))
    assert "Star Wars: Episode IV" in out


def test_unbalanced_template_left_alone():
    assert "{{broken" in strip_markup("{{broken text", known_langs=())


def test_category_and_interlanguage_links():
    text = "[[Category:Stars|Vega]] [[category:variable_stars]] [[fr:Véga]] [[de:Wega]] [[xx:Nope]]"
    assert category_links(text) == ["Stars", "Variable stars"]
    assert interlanguage_links(text, ("fr", "de")) == [("fr", "Véga"), ("de", "Wega")]
