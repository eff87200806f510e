"""
Aligning two editions through langlinks
=======================================
"""

from wikitailor import PreprocessConfig, extract_system, intersect_languages, union_languages
from wikitailor.align import extract_parallel_titles
from _data import load_both

en, fr = load_both()
stores = {"en": en, "fr": fr}
wt_en, _, _ = extract_system(en, "Astronomy", "50-WT100", PreprocessConfig.for_language("en"))
wt_fr, _, _ = extract_system(fr, "Astronomie", "50-WT100", PreprocessConfig.for_language("fr"))
selections = [("en", wt_en.article_ids), ("fr", wt_fr.article_ids)]

both = intersect_languages(selections, stores)
either = union_languages(selections, stores)
print(len(both.tuples), "pairs selected in both editions")
print(len(either.tuples), "pairs selected in at least one")
for pair in extract_parallel_titles(both, stores)[:5]:
    print(pair)
