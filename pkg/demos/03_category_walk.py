"""
Walking the category graph (WT)
===============================

Each breadth-first level is scored by the share of category titles holding a
vocabulary term; the walk keeps levels while that share stays at k percent.
"""

from wikitailor import PreprocessConfig, extract_system
from _data import load_both

en, _ = load_both()
cfg = PreprocessConfig.for_language("en")

wt, vocab, seeds = extract_system(en, "Astronomy", "50-WT100", cfg)
for level in wt.levels:
    print(level.depth, level.categories_positive, "/", level.categories_total,
          "kept" if level.depth <= wt.stop_depth else "")
print("stop depth", wt.stop_depth, "->", len(wt.article_ids), "articles")

# a stricter k never goes deeper
for k in (30, 50, 60, 90):
    ex, _, _ = extract_system(en, "Astronomy", f"{k}-WT100", cfg)
    print(k, ex.stop_depth, len(ex.article_ids))
