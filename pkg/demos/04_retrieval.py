"""
Querying with the vocabulary (IR)
=================================
"""

from wikitailor import PreprocessConfig, build_index, extract_system
from wikitailor.retrieval import query, threshold_select
from _data import load_both

en, _ = load_both()
cfg = PreprocessConfig.for_language("en")
index = build_index(en, cfg)
print(index.doc_count, "documents,", len(index.postings), "terms")

ir, vocab, _ = extract_system(en, "Astronomy", "100-IR10", cfg, index)
print(vocab.top(5))
scored = query(index, vocab, 100)
for doc, score in scored[:5]:
    print(doc, en.articles[doc].title, round(score, 4))

# thresholds relative to the best score nest inside each other
for mode in ("10", "100", "all"):
    print(mode, len(threshold_select(scored, mode)))
