"""
Reading a dump into a store
===========================

An English dump carries categories and langlinks inline; the French one
needs the categorylinks and langlinks tables next to it.
"""

import tempfile

from wikitailor import load_store, persist_store
from _data import load_both

en, fr = load_both()
print(en.summary())
print(fr.summary())

# categories are nodes with child categories and member articles
astro = en.category_by_title("Astronomy")
print(astro.category_id, [en.categories[c].title for c in astro.children])
print(len(astro.article_ids), "articles filed directly under", astro.title)

# a store round-trips through a directory of jsonl files with checksums
with tempfile.TemporaryDirectory() as tmp:
    persist_store(en, tmp)
    again = load_store(tmp)
print(again.summary() == en.summary())
