"""
Preprocessing and the domain vocabulary
=======================================
"""

from wikitailor import PreprocessConfig, build_vocabulary, find_root_category, preprocess, select_seed_articles
from _data import load_both

en, fr = load_both()
cfg_en = PreprocessConfig.for_language("en")
cfg_fr = PreprocessConfig.for_language("fr")

# lowercase, letter runs, stopwords, stemming, accents stripped
print(preprocess("The Observatory's telescopes were pointed at the Andromeda Galaxy.", cfg_en))
print(preprocess("Les étoiles de la galaxie d'Andromède", cfg_fr))

# root titles match ignoring case
root = find_root_category(en, "Astronomy")
print(root.title, find_root_category(en, "astronomy").title)

seeds = select_seed_articles(en, root)
vocab = build_vocabulary(en, seeds, cfg_en, "top10pct", domain=root.title)
print(len(seeds), "seed articles")
print(vocab.words)

root_fr = find_root_category(fr, "Astronomie")
vocab_fr = build_vocabulary(fr, select_seed_articles(fr, root_fr), cfg_fr, "top10pct", domain=root_fr.title)
print(vocab_fr.words)
