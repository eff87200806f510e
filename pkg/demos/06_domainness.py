"""
How in-domain is a collection?
==============================

Density, PMI over vocabulary pairs, rank agreement with the root articles and
the spread of ESA concept vectors, then Dom as the combined relative score.
"""

import json

from wikitailor import PreprocessConfig, extract_system, preprocess
from wikitailor.metrics import EsaSpace, MetricsConfig, compute_report, with_dom
from wikitailor.pipeline import domain_vocabulary
from _data import MINIDUMP, load_both

en, _ = load_both()
cfg = PreprocessConfig.for_language("en")
truth = json.loads((MINIDUMP / "ground_truth.json").read_text())

docs = lambda ids: [preprocess(en.articles[a].body, cfg) for a in sorted(ids)]
ids = sorted(en.articles)
# the fixture is tiny, so the ESA reference is the whole edition with no floor
space = EsaSpace.from_token_lists(ids, docs(ids), floor=0)
_, seeds, vocab = domain_vocabulary(en, "Astronomy", cfg)

collections = {
    "WT": extract_system(en, "Astronomy", "50-WT100", cfg)[0].article_ids,
    "IR": extract_system(en, "Astronomy", "100-IR10", cfg)[0].article_ids,
    "truth": truth["in_domain"]["en"],
    "noise": truth["noise"]["en"],
}
reports = with_dom([compute_report(name, docs(c), docs(seeds), vocab.words, MetricsConfig(), space)
                    for name, c in collections.items()])
for r in reports:
    print(f"{r.collection:6} n={r.n_articles:4} dens={r.c_terms_per_n:6.2f} pmi_col={r.pmi_col:.3f} "
          f"tau={r.tau} d_esa={r.d_esa:.3f} dom={r.dom:.2f}")
# PMI rewards rare co-occurrence and ESA here runs on a skewed reference,
# so the noise collection scores well on both components of this fixture
