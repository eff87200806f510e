"""
Manual evaluation statistics
============================
"""

import numpy as np

from wikitailor.evalstats import IN_DOMAIN, OTHER, build_eval_set, category_matrix, fleiss_kappa, pearson, precision

evalset = build_eval_set(range(0, 300), range(200, 450), n_per_stratum=50, seed=1)
print(evalset.sizes)

# three annotators; a hard judgment needs all of them, a soft one two
rng = np.random.default_rng(0)
labels = {a: [IN_DOMAIN if rng.random() < 0.8 else OTHER for _ in range(3)] for a in range(100)}
print(precision(labels, "hard"), precision(labels, "soft"))
print(round(fleiss_kappa(category_matrix(labels)), 4))

print(pearson([0.40, 0.55, 0.61, 0.70, 0.82], [0.2, 0.5, 0.45, 0.66, 0.9]))
