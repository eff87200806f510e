"""Slow, obviously-correct reference implementations.

Nothing here imports the code under test except plain data types; every
formula is re-derived from its definition with loops or dense linear algebra.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from fractions import Fraction

import numpy as np


# ---------------------------------------------------------------- rank correlation

def kendall_brute(x, y) -> float | None:
    """tau-b by enumerating all pairs."""
    n = len(x)
    c = d = tx = ty = 0
    for i in range(n):
        for j in range(i + 1, n):
            sx = (x[i] > x[j]) - (x[i] < x[j])
            sy = (y[i] > y[j]) - (y[i] < y[j])
            if sx == 0:
                tx += 1
            if sy == 0:
                ty += 1
            if sx * sy > 0:
                c += 1
            elif sx * sy < 0:
                d += 1
    n0 = n * (n - 1) // 2
    denom = math.sqrt((n0 - tx) * (n0 - ty))
    return None if denom == 0 else (c - d) / denom


def kendall_brute_np(x, y) -> float | None:
    """tau-b over the full n x n sign matrices; the same pair enumeration, vectorised."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    sx = np.sign(x[:, None] - x[None, :])
    sy = np.sign(y[:, None] - y[None, :])
    upper = np.triu(np.ones_like(sx, dtype=bool), k=1)
    prod = (sx * sy)[upper]
    c, d = int((prod > 0).sum()), int((prod < 0).sum())
    tx, ty = int((sx[upper] == 0).sum()), int((sy[upper] == 0).sum())
    n0 = len(x) * (len(x) - 1) // 2
    denom = math.sqrt((n0 - tx) * (n0 - ty))
    return None if denom == 0 else (c - d) / denom


def average_ranks(values) -> list[float]:
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        for k in range(i, j + 1):
            ranks[order[k]] = (i + j) / 2 + 1
        i = j + 1
    return ranks


def spearman_brute(x, y) -> float | None:
    rx, ry = average_ranks(x), average_ranks(y)
    return pearson_cov(rx, ry)


def spearman_no_ties(x, y) -> float:
    """``1 - 6 sum d^2 / (n (n^2 - 1))``; only valid without ties."""
    rx, ry = average_ranks(x), average_ranks(y)
    n = len(x)
    return 1 - 6 * sum((a - b) ** 2 for a, b in zip(rx, ry)) / (n * (n * n - 1))


def pearson_cov(x, y) -> float | None:
    n = len(x)
    mx, my = sum(x) / n, sum(y) / n
    cov = sum((a - mx) * (b - my) for a, b in zip(x, y)) / (n - 1)
    sx = math.sqrt(sum((a - mx) ** 2 for a in x) / (n - 1))
    sy = math.sqrt(sum((b - my) ** 2 for b in y) / (n - 1))
    if sx == 0 or sy == 0:
        return None
    return cov / (sx * sy)


# ---------------------------------------------------------------- PMI

def pmi_brute(docs, terms, variant: str, eps: float, normalised: bool, aggregation: str = "median") -> float:
    """(N)PMI aggregated over term pairs, counting tokens one article at a time."""
    stats = []
    for doc in docs:
        bag = Counter(doc)
        stats.append((len(doc), {t: bag.get(t, 0) for t in terms}))

    def prob(num_of):
        if variant == "art":
            total = sum(T for T, _ in stats)
            return sum(num_of(c) for _, c in stats) / total
        nonempty = [(T, c) for T, c in stats if T > 0]
        return sum(num_of(c) / T for T, c in nonempty) / len(nonempty)

    scores = []
    for i in range(len(terms)):
        for j in range(i + 1, len(terms)):
            a, b = terms[i], terms[j]
            pi = prob(lambda c: c[a])
            pj = prob(lambda c: c[b])
            pij = prob(lambda c: min(c[a], c[b]))
            value = math.log2((pij + eps) / (pi * pj + eps))
            if normalised:
                value = value / -math.log2(pij + eps)
            scores.append(value)
    scores.sort()
    if aggregation == "mean":
        return sum(scores) / len(scores)
    m = len(scores)
    return scores[m // 2] if m % 2 else (scores[m // 2 - 1] + scores[m // 2]) / 2


# ---------------------------------------------------------------- ESA

def tfidf_dense(docs):
    """Dense reference tf-idf matrix, sorted vocabulary, ln(N/df) idf."""
    vocab = sorted({t for d in docs for t in d})
    col = {t: i for i, t in enumerate(vocab)}
    n = len(docs)
    df = np.zeros(len(vocab))
    for d in docs:
        for t in set(d):
            df[col[t]] += 1
    idf = np.log(n / df)
    W = np.zeros((n, len(vocab)))
    for r, d in enumerate(docs):
        for t, tf in Counter(d).items():
            W[r, col[t]] = tf * idf[col[t]]
    return vocab, idf, W


def d_esa_dense(collection, reference) -> float:
    vocab, idf, W = tfidf_dense(reference)
    col = {t: i for i, t in enumerate(vocab)}
    norms = np.linalg.norm(W, axis=1)
    Wn = np.array([w / n if n > 0 else w for w, n in zip(W, norms)])
    vecs = []
    for d in collection:
        q = np.zeros(len(vocab))
        for t, tf in Counter(d).items():
            if t in col:
                q[col[t]] = tf * idf[col[t]]
        if np.linalg.norm(q) > 0:
            q = q / np.linalg.norm(q)
        v = Wn @ q
        if np.linalg.norm(v) > 0:
            vecs.append(v)
    V = np.array(vecs)
    centroid = V.mean(axis=0)
    angles = []
    for v in V:
        cos = float(v @ centroid) / (np.linalg.norm(v) * np.linalg.norm(centroid))
        angles.append(math.acos(max(-1.0, min(1.0, cos))))
    return float(np.mean(angles))


# ---------------------------------------------------------------- IR

def ir_scores_brute(docs: dict[int, list[str]], terms) -> dict[int, float]:
    n = len(docs)
    out = {}
    for doc_id, toks in docs.items():
        s = 0.0
        for t in terms:
            tf = toks.count(t)
            if tf:
                df = sum(1 for d in docs.values() if t in d)
                s += tf / len(toks) * math.log(1 + n / df)
        if s > 0:
            out[doc_id] = s
    return out


# ---------------------------------------------------------------- graph

def bfs_depths(children: dict[int, list[int]], root: int) -> dict[int, int]:
    depth = {root: 0}
    queue = deque([root])
    while queue:
        node = queue.popleft()
        for c in children.get(node, ()):
            if c not in depth:
                depth[c] = depth[node] + 1
                queue.append(c)
    return depth


def wt_brute(store, root_id: int, positive, k: float):
    """Articles and stop depth of the level-threshold walk, from explicit depth maps."""
    children = {cid: list(c.children) for cid, c in store.categories.items()}
    depth = bfs_depths(children, root_id)
    levels: dict[int, list[int]] = {}
    for cid, d in depth.items():
        levels.setdefault(d, []).append(cid)
    stop = 0
    for d in range(1, max(levels) + 1):
        cats = levels[d]
        pos = sum(1 for c in cats if positive(store.categories[c].title))
        if Fraction(pos, len(cats)) >= Fraction(k) / 100:
            stop = d
        else:
            break
    chosen = [c for c, d in depth.items() if d <= stop]
    arts = set()
    for c in chosen:
        arts.update(store.categories[c].article_ids)
    return arts, stop
