import random

import numpy as np
import pytest

from oracles import pearson_cov
from wikitailor.errors import UndefinedMetricError
from wikitailor.evalstats import (IN_DOMAIN, OTHER, build_eval_set, category_matrix, fleiss_kappa,
                                  group_judgments, pearson, precision, read_judgments, write_eval_set)


def test_eval_set_sizes_and_determinism(tmp_path):
    common = set(range(500))
    a = common | set(range(1000, 1400))
    b = common | set(range(2000, 2700))
    es = build_eval_set(a, b, 100, seed=4)
    assert es.sizes == {"common": 100, "only_a": 100, "only_b": 100}
    assert build_eval_set(a, b, 100, seed=4) == es
    small = build_eval_set(set(range(17)), set(), 100)
    assert small.sizes["only_a"] == 17
    write_eval_set(es, tmp_path / "e.csv")
    assert len((tmp_path / "e.csv").read_text().splitlines()) == 301


def test_precision_rules():
    assert precision({i: [IN_DOMAIN] * 3 for i in range(10)}, "hard") == 1.0
    mixed = {i: [IN_DOMAIN, IN_DOMAIN, OTHER] for i in range(10)}
    assert precision(mixed, "hard") == 0.0 and precision(mixed, "soft") == 1.0
    hand = {1: [IN_DOMAIN] * 3, 2: [IN_DOMAIN, OTHER, OTHER], 3: [OTHER, IN_DOMAIN, IN_DOMAIN], 4: [OTHER] * 3}
    assert precision(hand, "hard") == 0.25 and precision(hand, "soft") == 0.5


def test_judgment_file(tmp_path):
    path = tmp_path / "j.csv"
    path.write_text("article_id,annotator_id,label\n1,a,in-domain\n1,b,other\n1,c,in-domain\n", encoding="utf-8")
    assert group_judgments(read_judgments(path)) == {1: [IN_DOMAIN, OTHER, IN_DOMAIN]}


def test_kappa_perfect_and_worked_example():
    unanimous = [[3, 0], [0, 3], [3, 0]]
    assert fleiss_kappa(unanimous) == pytest.approx(1.0)
    m = np.array([[0, 0, 0, 0, 14], [0, 2, 6, 4, 2], [0, 0, 3, 5, 6], [0, 3, 9, 2, 0], [2, 2, 8, 1, 1],
                  [7, 7, 0, 0, 0], [3, 2, 6, 3, 0], [2, 5, 3, 2, 2], [6, 5, 2, 1, 0], [0, 2, 2, 3, 7]])
    # the widely reproduced 10-item, 14-rater worked example
    assert fleiss_kappa(m) == pytest.approx(0.20993, abs=1e-5)
    with pytest.raises(UndefinedMetricError):
        fleiss_kappa([[3, 0], [3, 0]])


def test_kappa_near_zero_for_independent_raters():
    rng = np.random.default_rng(0)
    labels = rng.random((10_000, 3)) < 0.6
    counts = np.stack([labels.sum(1), 3 - labels.sum(1)], axis=1)
    assert abs(fleiss_kappa(counts)) < 0.02


def test_category_matrix():
    assert category_matrix({2: [OTHER, OTHER, IN_DOMAIN], 1: [IN_DOMAIN] * 3}).tolist() == [[3, 0], [1, 2]]


def test_pearson():
    x = [1.0, 2.0, 3.5, 4.0]
    assert pearson(x, [2 * v + 1 for v in x]) == pytest.approx(1.0)
    assert pearson(x, [-v for v in x]) == pytest.approx(-1.0)
    rng = random.Random(2)
    for _ in range(50):
        a = [rng.gauss(0, 1) for _ in range(30)]
        b = [v + rng.gauss(0, 1) for v in a]
        assert abs(pearson(a, b) - pearson_cov(a, b)) < 1e-12
    with pytest.raises(UndefinedMetricError):
        pearson([1, 1, 1], [1, 2, 3])
