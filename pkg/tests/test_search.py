from math import comb

import numpy as np
import pytest

from netinduce import search
from netinduce.constructions import pendant_k4
from netinduce.counting import net_count
from netinduce.graph import GraphError, make_net, random_graph


def test_class_counts_small():
    assert [len(search.iso_classes(n)) for n in range(1, 8)] == [1, 2, 4, 11, 34, 156, 1044]


def test_exhaustive_small():
    assert search.exhaustive_max(6).max_count == 1
    rep7 = search.exhaustive_max(7)
    assert rep7.max_count == 2 and len(rep7.extremal_classes) == 4
    assert search.exhaustive_max(5).max_count == 0


def test_raw_enumeration_agrees():
    classes, top, masks = search.raw_exhaustive(6)
    assert classes == 156 and top == 1 and len(masks) == 1


def test_exhaustive_rejects_large_n():
    with pytest.raises(GraphError):
        search.exhaustive_max(9)


def test_clone_swap_identity():
    rng = np.random.default_rng(4)
    for _ in range(40):
        g = random_graph(int(rng.integers(7, 13)), 0.5, rng)
        kill, copy = (int(v) for v in rng.choice(g.n, 2, replace=False))
        lhs, rhs = search.lemma1_identity(g, kill, copy)
        assert lhs == rhs
        h = search.clone_swap(g, kill, copy)
        assert not h.has_edge(kill, copy)
        assert set(h.neighbors(kill)) == set(g.neighbors(copy)) - {kill}


def test_spread():
    assert search.lemma1_spread(pendant_k4()) == (0, comb(6, 4), True)
    spread, bound, ok = search.lemma1_spread(make_net())
    assert (spread, bound, ok) == (0, 1, True)


def test_local_search_reaches_small_optima():
    rep = search.local_search(8, seed=1, budget=20000, reference=4)
    assert rep.max_count == 4 == net_count(rep.best_graph)
    assert rep.flags["optimality_claimed"] is False
    again = search.local_search(8, seed=1, budget=20000, reference=4)
    assert again.extremal_classes == rep.extremal_classes


def test_report_json():
    js = search.exhaustive_max(6).to_json()
    assert js["max_count"] == 1 and js["method"] == "exhaustive"
