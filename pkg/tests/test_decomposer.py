from fractions import Fraction

import numpy as np
import pytest

from netinduce import decomposer as D
from netinduce.constructions import balanced_iterated_blowup
from netinduce.graph import GraphError, make_net, random_graph


def test_rooted_net_validation():
    g = make_net()
    D.RootedNet(g, (0, 1, 2, 3, 4, 5))
    with pytest.raises(GraphError):
        D.RootedNet(g, (3, 1, 2, 0, 4, 5))
    with pytest.raises(GraphError):
        D.RootedNet(g, (0, 0, 2, 3, 4, 5))


def test_blobs_are_disjoint_and_counts_match_oracle():
    rng = np.random.default_rng(2)
    checked = 0
    for _ in range(40):
        g = random_graph(int(rng.integers(8, 14)), float(rng.uniform(0.3, 0.7)), rng)
        roots = list(D.iter_roots(g))
        if not roots:
            continue
        checked += 1
        for zs in roots[:3]:
            r = D.RootedNet(g, zs)
            masks = D.blob_candidates(g, r)
            union = 0
            for m in masks:
                union |= m
            assert union.bit_count() == sum(m.bit_count() for m in masks)
            assert D.rooted_counts(g, r) == D.rooted_counts_bruteforce(g, r)
    assert checked > 10


def test_best_root_matches_bruteforce_including_ties():
    rng = np.random.default_rng(9)
    for _ in range(25):
        g = random_graph(int(rng.integers(8, 14)), 0.5, rng)
        if not list(D.iter_roots(g)):
            with pytest.raises(GraphError):
                D.best_root(g)
            continue
        r1, v1 = D.best_root_bruteforce(g, Fraction(499, 100))
        r2, v2 = D.best_root_with_value(g, Fraction(499, 100))
        assert v1 == v2 and r1.vertices == r2.vertices


def test_blowup_36_decomposition():
    g = balanced_iterated_blowup(36)
    root = D.best_root(g)
    assert sorted(v // 6 for v in root.vertices) == list(range(6))
    d = D.classify(g, root)
    assert d.blob_sizes() == [0, 6, 6, 6, 6, 6, 6]
    assert d.f == 0 and d.funky_pairs == []
    assert D.lhs_41(d) == pytest.approx(2 * 15 / 36 - 4.99 * 6 / 36)
    js = d.to_json()
    assert js["root"] == list(root.vertices)
    assert "X0(trash)" in d.summary()


def test_funky_pairs_after_perturbation():
    g = balanced_iterated_blowup(36)
    root = D.best_root(g)
    d = D.classify(g, root)
    h = g.toggled(1, 7)  # two vertices of different parts
    pairs = D.funky_pairs(h, d.blob_of)
    assert len(pairs) == 1 and pairs[0][:2] == (1, 7)


def test_lhs_values():
    x = [1 / 6] * 6
    assert D.lhs_41_values(x, 0.0, 4.99) == pytest.approx(30 / 36 - 4.99 / 6)
    assert D.lhs_41_values(x, 0.0, 4.99, pairs="edges") == pytest.approx(12 / 36 - 4.99 / 6)
