from fractions import Fraction
from math import comb

import pytest

from netinduce import constructions as C
from netinduce.counting import net_count, per_vertex_net_counts
from netinduce.graph import GraphError


def test_small_recurrence_values():
    assert [C.recurrence_value(n) for n in range(6)] == [0] * 6
    assert C.recurrence_value(6) == 1
    assert C.recurrence_value(7) == 2
    assert C.recurrence_value(8) == 4
    assert C.recurrence_value(36) == 46662


def test_blowup_counts_match_recurrence():
    for n in (6, 7, 8, 12, 13, 20, 36):
        assert net_count(C.balanced_iterated_blowup(n)) == C.recurrence_value(n)


def test_pendant_k4():
    g = C.pendant_k4()
    assert net_count(g) == 4
    # every vertex lies in three of the four nets
    assert per_vertex_net_counts(g) == [3] * 8


def test_best_composition_matches_exhaustive():
    table = C.RecurrenceTable.build(60)
    for n in range(6, 61):
        best = C.best_composition(n, table)
        val, parts = C.exhaustive_composition(n, table)
        assert best.value == val
        assert best.balanced and best.exclusion_certified


def test_composition_window():
    assert C.composition_window(6) == 6
    assert C.composition_window(101) == 9


def test_limit_density_sequence():
    vals = [C.limit_density(k) for k in range(1, 7)]
    assert vals[0] == 1
    # the finite-level densities approach 24/1555 from above
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert all(v > Fraction(24, 1555) for v in vals)
    assert abs(float(vals[4] / Fraction(24, 1555)) - 1) < 0.01


def test_density_of_6_to_the_3():
    n = 216
    assert Fraction(C.recurrence_value(n), comb(n, 6)) == C.limit_density(3)


def test_table_csv_and_cache(tmp_path, monkeypatch):
    monkeypatch.setenv(C.CACHE_ENV, str(tmp_path))
    t = C.RecurrenceTable.build(12)
    assert t.get(12) == C.recurrence_value(12)
    assert t.to_csv().splitlines()[0] == "n,C(n),composition,provenance"
    path = C.save_cache()
    assert path and (tmp_path / "recurrence.json").exists()
    assert C.load_cache() >= 12


def test_errors():
    with pytest.raises(GraphError):
        C.balanced_iterated_blowup(0)
    with pytest.raises(ValueError):
        C.recurrence_value(-1)
