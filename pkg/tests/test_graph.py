import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netinduce.graph import (Graph, Graph6Error, GraphError, complete_graph, emit_graph6, make_net,
                             parse_graph6, random_graph)


@st.composite
def graphs(draw, max_n=20):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [p for p, k in zip(pairs, keep) if k])


@settings(max_examples=200, deadline=None)
@given(graphs())
def test_graph6_roundtrip(g):
    h = parse_graph6(emit_graph6(g))
    assert h.n == g.n and h.edges() == g.edges()


@settings(max_examples=100, deadline=None)
@given(graphs(12))
def test_complement_involution(g):
    assert g.complement().complement().edges() == g.edges()
    assert g.num_edges() + g.complement().num_edges() == g.n * (g.n - 1) // 2


def test_net_shape():
    g = make_net()
    assert g.n == 6 and g.num_edges() == 6
    assert sorted(g.degrees()) == [1, 1, 1, 3, 3, 3]
    assert g.triangles() == [(3, 4, 5)]


def test_known_graph6():
    assert emit_graph6(complete_graph(4)) == "C~"
    assert parse_graph6("C~").num_edges() == 6


def test_graph6_errors_report_offset():
    with pytest.raises(Graph6Error) as exc:
        parse_graph6("C~!")
    assert "offset" in str(exc.value)
    with pytest.raises(Graph6Error):
        parse_graph6("D~")  # too short for 5 vertices


def test_invalid_edges():
    with pytest.raises(GraphError):
        Graph(3, [(0, 0)])
    with pytest.raises(GraphError):
        Graph(3, [(0, 3)])


def test_induced_and_json():
    g = random_graph(10, 0.5, np.random.default_rng(3))
    sub = g.induced([1, 4, 7])
    assert sub.n == 3
    assert sub.has_edge(0, 1) == g.has_edge(1, 4)
    assert Graph.from_json(g.to_json()).edges() == g.edges()


def test_large_graph_bitsets():
    g = Graph(130, [(0, 129), (64, 65)])
    assert g.has_edge(129, 0) and g.degree(64) == 1
    assert parse_graph6(emit_graph6(g)).edges() == g.edges()
