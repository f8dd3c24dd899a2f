from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from expander_forge import graph as gm
from expander_forge.errors import DuplicateEdge, ParityError, ParseError, SelfLoop
from expander_forge.graph import Graph, degree_stats, induced_subgraph
from oracles import to_nx


def test_parse_triangle():
    G = gm.from_edge_list("0 1\n1 2\n2 0")
    assert (G.n, G.m) == (3, 3)


def test_parse_comments_and_crlf():
    G = gm.from_edge_list("# header\r\n0 1 # trailing\r\n\r\n1 2\r\n")
    assert G.edges() == [(0, 1), (1, 2)]


@pytest.mark.parametrize("text,err", [("0 0", SelfLoop), ("0 1\n1 0", DuplicateEdge), ("0 x", ParseError), ("0", ParseError)])
def test_parse_errors(text, err):
    with pytest.raises(err):
        gm.from_edge_list(text)


def test_parse_error_reports_line():
    with pytest.raises(ParseError) as exc:
        gm.from_edge_list("0 1\n1 2\n2 2")
    assert exc.value.line == 3


def test_explicit_n_keeps_isolated_vertices():
    G = gm.from_edge_list("0 1", n=4)
    assert G.n == 4 and G.degree(3) == 0


def test_random_regular_small_is_k4():
    assert gm.random_regular(4, 3, 7) == gm.complete(4)


def test_random_regular_parity():
    with pytest.raises(ParityError):
        gm.random_regular(5, 3, 1)


def test_random_regular_100_8():
    st_ = degree_stats(gm.random_regular(100, 8, 42))
    assert (st_.min, st_.max, st_.avg) == (8, 8, 8)


def test_random_regular_deterministic():
    assert gm.random_regular(60, 6, 3) == gm.random_regular(60, 6, 3)


def test_induced_examples():
    assert induced_subgraph(gm.complete(4), {0, 1, 2}) == gm.complete(3)
    P = gm.petersen()
    outer = induced_subgraph(P, range(5))
    assert nx.is_isomorphic(to_nx(outer), nx.cycle_graph(5))


def test_induced_labels_compose():
    G = gm.path(6)
    A = induced_subgraph(G, [1, 2, 3, 4])
    B = induced_subgraph(A, [1, 3])
    assert B.labels == (2, 4)


@pytest.mark.parametrize(
    "G,expected",
    [
        (gm.complete(4), (Fraction(3), 3, 3)),
        (gm.path(3), (Fraction(4, 3), 1, 2)),
        (gm.star(4), (Fraction(8, 5), 1, 4)),
    ],
)
def test_degree_stats(G, expected):
    s = degree_stats(G)
    assert (s.avg, s.min, s.max) == expected


def test_petersen_is_petersen():
    assert nx.is_isomorphic(to_nx(gm.petersen()), nx.petersen_graph())


def test_json_roundtrip_is_sorted():
    G = gm.random_gnp(20, 0.3, 1)
    text = gm.to_json(G)
    assert gm.from_json(text) == G
    assert text == gm.to_json(gm.from_json(text))


def test_edge_subgraph():
    G = gm.complete(5)
    H = gm.edge_subgraph(G, [(3, 1), (1, 4)])
    assert H.n == 3 and H.m == 2 and H.labels == (1, 3, 4)


edge_sets = st.integers(2, 14).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] != e[1])))
)


@settings(max_examples=60, deadline=None)
@given(edge_sets)
def test_graph_invariants(data):
    n, raw = data
    edges = {(min(e), max(e)) for e in raw}
    G = Graph.from_edges(n, sorted(edges))
    assert 2 * G.m == sum(G.degrees())
    for v in range(n):
        for u in G.adj[v]:
            assert v in G.nbrs[u]
    full = induced_subgraph(G, range(n))
    assert degree_stats(full) == degree_stats(G) if n else True
    assert gm.from_edge_list(gm.to_edge_list(G), n) == G


@settings(max_examples=40, deadline=None)
@given(st.integers(6, 40), st.integers(1, 6), st.integers(0, 10**6))
def test_random_regular_degrees(n, d, seed):
    if n * d % 2:
        d += 1
    if d >= n:
        return
    G = gm.random_regular(n, d, seed)
    s = degree_stats(G)
    assert s.min == s.max == d
