import random

import networkx as nx
from hypothesis import given, settings, strategies as st

from expander_forge.matching import hopcroft_karp


def _nx_size(left, adj):
    B = nx.Graph()
    B.add_nodes_from(("L", u) for u in left)
    for u in left:
        for v in adj[u]:
            B.add_edge(("L", u), ("R", v))
    M = nx.bipartite.hopcroft_karp_matching(B, top_nodes=[("L", u) for u in left])
    return len(M) // 2


def _check(left, adj, M):
    assert len(set(M.values())) == len(M)
    for u, v in M.items():
        assert u in left and v in adj[u]


bipartite = st.tuples(st.integers(0, 12), st.integers(0, 12), st.integers(0, 10**6), st.floats(0, 1))


@settings(max_examples=80, deadline=None)
@given(bipartite)
def test_maximum_against_networkx(data):
    a, b, seed, p = data
    rng = random.Random(seed)
    left = list(range(a))
    adj = {u: [100 + v for v in range(b) if rng.random() < p] for u in left}
    M = hopcroft_karp(left, adj)
    _check(left, adj, M)
    assert len(M) == _nx_size(left, adj)


@settings(max_examples=60, deadline=None)
@given(bipartite)
def test_warm_start_keeps_matched(data):
    a, b, seed, p = data
    rng = random.Random(seed)
    left = list(range(a))
    adj = {u: [100 + v for v in range(b) if rng.random() < p] for u in left}
    part = left[: a // 2]
    warm = hopcroft_karp(part, adj)
    M = hopcroft_karp(left, adj, warm)
    _check(left, adj, M)
    assert set(warm) <= set(M)
    assert len(M) == _nx_size(left, adj)


def test_empty():
    assert hopcroft_karp([], {}) == {}
    assert hopcroft_karp([0, 1], {0: [], 1: []}) == {}
