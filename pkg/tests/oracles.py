"""Independent reference implementations used as test oracles.

Everything here is deliberately naive: itertools enumeration and networkx,
no code shared with the package under test.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import networkx as nx


def to_nx(G) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges())
    return H


def brute_lambda(G, lam: Fraction):
    """Return ``(certified, worst ratio, violating sets)`` by enumerating all subsets."""
    H = to_nx(G)
    n, m = G.n, G.m
    worst = None
    bad = []
    for k in range(1, n // 2 + 1):
        for U in itertools.combinations(range(n), k):
            cut = nx.cut_size(H, U)
            ratio = Fraction(cut * n, 2 * m * k) if m else Fraction(0)
            if worst is None or ratio < worst:
                worst = ratio
            if Fraction(cut) < lam * Fraction(2 * m, n) * k:
                bad.append(U)
    return not bad, worst, bad


def brute_min_neighbourhood(G, U, budget: int) -> int:
    """min |N_{G-F}(U)| over all edge sets F of size <= budget (exhaustive over F)."""
    U = set(U)
    leaving = [(min(u, w), max(u, w)) for u in U for w in G.adj[u] if w not in U]
    best = None
    for k in range(0, min(budget, len(leaving)) + 1):
        for F in itertools.combinations(leaving, k):
            F = set(F)
            nb = {w for u in U for w in G.adj[u] if w not in U and (min(u, w), max(u, w)) not in F}
            if best is None or len(nb) < best:
                best = len(nb)
    return best if best is not None else 0


def has_subdivision_k4(G) -> bool:
    """K4 topological minor check via brute force over branch sets and disjoint path systems (tiny n)."""
    H = to_nx(G)
    for branches in itertools.combinations(range(G.n), 4):
        if _route_k4(H, branches):
            return True
    return False


def _route_k4(H, branches) -> bool:
    pairs = list(itertools.combinations(branches, 2))
    others = [v for v in H.nodes if v not in branches]

    def search(i, used):
        if i == len(pairs):
            return True
        a, b = pairs[i]
        sub = H.subgraph([v for v in others if v not in used] + [a, b]).copy()
        if sub.has_edge(a, b) and search(i + 1, used):
            return True
        if sub.has_edge(a, b):
            sub.remove_edge(a, b)
        for p in nx.all_simple_paths(sub, a, b, cutoff=len(others) + 1):
            if len(p) > 2 and search(i + 1, used | set(p[1:-1])):
                return True
        return False

    return search(0, frozenset())
