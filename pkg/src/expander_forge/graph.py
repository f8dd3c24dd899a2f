"""Immutable simple undirected graphs, generators, degree statistics and I/O.

Vertices are dense integers ``0..n-1``.  A graph produced by
:func:`induced_subgraph` keeps a ``labels`` tuple mapping each local vertex to
its id in the root graph it was cut from, so nested subgraphs never need to be
relabelled by hand.
"""

from __future__ import annotations

import json
import random
from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DuplicateEdge,
    EmptyGraph,
    GraphError,
    InfeasibleDegree,
    OutOfRange,
    ParityError,
    ParseError,
    RepairBudgetExceeded,
    SelfLoop,
)

Edge = tuple[int, int]


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the sorted tuple of neighbours of ``v``; ``nbrs[v]`` is the
    same set as a frozenset for O(1) membership tests.
    """

    __slots__ = ("n", "adj", "nbrs", "m", "labels")

    def __init__(self, adj: Sequence[Iterable[int]], labels: Sequence[int] | None = None):
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self.n = len(self.adj)
        self.nbrs: tuple[frozenset[int], ...] = tuple(frozenset(a) for a in self.adj)
        total = 0
        for v, a in enumerate(self.adj):
            if len(a) != len(self.nbrs[v]):
                raise GraphError(f"parallel edge at vertex {v}")
            for u in a:
                if u == v:
                    raise GraphError(f"self-loop at vertex {v}")
                if not 0 <= u < self.n or v not in self.nbrs[u]:
                    raise GraphError(f"asymmetric adjacency at {v}-{u}")
            total += len(a)
        self.m = total // 2
        if labels is None:
            self.labels = tuple(range(self.n))
        else:
            self.labels = tuple(labels)
            if len(self.labels) != self.n:
                raise GraphError("labels length must equal n")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge], labels: Sequence[int] | None = None) -> Graph:
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise OutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if v in adj[u]:
                raise GraphError(f"duplicate edge ({u}, {v})")
            adj[u].add(v)
            adj[v].add(u)
        return cls(adj, labels)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.nbrs[u]

    def edges(self) -> list[Edge]:
        """All edges as ``(u, v)`` with ``u < v``, lexicographically sorted."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def vertices(self) -> range:
        return range(self.n)

    def avg_degree(self) -> Fraction:
        if self.n == 0:
            raise EmptyGraph("average degree of the empty graph")
        return Fraction(2 * self.m, self.n)

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for u in self.adj[v]:
                    if not seen[u]:
                        seen[u] = True
                        comp.append(u)
                        queue.append(u)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def root_ids(self, vertices: Iterable[int]) -> list[int]:
        return sorted(self.labels[v] for v in vertices)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.adj == other.adj

    def __hash__(self) -> int:
        return hash(self.adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class DegreeStats:
    avg: Fraction
    min: int
    max: int


def degree_stats(G: Graph) -> DegreeStats:
    if G.n == 0:
        raise EmptyGraph("degree statistics of a graph with no vertices")
    degs = G.degrees()
    return DegreeStats(Fraction(2 * G.m, G.n), min(degs), max(degs))


def check_vertex_set(G: Graph, S: Iterable[int]) -> frozenset[int]:
    S = frozenset(S)
    for v in S:
        if not (isinstance(v, int) and 0 <= v < G.n):
            raise OutOfRange(f"vertex {v!r} not in 0..{G.n - 1}")
    return S


def complement(G: Graph, S: Iterable[int]) -> frozenset[int]:
    return frozenset(range(G.n)) - frozenset(S)


def induced_subgraph(G: Graph, S: Iterable[int]) -> Graph:
    """``G[S]`` relabelled to ``0..|S|-1`` in increasing order of ``S``.

    The result's ``labels`` map local ids to the root ids of ``G``.
    """
    S = check_vertex_set(G, S)
    order = sorted(S)
    local = {v: i for i, v in enumerate(order)}
    adj = [[local[u] for u in G.adj[v] if u in local] for v in order]
    return Graph(adj, [G.labels[v] for v in order])


def edge_subgraph(G: Graph, edges: Iterable[Edge]) -> Graph:
    """Subgraph with the given edges, restricted to their endpoints (relabelled)."""
    edges = [(min(u, v), max(u, v)) for u, v in edges]
    for u, v in edges:
        if not G.has_edge(u, v):
            raise GraphError(f"({u}, {v}) is not an edge")
    order = sorted({x for e in edges for x in e})
    local = {v: i for i, v in enumerate(order)}
    return Graph.from_edges(len(order), [(local[u], local[v]) for u, v in edges], [G.labels[v] for v in order])


# --------------------------------------------------------------------------
# I/O


def from_edge_list(text: str, n: int | None = None) -> Graph:
    """Parse a line-oriented ``"u v"`` edge list.

    Blank lines and ``#`` comments are ignored.  ``n`` defaults to
    ``1 + max id``; pass it explicitly to allow trailing isolated vertices.
    """
    seen: set[Edge] = set()
    edges: list[Edge] = []
    top = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(lineno, f"expected two tokens, got {len(parts)}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(lineno, "tokens must be integers") from None
        if u < 0 or v < 0:
            raise ParseError(lineno, "vertex ids must be non-negative")
        if u == v:
            raise SelfLoop(lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdge(lineno)
        seen.add(key)
        edges.append(key)
        top = max(top, u, v)
    if n is None:
        n = top + 1
    elif n <= top:
        raise OutOfRange(f"vertex {top} does not fit n={n}")
    return Graph.from_edges(n, edges)


def to_edge_list(G: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in G.edges())


def read_edge_list(path, n: int | None = None) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return from_edge_list(fh.read(), n)


def to_json(G: Graph) -> str:
    return json.dumps({"n": G.n, "edges": [list(e) for e in G.edges()]}, sort_keys=True)


def from_json(text: str) -> Graph:
    data = json.loads(text)
    return Graph.from_edges(data["n"], [tuple(e) for e in data["edges"]])


# --------------------------------------------------------------------------
# Generators


def random_regular(n: int, d: int, seed: int) -> Graph:
    """Uniform-ish random ``d``-regular graph via the configuration model.

    Loops and parallel edges left by the random pairing are repaired with at
    most ``100 * m`` random edge swaps; deterministic for a given seed.
    """
    if d < 0 or n < 0:
        raise InfeasibleDegree("n and d must be non-negative")
    if (n * d) % 2:
        raise ParityError(f"n*d = {n * d} is odd")
    if d >= n and not (n == 0 and d == 0):
        raise InfeasibleDegree(f"d={d} must be smaller than n={n}")
    rng = random.Random(seed)
    stubs = [v for v in range(n) for _ in range(d)]
    rng.shuffle(stubs)
    edges = [(min(a, b), max(a, b)) for a, b in zip(stubs[::2], stubs[1::2])]
    m = len(edges)
    count = Counter(edges)

    def bad(e: Edge) -> bool:
        return e[0] == e[1] or count[e] > 1

    budget = 100 * m
    pending = [i for i, e in enumerate(edges) if bad(e)]
    while pending:
        i = pending.pop()
        if not bad(edges[i]):
            continue
        if budget <= 0:
            raise RepairBudgetExceeded(f"could not simplify after {100 * m} swaps")
        budget -= 1
        j = rng.randrange(m)
        (a, b), (x, y) = edges[i], edges[j]
        if rng.random() < 0.5:
            x, y = y, x
        e1, e2 = (min(a, x), max(a, x)), (min(b, y), max(b, y))
        if i == j or a == x or b == y or count[e1] or count[e2] or e1 == e2:
            pending.append(i)
            continue
        for old in (edges[i], edges[j]):
            count[old] -= 1
        edges[i], edges[j] = e1, e2
        count[e1] += 1
        count[e2] += 1
    return Graph.from_edges(n, edges)


def random_gnp(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_gnm(n: int, m: int, seed: int) -> Graph:
    if m > n * (n - 1) // 2:
        raise InfeasibleDegree(f"{m} edges do not fit on {n} vertices")
    rng = random.Random(seed)
    chosen: set[Edge] = set()
    while len(chosen) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            chosen.add((min(u, v), max(u, v)))
    return Graph.from_edges(n, sorted(chosen))


def complete(n: int) -> Graph:
    return Graph([[u for u in range(n) if u != v] for v in range(n)])


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def empty(n: int) -> Graph:
    return Graph([[] for _ in range(n)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def disjoint_union(*graphs: Graph) -> Graph:
    edges: list[Edge] = []
    offset = 0
    for H in graphs:
        edges.extend((u + offset, v + offset) for u, v in H.edges())
        offset += H.n
    return Graph.from_edges(offset, edges)


def barbell(k: int) -> Graph:
    """Two copies of ``K_k`` joined by the single edge ``(k-1, k)``."""
    G = disjoint_union(complete(k), complete(k))
    return Graph.from_edges(2 * k, G.edges() + [(k - 1, k)])
