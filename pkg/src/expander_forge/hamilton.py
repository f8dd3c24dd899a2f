"""Nearly-spanning paths and cycles in expanders.

Pipeline:

1. :func:`partition_scheme` splits the vertices at random into a connector
   reserve ``V0`` (itself split into ``V'`` streams, ``V1`` and ``V2``), layers
   ``X_1..X_t`` and a remainder ``R``;
2. :func:`layer_matchings` takes a maximum matching between consecutive
   layers, preferring vertices that continue a chain from ``X_1``;
3. :func:`glue_forest` turns the surviving chains into vertex-disjoint paths
   with one vertex per layer;
4. :func:`connect_round` merges paths through one ``V'`` stream per round,
   first with length-2 connectors, then by routing one leaf per path;
5. the final path is closed through ``V1`` (then ``V2``).

Desk mode adds three repairs that the random construction needs at small
``n``: merging leftover paths through unused vertices, Posa rotations when
closing fails, and absorbing uncovered vertices into the finished path or
cycle.  The report separates what the pipeline alone covered.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .config import RunConfig
from .errors import ClosureFailed, InternalInvariantViolation, InvalidProbabilities, PreconditionViolated
from .graph import Edge, Graph
from .matching import hopcroft_karp
from .verify import verify_cycle, verify_path

MIN_LAYER = 4


# --------------------------------------------------------------------------
# Partition


@dataclass(frozen=True)
class PartitionScheme:
    n: int
    V0: tuple[int, ...]
    layers: tuple[tuple[int, ...], ...]
    R: tuple[int, ...]
    V_prime: tuple[int, ...]
    V1: tuple[int, ...]
    V2: tuple[int, ...]
    streams: tuple[tuple[int, ...], ...]
    q1: Fraction
    q2: Fraction
    q3: Fraction
    t: int
    ell: int
    paper: bool

    @property
    def X(self) -> frozenset[int]:
        return frozenset(v for layer in self.layers for v in layer)

    def check(self) -> None:
        parts = [self.V0, *self.layers, self.R]
        flat = [v for p in parts for v in p]
        if sorted(flat) != list(range(self.n)):
            raise InternalInvariantViolation("partition is not exact")
        sub = sorted(self.V_prime + self.V1 + self.V2)
        if sub != sorted(self.V0):
            raise InternalInvariantViolation("V0 split is not exact")
        if sorted(v for s in self.streams for v in s) != sorted(self.V_prime):
            raise InternalInvariantViolation("stream split is not exact")
        if self.paper and self.q1 + (self.t + 1) * self.q2 != 1:
            raise InternalInvariantViolation("q1 + (t+1) q2 != 1")

    def to_dict(self) -> dict:
        from .rational import to_json

        return {
            "n": self.n,
            "t": self.t,
            "ell": self.ell,
            "q1": to_json(self.q1),
            "q2": to_json(self.q2),
            "q3": to_json(self.q3),
            "paper": self.paper,
            "V0": list(self.V0),
            "V1": list(self.V1),
            "V2": list(self.V2),
            "layers": [list(x) for x in self.layers],
            "R": list(self.R),
            "streams": [list(s) for s in self.streams],
        }


def paper_parameters(n: int) -> tuple[Fraction, Fraction, int, int]:
    """``(q1, q2, t, ell)`` from ``L = log2 n``.

    ``q1 = 1/(3L)``, ``t = floor(L^3/6 - L^2/18 - 1)``, ``q2 = (1 - q1)/(t + 1)``
    (equal to ``6/L^3`` whenever the bracket is an integer) and
    ``ell = ceil(10 L)``.
    """
    if n < 2:
        raise InvalidProbabilities("need n >= 2")
    if n & (n - 1) == 0:
        L = Fraction(n.bit_length() - 1)
    else:
        L = Fraction(math.log2(n)).limit_denominator(10**6)
    q1 = 1 / (3 * L)
    t = math.floor(L**3 / 6 - L**2 / 18 - 1)
    if t < 2 or not 0 < q1 < 1:
        raise InvalidProbabilities(f"log2 n = {L} gives t = {t}, q1 = {q1}")
    q2 = (1 - q1) / (t + 1)
    return q1, q2, t, math.ceil(10 * L)


def desk_layers(n: int, q1: Fraction, t: int) -> int:
    """Shrink ``t`` (not below 2) until layers expect at least ``MIN_LAYER`` vertices."""
    while t > 2 and n * (1 - q1) / (t + 1) < MIN_LAYER:
        t -= 1
    return t


def partition_scheme(n: int, cfg: RunConfig | None = None, seed: int = 0) -> PartitionScheme:
    """I.i.d. assignment of each vertex to ``V0`` (prob ``q1``), a layer or ``R`` (``q2`` each)."""
    cfg = cfg or RunConfig()
    if cfg.mode == "paper":
        q1, q2, t, ell = paper_parameters(n)
        paper = True
    else:
        q1 = cfg.q1
        if not 0 < q1 < 1:
            raise InvalidProbabilities(f"q1 = {q1}")
        t = desk_layers(n, q1, cfg.t)
        q2 = (1 - q1) / (t + 1)
        ell = cfg.rounds_for(n)
        paper = False
    rng = random.Random(seed)
    fq1, fq2 = float(q1), float(q2)
    V0, R = [], []
    layers: list[list[int]] = [[] for _ in range(t)]
    Vp, V1, V2 = [], [], []
    streams: list[list[int]] = [[] for _ in range(ell)]
    for v in range(n):
        u = rng.random()
        if u < fq1:
            V0.append(v)
            w = rng.random()
            if w < 0.5:
                Vp.append(v)
                streams[rng.randrange(ell)].append(v)
            elif w < 0.75:
                V1.append(v)
            else:
                V2.append(v)
        else:
            k = min(int((u - fq1) / fq2), t)
            (R if k == t else layers[k]).append(v)
    scheme = PartitionScheme(
        n,
        tuple(V0),
        tuple(tuple(x) for x in layers),
        tuple(R),
        tuple(Vp),
        tuple(V1),
        tuple(V2),
        tuple(tuple(s) for s in streams),
        q1,
        q2,
        q1 / (2 * ell),
        t,
        ell,
        paper,
    )
    scheme.check()
    return scheme


# --------------------------------------------------------------------------
# Layer matchings and gluing


@dataclass
class MatchingLayer:
    t: int
    matchings: list[list[Edge]]  # M_i as (x in X_i, y in X_{i+1})
    surviving: list[list[Edge]]  # M'_i

    @property
    def r(self) -> int:
        return len(self.surviving[-1]) if self.surviving else 0


def layer_matchings(H: Graph, parts: PartitionScheme) -> MatchingLayer:
    """Maximum matchings between consecutive layers, chained from ``X_1``.

    ``M_i`` is first grown on the chain survivors ``S_i`` of ``X_i`` and then
    augmented to a maximum matching of ``H[X_i, X_{i+1}]``; augmenting keeps
    every survivor matched, so the chain keeps as many paths as possible.
    """
    if parts.t < 2:
        raise PreconditionViolated("need at least two layers")
    matchings, surviving = [], []
    survivors: list[int] | None = None
    for i in range(parts.t - 1):
        left, right = parts.layers[i], frozenset(parts.layers[i + 1])
        adj = {u: [v for v in H.adj[u] if v in right] for u in left}
        if survivors is None:
            M = hopcroft_karp(left, adj)
            chain = sorted(M)
        else:
            warm = hopcroft_karp(survivors, adj)
            M = hopcroft_karp(left, adj, warm)
            chain = [u for u in survivors if u in M]
        matchings.append(sorted(M.items()))
        surviving.append(sorted((u, M[u]) for u in chain))
        survivors = sorted(M[u] for u in chain)
    return MatchingLayer(parts.t, matchings, surviving)


@dataclass
class PathSystem:
    paths: list[tuple[int, ...]]
    leaf_count_history: list[int] = field(default_factory=list)

    @property
    def leaves(self) -> list[int]:
        return [v for p in self.paths for v in (p[0], p[-1])]

    @property
    def leaf_count(self) -> int:
        return 2 * len(self.paths)

    def vertices(self) -> set[int]:
        return {v for p in self.paths for v in p}

    def check(self, G: Graph) -> None:
        seen: set[int] = set()
        for p in self.paths:
            if not verify_path(G, p).ok:
                raise InternalInvariantViolation(f"invalid path {p}")
            if seen & set(p):
                raise InternalInvariantViolation("paths overlap")
            seen |= set(p)

    def to_dict(self) -> dict:
        return {"paths": [list(p) for p in self.paths], "leaf_count_history": list(self.leaf_count_history)}


def glue_forest(layers: MatchingLayer) -> PathSystem:
    """Trace each surviving chain back to ``X_1``: one path per edge of ``M'_{t-1}``."""
    if not layers.surviving:
        return PathSystem([], [0])
    back = [dict((y, x) for x, y in s) for s in layers.surviving]
    paths = []
    for _, y in layers.surviving[-1]:
        path = [y]
        for step in reversed(back):
            path.append(step[path[-1]])
        paths.append(tuple(reversed(path)))
    return PathSystem(paths, [2 * len(paths)])


# --------------------------------------------------------------------------
# Connectors


@dataclass(frozen=True)
class ConnectorConfig:
    max_path_len: int = 40
    rounds: int = 10
    greedy_first: bool = True
    backtrack_budget: int = 64

    def __post_init__(self):
        if self.max_path_len < 2:
            raise ValueError("max_path_len must be at least 2")
        if self.rounds < 1:
            raise ValueError("rounds must be at least 1")

    @classmethod
    def from_run(cls, cfg: RunConfig, n: int) -> ConnectorConfig:
        return cls(cfg.path_len_for(n), cfg.rounds_for(n), True, cfg.backtrack_budget)


@dataclass(frozen=True)
class PairOutcome:
    pair: tuple[int, int]
    ok: bool
    path: tuple[int, ...] | None = None


def route(
    G: Graph, x: int, y: int, allowed: set[int] | frozenset[int], max_len: int, min_internal: int = 0
) -> list[int] | None:
    """Shortest ``x``-``y`` path with internal vertices in ``allowed`` and at most ``max_len`` edges."""
    if min_internal == 0 and G.has_edge(x, y):
        return [x, y]
    parent: dict[int, int | None] = {x: None}
    frontier = [x]
    depth = 0
    ynb = G.nbrs[y]
    while frontier and depth + 1 < max_len:
        depth += 1
        nxt = []
        for u in frontier:
            for w in G.adj[u]:
                if w in allowed and w not in parent and w != y:
                    parent[w] = u
                    if w in ynb and depth >= min_internal:
                        out = [y, w]
                        while parent[out[-1]] is not None:
                            out.append(parent[out[-1]])
                        return out[::-1]
                    nxt.append(w)
        frontier = nxt
    return None


def connect_pairs(
    G: Graph,
    V: Iterable[int],
    pairs: Sequence[tuple[int, int]],
    avoid: Iterable[int] = (),
    cfg: ConnectorConfig | None = None,
    min_internal: int = 0,
) -> list[PairOutcome]:
    """Vertex-disjoint paths joining each pair through ``V`` minus ``avoid``.

    Pairs are routed in order by BFS.  When a pair fails, the most recent
    success is ripped up, the failed pair is routed first and the ripped pair
    re-routed; if that does not work the earlier state is restored.  Each
    rip-up costs one unit of ``backtrack_budget``.
    """
    cfg = cfg or ConnectorConfig()
    V = set(V)
    avoid = set(avoid)
    ends = [v for p in pairs for v in p]
    if len(set(ends)) != len(ends):
        raise PreconditionViolated("pair endpoints must be distinct")
    if any(v in V or v in avoid for v in ends):
        raise PreconditionViolated("pair endpoints must lie outside V and avoid")
    allowed = V - avoid
    used: set[int] = set()
    paths: list[list[int] | None] = [None] * len(pairs)
    stack: list[int] = []
    budget = cfg.backtrack_budget

    def go(k: int) -> list[int] | None:
        x, y = pairs[k]
        return route(G, x, y, allowed - used, cfg.max_path_len, min_internal)

    for k in range(len(pairs)):
        p = go(k)
        if p is None and stack and budget > 0:
            budget -= 1
            j = stack[-1]
            old = paths[j]
            used.difference_update(old[1:-1])
            p = go(k)
            if p is not None:
                used.update(p[1:-1])
                pj = go(j)
                if pj is not None:
                    paths[j] = pj
                    used.update(pj[1:-1])
                else:
                    used.difference_update(p[1:-1])
                    p = None
            if p is None:
                used.update(old[1:-1])
            else:
                used.difference_update(p[1:-1])
        if p is not None:
            paths[k] = p
            used.update(p[1:-1])
            stack.append(k)
    return [PairOutcome(tuple(pairs[k]), paths[k] is not None, tuple(paths[k]) if paths[k] else None) for k in range(len(pairs))]


class _Forest:
    """Mutable linear forest used while merging paths."""

    def __init__(self, paths: Iterable[Sequence[int]]):
        self.paths: dict[int, list[int]] = {i: list(p) for i, p in enumerate(paths)}
        self.owner: dict[int, int] = {v: i for i, p in self.paths.items() for v in p}

    def ends(self, pid: int) -> tuple[int, int]:
        p = self.paths[pid]
        return p[0], p[-1]

    def is_end(self, v: int) -> bool:
        pid = self.owner.get(v)
        return pid is not None and v in self.ends(pid)

    def merge(self, x: int, y: int, internal: Sequence[int]) -> None:
        a, b = self.owner[x], self.owner[y]
        if a == b:
            raise InternalInvariantViolation("refusing to close a path into a cycle")
        A, B = self.paths[a], self.paths[b]
        if A[-1] != x:
            A.reverse()
        if B[0] != y:
            B.reverse()
        keep, drop = min(a, b), max(a, b)
        self.paths[keep] = A + list(internal) + B
        del self.paths[drop]
        for v in self.paths[keep]:
            self.owner[v] = keep

    def system(self, history: list[int]) -> PathSystem:
        return PathSystem([tuple(self.paths[k]) for k in sorted(self.paths)], list(history))

    @property
    def leaf_count(self) -> int:
        return 2 * len(self.paths)


@dataclass(frozen=True)
class RoundStats:
    merges: int
    phase1: int
    phase2: int
    leaf_count: int

    def to_dict(self) -> dict:
        return {"merges": self.merges, "phase1": self.phase1, "phase2": self.phase2, "leaf_count": self.leaf_count}


def _phase1(G: Graph, forest: _Forest, V: set[int], used: set[int]) -> int:
    merges = 0
    for b in sorted(V):
        cands = [a for a in G.adj[b] if forest.is_end(a)]
        pick = None
        for i, a in enumerate(cands):
            for c in cands[i + 1 :]:
                if forest.owner[a] != forest.owner[c]:
                    pick = (a, c)
                    break
            if pick:
                break
        if pick:
            forest.merge(pick[0], pick[1], [b])
            used.add(b)
            merges += 1
    return merges


def _phase2(G: Graph, forest: _Forest, avail: set[int], used: set[int], cfg: ConnectorConfig, index: int) -> int:
    pids = sorted(forest.paths)
    if len(pids) < 2:
        return 0
    Y = []
    for pid in pids:
        x0, x1 = forest.ends(pid)
        score = {x: sum(1 for w in G.adj[x] if w in avail) for x in (x0, x1)}
        Y.append(max((x0, x1), key=lambda x: (score[x], -x)))
    k = index % len(Y)
    Y = Y[k:] + Y[:k]
    pairs = [(Y[i], Y[i + 1]) for i in range(0, len(Y) - 1, 2)]
    merges = 0
    for res in connect_pairs(G, avail, pairs, (), cfg):
        if res.ok:
            forest.merge(res.pair[0], res.pair[1], res.path[1:-1])
            used.update(res.path[1:-1])
            merges += 1
    return merges


def _round(G: Graph, forest: _Forest, V_i: Iterable[int], cfg: ConnectorConfig, index: int) -> RoundStats:
    V = set(V_i) - set(forest.owner)
    if not V:
        return RoundStats(0, 0, 0, forest.leaf_count)
    used: set[int] = set()
    p1 = _phase1(G, forest, V, used) if cfg.greedy_first else 0
    p2 = _phase2(G, forest, V - used, used, cfg, index)
    return RoundStats(p1 + p2, p1, p2, forest.leaf_count)


def connect_round(G: Graph, sys: PathSystem, V_i: Iterable[int], cfg: ConnectorConfig | None = None, index: int = 0):
    """One merging round through ``V_i``; returns ``(new PathSystem, RoundStats)``."""
    cfg = cfg or ConnectorConfig()
    V_i = set(V_i)
    if V_i & sys.vertices():
        raise PreconditionViolated("V_i must be disjoint from the path system")
    forest = _Forest(sys.paths)
    stats = _round(G, forest, V_i, cfg, index)
    return forest.system(sys.leaf_count_history + [forest.leaf_count]), stats


# --------------------------------------------------------------------------
# Desk repairs


def _merge_free(G: Graph, forest: _Forest, free: set[int], max_len: int) -> int:
    """Merge paths through unused vertices until one path remains or nothing connects."""
    merges = 0
    progress = True
    while len(forest.paths) > 1 and progress:
        progress = False
        for pid in sorted(forest.paths):
            if pid not in forest.paths or len(forest.paths) < 2:
                continue
            for x in dict.fromkeys(forest.ends(pid)):
                found = _route_to_other(G, forest, x, free, max_len)
                if found is not None:
                    y, internal = found
                    forest.merge(x, y, internal)
                    free.difference_update(internal)
                    merges += 1
                    progress = True
                    break
    return merges


def _route_to_other(G: Graph, forest: _Forest, x: int, free: set[int], max_len: int):
    me = forest.owner[x]
    parent: dict[int, int | None] = {x: None}
    frontier = [x]
    depth = 0
    while frontier and depth < max_len:
        nxt = []
        for u in frontier:
            for w in G.adj[u]:
                if w in parent:
                    continue
                pid = forest.owner.get(w)
                if pid is not None:
                    if pid != me and forest.is_end(w):
                        internal = []
                        while u != x:
                            internal.append(u)
                            u = parent[u]
                        return w, internal[::-1]
                    continue
                if w in free:
                    parent[w] = u
                    nxt.append(w)
        frontier = nxt
        depth += 1
    return None


def _insert(G: Graph, seq: list[int], pos: dict[int, int], w: int, closed: bool) -> list[int] | None:
    L = len(seq)
    on = sorted(pos[a] for a in G.adj[w] if a in pos)
    onset = set(on)
    for i in on:
        j = i + 1
        if j == L:
            if closed and 0 in onset:
                return seq + [w]
            continue
        if j in onset:
            return seq[: i + 1] + [w] + seq[i + 1 :]
    has = G.has_edge
    for a, i in enumerate(on):
        for j in on[a + 1 :]:
            si, sj = i + 1, j + 1
            if sj == L and not closed:
                continue
            if si != j and has(seq[si], seq[sj % L]):
                return seq[: i + 1] + [w] + seq[i + 1 : j + 1][::-1] + seq[j + 1 :]
            if (i >= 1 or closed) and j - 1 != i and has(seq[i - 1], seq[j - 1]):
                return seq[:i] + seq[i:j][::-1] + [w] + seq[j:]
    return None


def absorb(G: Graph, seq: Sequence[int], free: Iterable[int], closed: bool) -> tuple[list[int], int]:
    """Insert free vertices into a path (endpoints kept) or cycle.

    ``w`` goes between consecutive ``a, b`` when both are neighbours, or via a
    segment reversal when ``w ~ c_i``, ``w ~ c_j`` and the successors (or
    predecessors) of ``c_i`` and ``c_j`` are adjacent.
    """
    seq = list(seq)
    free = set(free) - set(seq)
    added = 0
    changed = True
    while changed and free:
        changed = False
        pos = {v: i for i, v in enumerate(seq)}
        for w in sorted(free):
            new = _insert(G, seq, pos, w, closed)
            if new is not None:
                seq = new
                free.discard(w)
                added += 1
                changed = True
                pos = {v: i for i, v in enumerate(seq)}
    return seq, added


def _rotations(G: Graph, path: list[int], limit: int):
    """Posa rotations fixing ``path[0]``: yields paths with new last vertices."""
    pos = {v: i for i, v in enumerate(path)}
    end = path[-1]
    count = 0
    for w in G.adj[end]:
        i = pos.get(w)
        if i is None or i >= len(path) - 2:
            continue
        yield path[: i + 1] + path[i + 1 :][::-1]
        count += 1
        if count >= limit:
            return


# --------------------------------------------------------------------------
# Reports and the full pipeline


@dataclass
class CoverageReport:
    n: int
    covered: int = 0
    pipeline_covered: int = 0
    status: str = "partial"  # complete | rescued | partial
    initial_paths: int = 0
    rounds: list[RoundStats] = field(default_factory=list)
    fallback_merges: int = 0
    absorbed: int = 0
    closure: str | None = None
    attempts: int = 1
    seed: int = 0
    breakdown: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "covered": self.covered,
            "pipeline_covered": self.pipeline_covered,
            "status": self.status,
            "initial_paths": self.initial_paths,
            "rounds": [r.to_dict() for r in self.rounds],
            "fallback_merges": self.fallback_merges,
            "absorbed": self.absorbed,
            "closure": self.closure,
            "attempts": self.attempts,
            "seed": self.seed,
            "uncovered_breakdown": dict(self.breakdown),
        }


def breakdown(parts: PartitionScheme, covered: set[int]) -> dict:
    X = parts.X
    return {
        "V0_unused": sum(1 for v in parts.V0 if v not in covered),
        "X_missed": sum(1 for v in X if v not in covered),
        "R_unused": sum(1 for v in parts.R if v not in covered),
    }


@dataclass
class PathBuild:
    """Result of the path stage, kept for callers that splice further."""

    system: PathSystem
    parts: PartitionScheme
    report: CoverageReport

    @property
    def path(self) -> list[int] | None:
        if not self.system.paths:
            return None
        return list(max(self.system.paths, key=lambda p: (len(p), [-v for v in p])))


def build_path(
    H: Graph,
    cfg: RunConfig,
    seed: int,
    parts: PartitionScheme | None = None,
    reserved: Iterable[int] = (),
) -> PathBuild:
    """Partition, match, glue and connect; in desk mode also repair.

    ``reserved`` vertices (plus ``V1`` and ``V2``) are never used by the desk
    repairs, so callers can route through them afterwards.
    """
    parts = parts or partition_scheme(H.n, cfg, seed)
    ccfg = ConnectorConfig.from_run(cfg, H.n)
    report = CoverageReport(H.n, seed=seed)
    layers = layer_matchings(H, parts)
    sys0 = glue_forest(layers)
    report.initial_paths = len(sys0.paths)
    forest = _Forest(sys0.paths)
    history = [forest.leaf_count]
    for i, stream in enumerate(parts.streams):
        stats = _round(H, forest, stream, ccfg, i)
        report.rounds.append(stats)
        history.append(forest.leaf_count)
    if len(forest.paths) == 1:
        report.status = "complete"
    longest = max((len(p) for p in forest.paths.values()), default=0)
    report.pipeline_covered = longest
    if cfg.mode == "desk":
        reserved = set(reserved) | set(parts.V1) | set(parts.V2)
        free = set(range(H.n)) - set(forest.owner) - reserved
        if not forest.paths and free:
            start = max(sorted(free), key=lambda v: sum(1 for w in H.adj[v] if w in free))
            forest = _Forest([[start]])
            free.discard(start)
        report.fallback_merges = _merge_free(H, forest, free, ccfg.max_path_len)
        if len(forest.paths) > 1:
            best = max(forest.paths, key=lambda k: (len(forest.paths[k]), -k))
            forest = _Forest([forest.paths[best]])
        elif report.status != "complete" and len(forest.paths) == 1:
            report.status = "rescued"
        history.append(forest.leaf_count)
    system = forest.system(history)
    system.check(H)
    return PathBuild(system, parts, report)


def _free_for(H: Graph, on: Iterable[int], reserved: Iterable[int]) -> set[int]:
    return set(range(H.n)) - set(on) - set(reserved)


def nearly_hamilton_path(H: Graph, cfg: RunConfig | None = None, seed: int = 0):
    """Nearly-spanning path; returns ``(PathSystem, CoverageReport)``.

    ``report.status`` is ``complete`` when the connecting rounds alone left
    one path, ``rescued`` when desk repairs were needed and ``partial`` when
    several paths remain (the system then holds all of them).
    """
    cfg = cfg or RunConfig()
    build = build_path(H, cfg, seed)
    report = build.report
    system = build.system
    if len(system.paths) == 1 and cfg.mode == "desk" and cfg.absorb:
        path = list(system.paths[0])
        if len(path) >= 2:
            path, report.absorbed = absorb(H, path, _free_for(H, path, ()), closed=False)
            system = PathSystem([tuple(path)], system.leaf_count_history)
    covered = system.vertices()
    report.covered = max((len(p) for p in system.paths), default=0)
    report.breakdown = breakdown(build.parts, covered)
    system.check(H)
    return system, report


def close_path(
    H: Graph,
    path: list[int],
    parts: PartitionScheme,
    cfg: RunConfig,
    reserved: Iterable[int] = (),
) -> tuple[list[int], str] | None:
    """Close ``path`` into a cycle through ``V1``, then ``V2``; desk mode also tries
    all unused vertices and Posa rotations."""
    ccfg = ConnectorConfig.from_run(cfg, H.n)
    reserved = set(reserved)
    on = set(path)
    options = [("V1", set(parts.V1) - on - reserved), ("V2", set(parts.V2) - on - reserved)]
    if cfg.mode == "desk":
        options.append(("free", _free_for(H, on, reserved)))
    candidates = [path]
    if cfg.mode == "desk":
        candidates += list(_rotations(H, path, 8))
        candidates += [list(reversed(p)) for p in _rotations(H, list(reversed(path)), 8)]
    for k, cand in enumerate(candidates):
        if len(cand) < 2 or cand[0] == cand[-1]:
            continue
        need = 1 if len(cand) < 3 else 0
        for name, V in options:
            p = route(H, cand[0], cand[-1], V - {cand[0], cand[-1]}, ccfg.max_path_len, need)
            if p is not None:
                label = name if k == 0 else "rotation"
                return cand + list(p[-2:0:-1]), label
    return None


def _attempt_seed(seed: int, k: int) -> int:
    return seed if k == 0 else (seed * 1_000_003 + 7919 * k) % (2**63)


def nearly_hamilton_cycle(H: Graph, cfg: RunConfig | None = None, seed: int = 0):
    """Nearly-spanning cycle; returns ``(closed vertex sequence, CoverageReport)``.

    Retries with derived seeds when closing fails; raises
    :class:`ClosureFailed` carrying the best path when every attempt fails.
    """
    cfg = cfg or RunConfig()
    best_path, best_report = None, None
    for k in range(max(1, cfg.retries)):
        s = _attempt_seed(seed, k)
        build = build_path(H, cfg, s)
        report = build.report
        report.attempts = k + 1
        path = build.path
        if path is None:
            continue
        if len(path) == 1 and cfg.mode == "desk":
            nb = [w for w in H.adj[path[0]] if w not in build.parts.V1 and w not in build.parts.V2]
            if nb:
                path = path + [nb[0]]
        closed = close_path(H, path, build.parts, cfg)
        if closed is None:
            if best_path is None or len(path) > len(best_path):
                best_path, best_report = path, report
            continue
        cycle, report.closure = closed
        if cfg.mode == "desk" and cfg.absorb:
            cycle, report.absorbed = absorb(H, cycle, _free_for(H, cycle, ()), closed=True)
        verdict = verify_cycle(H, cycle)
        if not verdict.ok:
            raise InternalInvariantViolation(f"constructed cycle is invalid: {verdict.reason}")
        report.covered = len(cycle)
        report.breakdown = breakdown(build.parts, set(cycle))
        return cycle + [cycle[0]], report
    raise ClosureFailed("could not close a nearly-spanning path into a cycle", path=best_path, report=best_report)
