"""Subdivisions, packings of subdivisions, cycle partitions and chord-rich cycles."""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .config import RunConfig
from .cover import Cover, cover_strong
from .errors import (
    ClosureFailed,
    Degenerate,
    EmptyPattern,
    InsufficientDensity,
    InternalInvariantViolation,
    NotFound,
    PreconditionViolated,
)
from .graph import Edge, Graph, complete, degree_stats, edge_subgraph, induced_subgraph
from .hamilton import absorb, build_path, nearly_hamilton_cycle, partition_scheme, route
from .verify import CycleVerdict, verify_cycle


# --------------------------------------------------------------------------
# Subdivision type and verifier


@dataclass(frozen=True)
class Subdivision:
    pattern: Graph
    branch: Mapping[int, int]
    edge_paths: Mapping[Edge, tuple[int, ...]]

    def vertices(self) -> set[int]:
        out = set(self.branch.values())
        for p in self.edge_paths.values():
            out.update(p)
        return out

    def relabel(self, ids: Sequence[int]) -> Subdivision:
        """Map every host vertex ``v`` to ``ids[v]``."""
        return Subdivision(
            self.pattern,
            {a: ids[v] for a, v in self.branch.items()},
            {e: tuple(ids[v] for v in p) for e, p in self.edge_paths.items()},
        )

    def to_dict(self) -> dict:
        return {
            "branch": {str(a): v for a, v in sorted(self.branch.items())},
            "paths": {f"{a}-{b}": list(p) for (a, b), p in sorted(self.edge_paths.items())},
        }

    @classmethod
    def from_dict(cls, pattern: Graph, data: Mapping) -> Subdivision:
        branch = {int(a): int(v) for a, v in data["branch"].items()}
        paths = {}
        for key, p in data["paths"].items():
            a, b = (int(x) for x in key.split("-"))
            paths[(a, b)] = tuple(int(v) for v in p)
        return cls(pattern, branch, paths)


@dataclass(frozen=True)
class SubdivisionVerdict:
    ok: bool
    reason: str | None = None
    detail: str | None = None

    def to_dict(self) -> dict:
        return {"ok": self.ok, "reason": self.reason, "detail": self.detail}


def verify_subdivision(G: Graph, F: Graph, s: Subdivision) -> SubdivisionVerdict:
    """Check every defining condition of a subdivision of ``F`` in ``G``; report the first failure."""

    def bad(reason: str, detail=None) -> SubdivisionVerdict:
        return SubdivisionVerdict(False, reason, None if detail is None else str(detail))

    if set(s.branch) != set(range(F.n)):
        return bad("BranchDomain", sorted(s.branch))
    images = list(s.branch.values())
    if any(not isinstance(v, int) or not 0 <= v < G.n for v in images):
        return bad("OutOfRange")
    if len(set(images)) != len(images):
        return bad("BranchNotInjective")
    want = set(F.edges())
    have = set(s.edge_paths)
    if want - have:
        return bad("MissingEdgePath", min(want - have))
    if have - want:
        return bad("ExtraEdgePath", min(have - want))
    branch_set = set(images)
    seen: dict[int, Edge] = {}
    for e in sorted(want):
        p = s.edge_paths[e]
        a, b = e
        if len(p) < 2 or p[0] != s.branch[a] or p[-1] != s.branch[b]:
            return bad("EndpointMismatch", e)
        if any(not isinstance(v, int) or not 0 <= v < G.n for v in p):
            return bad("OutOfRange", e)
        for x, y in zip(p, p[1:]):
            if not G.has_edge(x, y):
                return bad("NotAnEdge", (x, y))
        if len(set(p)) != len(p):
            return bad("RepeatedVertex", e)
        for v in p[1:-1]:
            if v in branch_set:
                return bad("InternalHitsBranch", (e, v))
            if v in seen:
                return bad("InternalOverlap", (seen[v], e, v))
            seen[v] = e
    return SubdivisionVerdict(True)


# --------------------------------------------------------------------------
# Clique subdivisions


def _bfs_dist(G: Graph, src: int, blocked: set[int], targets: set[int]) -> dict[int, int]:
    dist = {src: 0}
    frontier = [src]
    while frontier:
        nxt = []
        for u in frontier:
            for w in G.adj[u]:
                if w in dist:
                    continue
                dist[w] = dist[u] + 1
                if w not in blocked:
                    nxt.append(w)
        frontier = nxt
    return {t: dist[t] for t in targets if t in dist}


def _choose_branches(G: Graph, p: int, order: list[int]) -> list[int]:
    """Highest-degree vertices, pairwise at distance >= 3 where possible."""
    picked: list[int] = []
    near: set[int] = set()
    for v in order:
        if len(picked) == p:
            break
        if G.degree(v) >= p - 1 and v not in near:
            picked.append(v)
            near.add(v)
            near.update(G.adj[v])
            for w in G.adj[v]:
                near.update(G.adj[w])
    for v in order:
        if len(picked) == p:
            break
        if v not in picked and G.degree(v) >= p - 1:
            picked.append(v)
    return picked


def _route_all(G: Graph, branches: list[int], budget: int, max_len: int):
    """Connect every pair of branch vertices by internally disjoint paths, or report the first failure."""
    bset = set(branches)
    allowed = set(range(G.n)) - bset
    pairs = [(i, j) for i in range(len(branches)) for j in range(i + 1, len(branches))]
    dist = {}
    for i, v in enumerate(branches):
        d = _bfs_dist(G, v, bset, bset)
        for j in range(i + 1, len(branches)):
            dist[(i, j)] = d.get(branches[j], math.inf)
    pairs.sort(key=lambda e: (dist[e], e))
    used: set[int] = set()
    paths: dict[tuple[int, int], list[int]] = {}
    stack: list[tuple[int, int]] = []

    def go(e):
        return route(G, branches[e[0]], branches[e[1]], allowed - used, max_len)

    for e in pairs:
        p = go(e)
        if p is None and stack and budget > 0:
            budget -= 1
            k = stack[-1]
            old = paths.pop(k)
            used.difference_update(old[1:-1])
            p = go(e)
            if p is not None:
                used.update(p[1:-1])
                pk = go(k)
                if pk is None:
                    used.difference_update(p[1:-1])
                    p = None
                else:
                    paths[k] = pk
                    used.update(pk[1:-1])
                    used.difference_update(p[1:-1])
            if p is None:
                paths[k] = old
                used.update(old[1:-1])
        if p is None:
            return None, e
        paths[e] = p
        used.update(p[1:-1])
        stack.append(e)
    return paths, None


def find_clique_subdivision(
    G: Graph, p: int, attempts: int = 8, seed: int = 0, max_len: int | None = None, budget: int = 16
) -> Subdivision:
    """A subdivision of ``K_p`` found greedily.

    Branch vertices are high-degree vertices spread out where possible; pairs
    are joined by shortest available paths in increasing order of distance,
    with one-step rip-up on failure.  Later attempts perturb the branch
    order.  Raises :class:`NotFound` naming the pair that could not be joined.
    """
    if p < 1:
        raise PreconditionViolated("p must be positive")
    pattern = complete(p)
    if G.n < p:
        raise NotFound(f"graph has fewer than {p} vertices")
    max_len = max_len or G.n
    base = sorted(range(G.n), key=lambda v: (-G.degree(v), v))
    rng = random.Random(seed)
    failed = None
    for k in range(max(1, attempts)):
        order = list(base)
        if k:
            head = order[: max(4 * p, 16)]
            rng.shuffle(head)
            order = head + order[len(head) :]
        branches = _choose_branches(G, p, order)
        if len(branches) < p:
            raise NotFound(f"fewer than {p} vertices of degree >= {p - 1}")
        paths, fail = _route_all(G, branches, budget, max_len)
        if paths is None:
            failed = (branches[fail[0]], branches[fail[1]])
            continue
        s = Subdivision(pattern, {i: v for i, v in enumerate(branches)}, {e: tuple(q) for e, q in paths.items()})
        verdict = verify_subdivision(G, pattern, s)
        if not verdict.ok:
            raise InternalInvariantViolation(f"constructed subdivision invalid: {verdict.reason}")
        return s
    raise NotFound(f"could not join branch pair {failed}", failed_pair=failed)


def _sorted_branches(s: Subdivision) -> Subdivision:
    """Renumber the branch vertices of a clique subdivision in increasing host id."""
    order = sorted(s.branch, key=lambda a: s.branch[a])
    new_of = {a: i for i, a in enumerate(order)}
    paths = {}
    for (a, b), p in s.edge_paths.items():
        x, y = new_of[a], new_of[b]
        paths[(min(x, y), max(x, y))] = p if x < y else tuple(reversed(p))
    return Subdivision(s.pattern, {new_of[a]: v for a, v in s.branch.items()}, paths)


def pattern_injection(F: Graph) -> dict[int, int]:
    """Map ``V(F)`` into ``K_f``: the first edge ``(a, b)`` goes to ``(0, 1)``, the rest in order."""
    edges = F.edges()
    a, b = edges[0]
    rest = [v for v in range(F.n) if v not in (a, b)]
    return {a: 0, b: 1, **{v: i + 2 for i, v in enumerate(rest)}}


def prune_to_pattern(K: Subdivision, F: Graph, phi: Mapping[int, int]) -> Subdivision:
    """Keep the paths of the clique subdivision ``K`` that realise the edges of ``F`` under ``phi``."""
    paths = {}
    for a, b in F.edges():
        x, y = phi[a], phi[b]
        p = K.edge_paths[(min(x, y), max(x, y))]
        paths[(a, b)] = p if x < y else tuple(reversed(p))
    return Subdivision(F, {a: K.branch[phi[a]] for a in range(F.n)}, paths)


# --------------------------------------------------------------------------
# Packings


@dataclass
class MemberOutcome:
    index: int
    size: int
    status: str  # spliced | clique_only | skipped
    reason: str | None = None
    covered: int = 0

    def to_dict(self) -> dict:
        return {"index": self.index, "size": self.size, "status": self.status, "reason": self.reason, "covered": self.covered}


@dataclass
class Packing:
    pattern: Graph
    n: int
    elements: list[Subdivision]
    uncovered: tuple[int, ...]
    breakdown: dict = field(default_factory=dict)
    members: list[MemberOutcome] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def coverage(self) -> int:
        return self.n - len(self.uncovered)

    def check(self, G: Graph) -> None:
        seen: set[int] = set()
        for s in self.elements:
            verdict = verify_subdivision(G, self.pattern, s)
            if not verdict.ok:
                raise InternalInvariantViolation(f"packing element invalid: {verdict.reason}")
            vs = s.vertices()
            if vs & seen:
                raise InternalInvariantViolation("packing elements overlap")
            seen |= vs
        if seen | set(self.uncovered) != set(range(self.n)) or seen & set(self.uncovered):
            raise InternalInvariantViolation("uncovered set does not complement the packing")
        if sum(self.breakdown.values()) != len(self.uncovered):
            raise InternalInvariantViolation("uncovered breakdown does not add up")

    def to_dict(self) -> dict:
        return {
            "pattern": {"n": self.pattern.n, "edges": [list(e) for e in self.pattern.edges()]},
            "n": self.n,
            "coverage": self.coverage,
            "elements": [s.to_dict() for s in self.elements],
            "uncovered": list(self.uncovered),
            "uncovered_breakdown": dict(self.breakdown),
            "members": [m.to_dict() for m in self.members],
            "warnings": list(self.warnings),
        }


def _splice(H: Graph, F: Graph, cfg: RunConfig, seed: int) -> tuple[Subdivision | None, str, str | None]:
    """Build one subdivision of ``F`` covering most of ``H`` (local ids)."""
    f = F.n
    parts = partition_scheme(H.n, cfg, seed)
    phi = pattern_injection(F)
    R = list(parts.R)
    K = None
    try:
        sub = induced_subgraph(H, R)
        K = find_clique_subdivision(sub, f, seed=seed).relabel(R)
    except NotFound as exc:
        if cfg.mode == "paper":
            return None, "skipped", f"no clique subdivision in R: {exc}"
    if K is None:
        # desk fallback: search the whole member, then rebuild the partition around it
        try:
            K = find_clique_subdivision(H, f, seed=seed)
        except NotFound as exc:
            return None, "skipped", f"no clique subdivision: {exc}"
    K = _sorted_branches(K)
    reserved = K.vertices()
    if reserved & (set(parts.V1) | set(parts.V2) | set(parts.V0) | parts.X):
        parts = _carve(parts, reserved)
    build = build_path(H, cfg, seed, parts, reserved)
    P = build.path
    v1, v2 = K.branch[0], K.branch[1]
    base = prune_to_pattern(K, F, phi)
    if P is None or len(P) < 2:
        return _finish(H, base, cfg), "clique_only", "no usable path"
    on = set(P) | reserved
    cap = max(cfg.path_len_for(H.n), 2)
    V1 = set(parts.V1) - on
    V2 = set(parts.V2) - on
    spliced = None
    for a, b in ((P[0], P[-1]), (P[-1], P[0])):
        c1 = route(H, a, v1, V1, cap)
        if c1 is None:
            continue
        c2 = route(H, b, v2, V2 - set(c1), cap)
        if c2 is None:
            continue
        spliced = _join(c1, P if a == P[0] else P[::-1], c2)
        break
    if spliced is None and cfg.mode == "desk":
        free = set(range(H.n)) - on
        for a, b in ((P[0], P[-1]), (P[-1], P[0])):
            c1 = route(H, a, v1, free, cap)
            if c1 is None:
                continue
            c2 = route(H, b, v2, free - set(c1), cap)
            if c2 is None:
                continue
            spliced = _join(c1, P if a == P[0] else P[::-1], c2)
            break
    if spliced is None:
        return _finish(H, base, cfg), "clique_only", "could not connect the path to the branch vertices"
    a, b = F.edges()[0]
    paths = dict(base.edge_paths)
    paths[(a, b)] = tuple(spliced)
    return _finish(H, Subdivision(F, base.branch, paths), cfg), "spliced", None


def _carve(parts, reserved: set[int]):
    """Move the vertices of the clique subdivision into ``R``."""
    from dataclasses import replace

    def drop(seq):
        return tuple(v for v in seq if v not in reserved)

    return replace(
        parts,
        V0=drop(parts.V0),
        V_prime=drop(parts.V_prime),
        V1=drop(parts.V1),
        V2=drop(parts.V2),
        streams=tuple(drop(s) for s in parts.streams),
        layers=tuple(drop(x) for x in parts.layers),
        R=tuple(sorted(set(parts.R) | reserved)),
    )


def _join(c1: list[int], P: list[int], c2: list[int]) -> list[int]:
    # c1: P[0] -> v1, c2: P[-1] -> v2; result runs v1 .. P .. v2
    return list(reversed(c1)) + list(P[1:-1]) + list(c2)


def _finish(H: Graph, s: Subdivision, cfg: RunConfig) -> Subdivision:
    """Absorb unused vertices into the edge paths (ends fixed), longest path first."""
    if cfg.mode != "desk" or not cfg.absorb:
        return s
    paths = dict(s.edge_paths)
    used = s.vertices()
    for e in sorted(paths, key=lambda e: (-len(paths[e]), e)):
        free = set(range(H.n)) - used
        if not free:
            break
        new, added = absorb(H, paths[e], free, closed=False)
        if added:
            paths[e] = tuple(new)
            used.update(new)
    return Subdivision(s.pattern, s.branch, paths)


def pack_f_subdivisions(G: Graph, F: Graph, cfg: RunConfig | None = None) -> Packing:
    """Vertex-disjoint subdivisions of ``F`` covering most of ``G``.

    Runs :func:`cover_strong`, then in each member ``H``: finds a clique
    subdivision ``K`` on ``|F|`` branch vertices inside the remainder part,
    builds a nearly-spanning path ``P`` on the rest, joins the ends of ``P``
    to the first two branch vertices through ``V1`` and ``V2``, and uses that
    long path in place of the corresponding edge path of ``K``.  Paths of
    ``K`` not needed for ``F`` are dropped.  Members where a step fails are
    reported and either keep the plain clique subdivision or are skipped.
    """
    cfg = cfg or RunConfig()
    if F.m == 0:
        raise EmptyPattern("pattern has no edges")
    notes = []
    st = degree_stats(G)
    if G.m == 0:
        return Packing(F, G.n, [], tuple(range(G.n)), {"outside_cover": G.n})
    d = st.max
    L = math.log2(max(G.n, 2))
    if F.n > math.sqrt(d) / L**2:
        msg = f"pattern size {F.n} exceeds sqrt(d)/(log n)^2 = {math.sqrt(d) / L**2:.3g}"
        if cfg.mode == "paper":
            raise PreconditionViolated(msg)
        warnings.warn(msg, stacklevel=2)
        notes.append(msg)
    cover = cover_strong(G, d, cfg.C, cfg.alpha, cfg)
    elements, outcomes = [], []
    member_unused = 0
    for idx, mem in enumerate(cover.members):
        H = mem.H
        size = H.n
        if H.n < F.n or H.m == 0:
            outcomes.append(MemberOutcome(idx, size, "skipped", "member too small"))
            member_unused += size
            continue
        s, status, reason = _splice(H, F, cfg, cfg.seed + 7919 * idx)
        if s is None:
            outcomes.append(MemberOutcome(idx, size, status, reason))
            member_unused += size
            continue
        verdict = verify_subdivision(H, F, s)
        if not verdict.ok:
            raise InternalInvariantViolation(f"member subdivision invalid: {verdict.reason}")
        s = s.relabel(mem.vertices)
        got = len(s.vertices())
        elements.append(s)
        member_unused += size - got
        outcomes.append(MemberOutcome(idx, size, status, reason, got))
    covered = set().union(*(s.vertices() for s in elements)) if elements else set()
    uncovered = tuple(v for v in range(G.n) if v not in covered)
    packing = Packing(
        F,
        G.n,
        elements,
        uncovered,
        {"outside_cover": len(cover.uncovered), "member_unused": member_unused},
        outcomes,
        notes,
    )
    packing.check(G)
    return packing


# --------------------------------------------------------------------------
# Cycle partition


@dataclass
class CyclePartition:
    n: int
    d: int
    cycles: list[list[int]]
    cap: int
    candidates: int
    failed_members: int
    skipped_cover: int

    @property
    def covered(self) -> int:
        return sum(len(c) for c in self.cycles)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "cap": self.cap,
            "cycles": [list(c) + [c[0]] for c in self.cycles],
            "covered": self.covered,
            "candidates": self.candidates,
            "failed_members": self.failed_members,
            "outside_cover": self.skipped_cover,
        }


def cycle_partition(G: Graph, cfg: RunConfig | None = None) -> CyclePartition:
    """At most ``floor(n/(d+1))`` vertex-disjoint cycles, ``d`` the maximum degree.

    One nearly-spanning cycle per cover member; the longest ones are kept.
    """
    cfg = cfg or RunConfig()
    st = degree_stats(G) if G.n else None
    d = st.max if st else 0
    cap = G.n // (d + 1) if G.n else 0
    if G.m == 0:
        return CyclePartition(G.n, d, [], cap, 0, 0, G.n)
    cover = cover_strong(G, d, cfg.C, cfg.alpha, cfg)
    cycles, failed = [], 0
    for idx, mem in enumerate(cover.members):
        if mem.H.n < 3:
            failed += 1
            continue
        try:
            cyc, _ = nearly_hamilton_cycle(mem.H, cfg, cfg.seed + 7919 * idx)
        except ClosureFailed:
            failed += 1
            continue
        cycles.append([mem.vertices[v] for v in cyc[:-1]])
    candidates = len(cycles)
    cycles.sort(key=lambda c: (-len(c), c))
    cycles = cycles[:cap]
    if len(cycles) > cap:
        raise InternalInvariantViolation("cycle count exceeds n/(d+1)")
    seen: set[int] = set()
    for c in cycles:
        if not verify_cycle(G, c).ok or seen & set(c):
            raise InternalInvariantViolation("cycle partition invalid")
        seen |= set(c)
    return CyclePartition(G.n, d, cycles, cap, candidates, failed, len(cover.uncovered))


# --------------------------------------------------------------------------
# Regularising and chord-rich cycles


def _core(G: Graph) -> Graph:
    """Repeatedly drop isolated vertices and vertices below half the average degree."""
    while True:
        if G.m == 0:
            return G
        keep = [v for v in range(G.n) if G.degree(v) > 0 and G.degree(v) * G.n >= G.m]
        if len(keep) == G.n:
            return G
        G = induced_subgraph(G, keep)


def almost_regularise(G: Graph, d: int | None = None) -> Graph:
    """A subgraph with ``max degree <= 4 * min degree``.

    Keeps the degree class ``[2^k, 2^(k+1))`` spanning the most edges and
    peels it to its half-average core until the ratio holds.  When no degree
    class spans an edge, falls back to a maximal matching.  Vertex labels map
    back to ``G``.
    """
    st = degree_stats(G) if G.n else None
    if G.m == 0:
        raise Degenerate("graph has no edges")
    if d is not None and d > st.max:
        raise PreconditionViolated(f"target {d} exceeds the maximum degree {st.max}")
    H = _core(G)
    while True:
        degs = H.degrees()
        if max(degs) <= 4 * min(degs):
            return H
        classes: dict[int, list[int]] = {}
        for v, k in enumerate(degs):
            classes.setdefault(k.bit_length(), []).append(v)
        best, best_m = None, 0
        for k in sorted(classes):
            vs = set(classes[k])
            m = sum(1 for v in vs for w in H.adj[v] if w in vs) // 2
            if m >= best_m and m > 0:
                best, best_m = k, m
        if best is None:
            taken: set[int] = set()
            match = []
            for u, v in H.edges():
                if u not in taken and v not in taken:
                    match.append((u, v))
                    taken.update((u, v))
            return edge_subgraph(H, match)
        H = _core(induced_subgraph(H, classes[best]))
        if H.m == 0:
            raise Degenerate("peeling removed every edge")


def regularity_constant(G: Graph, H: Graph) -> float:
    """``c0`` with ``d(H) = d(G) / (c0 log2 n)``."""
    L = math.log2(max(G.n, 2))
    return float(G.avg_degree()) / (float(H.avg_degree()) * L)


@dataclass
class CycleWithChords:
    cycle: list[int]
    chords: int
    success: bool
    c0: float | None = None
    regular_n: int = 0

    def to_dict(self) -> dict:
        return {
            "cycle": list(self.cycle) + [self.cycle[0]] if self.cycle else [],
            "length": len(self.cycle),
            "chords": self.chords,
            "success": self.success,
            "c0": self.c0,
            "regularised_n": self.regular_n,
        }


def chord_rich_cycle(G: Graph, cfg: RunConfig | None = None) -> CycleWithChords:
    """A cycle ``C`` of ``G`` with at least ``|C|`` chords (``success`` flags the outcome).

    Regularises ``G``, covers the result by expanders, takes the largest
    member and builds a nearly-spanning cycle in it.  Chords are counted in
    ``G``.
    """
    cfg = cfg or RunConfig()
    if G.n == 0 or G.avg_degree() < cfg.density_floor:
        raise InsufficientDensity(f"average degree below {cfg.density_floor}")
    A = almost_regularise(G)
    pos = {lab: v for v, lab in enumerate(G.labels)}
    c0 = regularity_constant(G, A)
    cover = cover_strong(A, None, cfg.C, cfg.alpha, cfg)
    best = None
    for idx, mem in sorted(enumerate(cover.members), key=lambda x: (-x[1].H.n, x[0])):
        if mem.H.n < 3:
            continue
        try:
            cyc, _ = nearly_hamilton_cycle(mem.H, cfg, cfg.seed + idx)
        except ClosureFailed:
            continue
        ids = [pos[A.labels[mem.vertices[v]]] for v in cyc[:-1]]
        verdict: CycleVerdict = verify_cycle(G, ids)
        if not verdict.ok:
            raise InternalInvariantViolation(f"cycle invalid in G: {verdict.reason}")
        if best is None or verdict.chords - verdict.length > best.chords - len(best.cycle):
            best = CycleWithChords(ids, verdict.chords, verdict.chords >= verdict.length, c0, A.n)
        if best.success:
            break
    if best is None:
        return CycleWithChords([], 0, False, c0, A.n)
    return best
