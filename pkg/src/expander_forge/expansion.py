"""Expansion checks and neighbourhood computations.

Two notions are checked here:

* edge expansion: ``e(U, U^c) >= lam * d(G) * |U|`` for every ``1 <= |U| <= n/2``;
* robust vertex expansion: ``|N_{G-F}(U)| >= eps * |U| / log2(n)**c`` for every
  ``1 <= |U| <= 2n/3`` and every edge set ``F`` with ``|F| <= s * |U|``.

Exact checks enumerate every subset with numpy bitmask arithmetic and are
limited to small graphs.  Sampled checks inspect spectral sweeps, BFS sweeps
and random sets; they can refute but only ever certify as ``CertifiedSampled``.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import breadth_first_order

from .errors import ConvergenceFailure, DegenerateInput, ExactLimitExceeded, OutOfRange, UnknownEdge
from .graph import Edge, Graph, check_vertex_set
from .rational import as_fraction
from . import rational

EXACT_LIMIT = 20
GUARD = 1e-12
_CHUNK = 1 << 15


@dataclass(frozen=True)
class LambdaParams:
    lam: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lam", as_fraction(self.lam))
        if self.lam <= 0:
            raise ValueError("lambda must be positive")


@dataclass(frozen=True)
class RobustParams:
    eps: Fraction
    c: Fraction
    s: Fraction

    def __post_init__(self):
        for name in ("eps", "c", "s"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.eps <= 0:
            raise ValueError("eps must be positive")
        if self.c < 0 or self.s < 0:
            raise ValueError("c and s must be non-negative")


class Status(str, Enum):
    CERTIFIED_EXACT = "CertifiedExact"
    CERTIFIED_SAMPLED = "CertifiedSampled"
    REFUTED = "Refuted"


@dataclass(frozen=True)
class ExpansionVerdict:
    status: Status
    worst_ratio: Fraction | None = None
    witness_U: tuple[int, ...] | None = None
    witness_F: tuple[Edge, ...] | None = None
    trials: int | None = None

    @property
    def certified(self) -> bool:
        return self.status is not Status.REFUTED

    @property
    def exact(self) -> bool:
        return self.status is Status.CERTIFIED_EXACT

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "trials": self.trials,
            "witness_U": list(self.witness_U) if self.witness_U is not None else None,
            "witness_F": [list(e) for e in self.witness_F] if self.witness_F is not None else None,
            "worst_ratio": rational.to_json(self.worst_ratio),
        }


# --------------------------------------------------------------------------
# Structural quantities


def edge_boundary(G: Graph, U: Iterable[int]) -> int:
    U = check_vertex_set(G, U)
    return sum(1 for v in U for w in G.adj[v] if w not in U)


def _check_edges(G: Graph, F: Iterable[Edge]) -> frozenset[Edge]:
    out = set()
    for u, v in F:
        if not (0 <= u < G.n and 0 <= v < G.n):
            raise OutOfRange(f"edge ({u}, {v}) outside the graph")
        if not G.has_edge(u, v):
            raise UnknownEdge(f"({u}, {v}) is not an edge")
        out.add((min(u, v), max(u, v)))
    return frozenset(out)


def robust_neighborhood(G: Graph, U: Iterable[int], F: Iterable[Edge] = ()) -> frozenset[int]:
    """``N_{G-F}(U)``: vertices outside ``U`` joined to ``U`` by an edge not in ``F``."""
    U = check_vertex_set(G, U)
    F = _check_edges(G, F)
    out = set()
    for v in U:
        for w in G.adj[v]:
            if w not in U and (min(v, w), max(v, w)) not in F:
                out.add(w)
    return frozenset(out)


def heavy_neighborhood(G: Graph, U: Iterable[int], d: int) -> frozenset[int]:
    """Vertices outside ``U`` with at least ``d`` neighbours in ``U``."""
    if d < 1:
        raise ValueError("d must be at least 1")
    U = check_vertex_set(G, U)
    hits: dict[int, int] = {}
    for v in U:
        for w in G.adj[v]:
            if w not in U:
                hits[w] = hits.get(w, 0) + 1
    return frozenset(w for w, k in hits.items() if k >= d)


def ball(G: Graph, X: Iterable[int], i: int) -> frozenset[int]:
    """Vertices at distance at most ``i`` from ``X``."""
    if i < 0:
        raise ValueError("radius must be non-negative")
    X = check_vertex_set(G, X)
    dist = {v: 0 for v in X}
    queue = deque(X)
    while queue:
        v = queue.popleft()
        if dist[v] == i:
            continue
        for w in G.adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return frozenset(dist)


def cheapest_deletion(G: Graph, U: frozenset[int], budget: int) -> tuple[int, tuple[Edge, ...]]:
    """Minimise ``|N_{G-F}(U)|`` over ``|F| <= budget``.

    Deleting an edge only helps once every edge from some outside vertex into
    ``U`` is gone, so the optimum removes whole outside vertices, cheapest
    (fewest edges into ``U``) first.  Returns the residual size and ``F``.
    """
    into: dict[int, list[int]] = {}
    for v in sorted(U):
        for w in G.adj[v]:
            if w not in U:
                into.setdefault(w, []).append(v)
    order = sorted(into, key=lambda w: (len(into[w]), w))
    F: list[Edge] = []
    removed = 0
    for w in order:
        cost = len(into[w])
        if len(F) + cost > budget:
            break
        F.extend((min(v, w), max(v, w)) for v in into[w])
        removed += 1
    return len(into) - removed, tuple(sorted(F))


# --------------------------------------------------------------------------
# Array helpers


@dataclass
class _Arrays:
    deg: np.ndarray
    eu: np.ndarray
    ev: np.ndarray
    csr: sp.csr_matrix = field(repr=False)


def _arrays(G: Graph) -> _Arrays:
    deg = np.fromiter((len(a) for a in G.adj), dtype=np.int64, count=G.n)
    indptr = np.concatenate([[0], np.cumsum(deg)])
    indices = np.fromiter((w for a in G.adj for w in a), dtype=np.int64, count=2 * G.m)
    csr = sp.csr_matrix((np.ones(2 * G.m), indices, indptr), shape=(G.n, G.n))
    src = np.repeat(np.arange(G.n), deg)
    keep = src < indices
    return _Arrays(deg, src[keep], indices[keep], csr)


def _prefix_boundaries(arr: _Arrays, order: np.ndarray) -> np.ndarray:
    """``out[k]`` is the edge boundary of ``order[:k+1]``."""
    n = len(arr.deg)
    pos = np.empty(n, dtype=np.int64)
    pos[order] = np.arange(n)
    last = np.maximum(pos[arr.eu], pos[arr.ev])
    internal = np.cumsum(np.bincount(last, minlength=n))
    return np.cumsum(arr.deg[order]) - 2 * internal


def _best_prefix(order: np.ndarray, bnd: np.ndarray, limit: int) -> tuple[tuple[int, ...], int] | None:
    if limit < 1:
        return None
    ratios = bnd[:limit] / np.arange(1, limit + 1)
    k = int(np.argmin(ratios))
    return tuple(sorted(int(v) for v in order[: k + 1])), int(bnd[k])


def _cut_key(cand: tuple[tuple[int, ...], int]):
    U, b = cand
    return (Fraction(b, len(U)), U)


def _mask_tables(G: Graph) -> tuple[np.ndarray, np.ndarray, list[int]]:
    """Boundary and size for every subset of ``V(G)`` indexed by bitmask."""
    nb = [sum(1 << w for w in G.adj[v]) for v in range(G.n)]
    B = np.zeros(1, dtype=np.int32)
    for k in range(G.n):
        low = np.arange(1 << k, dtype=np.int64)
        inter = np.bitwise_count(low & nb[k]).astype(np.int32)
        B = np.concatenate([B, B + len(G.adj[k]) - 2 * inter])
    sizes = np.bitwise_count(np.arange(1 << G.n, dtype=np.int64)).astype(np.int32)
    return B, sizes, nb


def _mask_to_tuple(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def _lex_smallest(masks: Iterable[int]) -> tuple[int, ...]:
    return min(_mask_to_tuple(int(m)) for m in masks)


# --------------------------------------------------------------------------
# Spectral sweep


def spectral_sweep_cut(G: Graph, iterations: int = 200, tol: float = 1e-9) -> tuple[tuple[int, ...], int] | None:
    """Sweep cut from the second eigenvector of the lazy normalised walk.

    Returns ``(U, e(U, U^c))`` minimising ``e(U, U^c)/|U|`` over sweep prefixes
    with ``|U| <= n/2`` (ties: lexicographically smaller ``U``).  Raises
    :class:`ConvergenceFailure` carrying the same kind of cut computed from the
    unconverged vector if the residual stays above ``tol``.
    """
    if G.n < 2:
        return None
    arr = _arrays(G)
    if np.any(arr.deg == 0):
        raise DegenerateInput("spectral sweep needs a connected graph")
    return _spectral_sweep(G, arr, iterations, tol)


def _spectral_sweep(G: Graph, arr: _Arrays, iterations: int, tol: float):
    n = G.n
    sq = np.sqrt(arr.deg.astype(float))
    dinv = 1.0 / sq
    top = sq / np.linalg.norm(sq)
    x = np.random.default_rng(0).standard_normal(n)
    x -= (x @ top) * top
    x /= np.linalg.norm(x)
    converged = False
    for _ in range(iterations):
        y = 0.5 * (x + dinv * (arr.csr @ (dinv * x)))
        y -= (y @ top) * top
        rho = x @ y
        res = np.linalg.norm(y - rho * x)
        norm = np.linalg.norm(y)
        if norm == 0:
            break
        x = y / norm
        if res < tol:
            converged = True
            break
    f = dinv * x
    order = np.argsort(f, kind="stable")
    limit = n // 2
    cands = []
    for o in (order, order[::-1].copy()):
        best = _best_prefix(o, _prefix_boundaries(arr, o), limit)
        if best is not None:
            cands.append(best)
    cut = min(cands, key=_cut_key)
    assert edge_boundary(G, cut[0]) == cut[1]
    if not converged:
        raise ConvergenceFailure("power iteration did not reach tolerance", candidate=cut)
    return cut


def sweep_candidates(G: Graph, trials: int, seed: int) -> list[tuple[tuple[int, ...], int]]:
    """Heuristic sparse-cut candidates ``(U, boundary)`` with ``1 <= |U| <= n/2``.

    Sources: small components, the spectral sweep (per component), and sweeps
    along BFS orders from random roots and along random permutations.
    """
    n = G.n
    out: list[tuple[tuple[int, ...], int]] = []
    if n < 2:
        return out
    comps = G.components()
    if len(comps) > 1:
        for comp in comps:
            if 2 * len(comp) <= n:
                out.append((tuple(comp), 0))
    arr = _arrays(G)
    limit = n // 2
    rng = random.Random(seed)
    for comp in comps:
        if len(comp) < 2:
            continue
        if len(comps) == 1:
            sub, back = G, None
        else:
            from .graph import induced_subgraph

            sub, back = induced_subgraph(G, comp), comp
        try:
            U, _ = _spectral_sweep(sub, _arrays(sub), 200, 1e-9)
        except ConvergenceFailure as exc:
            U, _ = exc.candidate
        if back is not None:
            U = tuple(back[v] for v in U)
        if 2 * len(U) <= n:
            out.append((U, edge_boundary(G, U)))
    for i in range(trials):
        if i % 4 == 3:
            order = np.array(rng.sample(range(n), n), dtype=np.int64)
        else:
            root = rng.randrange(n)
            reach = breadth_first_order(arr.csr, root, directed=False, return_predecessors=False)
            rest = np.setdiff1d(np.arange(n), reach, assume_unique=True)
            order = np.concatenate([reach, rest]).astype(np.int64)
        best = _best_prefix(order, _prefix_boundaries(arr, order), limit)
        if best is not None:
            out.append(best)
    return out


# --------------------------------------------------------------------------
# Edge (lambda) expansion


def _lambda_exact(G: Graph, lam: Fraction) -> ExpansionVerdict:
    n = G.n
    if G.m == 0:
        return ExpansionVerdict(Status.CERTIFIED_EXACT)
    B, sizes, _ = _mask_tables(G)
    valid = np.nonzero((sizes >= 1) & (2 * sizes <= n))[0]
    if len(valid) == 0:
        return ExpansionVerdict(Status.CERTIFIED_EXACT)
    b = B[valid].astype(np.int64)
    s = sizes[valid].astype(np.int64)
    r = b / s
    rmin = r.min()
    near = valid[r <= rmin + 1e-9]
    best = min(Fraction(int(B[m]), int(sizes[m])) for m in near)
    ties = [m for m in near if Fraction(int(B[m]), int(sizes[m])) == best]
    worst = best * Fraction(n, 2 * G.m)
    if worst < lam:
        return ExpansionVerdict(Status.REFUTED, worst, _lex_smallest(ties), ())
    return ExpansionVerdict(Status.CERTIFIED_EXACT, worst)


def _lambda_sampled(G: Graph, lam: Fraction, trials: int, seed: int) -> ExpansionVerdict:
    if G.m == 0:
        return ExpansionVerdict(Status.CERTIFIED_SAMPLED, trials=trials)
    cands = sweep_candidates(G, trials, seed)
    if not cands:
        return ExpansionVerdict(Status.CERTIFIED_SAMPLED, trials=trials)
    U, b = min(cands, key=_cut_key)
    worst = Fraction(b, len(U)) * Fraction(G.n, 2 * G.m)
    if worst < lam:
        return ExpansionVerdict(Status.REFUTED, worst, U, (), trials)
    return ExpansionVerdict(Status.CERTIFIED_SAMPLED, worst, trials=trials)


def check_lambda_expander(
    G: Graph,
    p: LambdaParams,
    mode: str = "exact",
    trials: int = 64,
    seed: int = 0,
    exact_limit: int = EXACT_LIMIT,
) -> ExpansionVerdict:
    """Check ``e(U, U^c) >= lam * d(G) * |U|`` for all ``1 <= |U| <= n/2``.

    ``mode`` is ``"exact"``, ``"sampled"`` or ``"auto"`` (exact when
    ``n <= exact_limit``).  ``worst_ratio`` is the smallest observed
    ``e(U, U^c) / (d(G)|U|)``; on refutation the witness is the minimiser
    (lexicographically smallest among ties).
    """
    if G.n < 2:
        raise DegenerateInput("expansion needs at least two vertices")
    if mode == "auto":
        mode = "exact" if G.n <= exact_limit else "sampled"
    if mode == "exact":
        if G.n > exact_limit:
            raise ExactLimitExceeded(f"n={G.n} exceeds exact limit {exact_limit}")
        return _lambda_exact(G, p.lam)
    if mode == "sampled":
        return _lambda_sampled(G, p.lam, trials, seed)
    raise ValueError(f"unknown mode {mode!r}")


def lambda_violates(G: Graph, U: Iterable[int], lam: Fraction) -> bool:
    """Recount: does ``U`` violate edge expansion at ``lam``?"""
    U = check_vertex_set(G, U)
    if not U or 2 * len(U) > G.n:
        return False
    return edge_boundary(G, U) * G.n < as_fraction(lam) * 2 * G.m * len(U)


# --------------------------------------------------------------------------
# Robust (vertex) expansion


def _log_power(n: int, c: Fraction) -> Fraction | float:
    """``log2(n)**c``, exactly when that is rational and cheap to see."""
    if c == 0:
        return Fraction(1)
    if n & (n - 1) == 0 and c.denominator == 1:
        return Fraction(n.bit_length() - 1) ** int(c)
    return math.log2(n) ** float(c)


def robust_threshold(n: int, size: int, p: RobustParams) -> Fraction | float:
    """``eps * size / log2(n)**c``; a Fraction when exactly representable."""
    lp = _log_power(n, p.c)
    if isinstance(lp, Fraction):
        return p.eps * size / lp
    return float(p.eps) * size / lp


def robust_meets(n: int, residual: int, size: int, p: RobustParams) -> bool:
    thr = robust_threshold(n, size, p)
    if isinstance(thr, Fraction):
        return residual >= thr
    return residual >= thr * (1 + GUARD)


def _robust_ratio(n: int, residual: int, size: int, p: RobustParams) -> Fraction:
    thr = robust_threshold(n, size, p)
    if isinstance(thr, Fraction):
        return Fraction(residual) / thr
    return Fraction(residual / thr).limit_denominator(10**9)


def robust_budget(size: int, s: Fraction) -> int:
    return math.floor(s * size)


def robust_violates(G: Graph, U: Iterable[int], F: Iterable[Edge], p: RobustParams) -> bool:
    """Recount: is ``(U, F)`` a counterexample to robust expansion at ``p``?"""
    U = check_vertex_set(G, U)
    F = _check_edges(G, F)
    if not U or 3 * len(U) > 2 * G.n or len(F) > robust_budget(len(U), p.s):
        return False
    return not robust_meets(G.n, len(robust_neighborhood(G, U, F)), len(U), p)


def _robust_exact(G: Graph, p: RobustParams) -> ExpansionVerdict:
    n = G.n
    nb = [sum(1 << w for w in G.adj[v]) for v in range(n)]
    budget = np.array([robust_budget(k, p.s) for k in range(n + 1)], dtype=np.int64)
    big = np.int64(1 << 40)
    # The threshold is linear in |U|, so minimising residual/|U| finds the worst set.
    best_ratio: float | None = None
    tied: list[int] = []
    for start in range(1, 1 << n, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, 1 << n), dtype=np.int64)
        sizes = np.bitwise_count(masks).astype(np.int64)
        keep = 3 * sizes <= 2 * n
        masks, sizes = masks[keep], sizes[keep]
        if len(masks) == 0:
            continue
        costs = np.empty((n, len(masks)), dtype=np.int64)
        for w in range(n):
            cnt = np.bitwise_count(masks & nb[w]).astype(np.int64)
            inside = (masks >> w) & 1
            costs[w] = np.where((inside == 1) | (cnt == 0), big, cnt)
        costs.sort(axis=0)
        nbr = (costs < big).sum(axis=0)
        removable = (np.cumsum(costs, axis=0) <= budget[sizes]).sum(axis=0)
        ratio = (nbr - np.minimum(removable, nbr)) / sizes
        lo = float(ratio.min())
        if best_ratio is not None and lo > best_ratio + 1e-9:
            continue
        here = [int(m) for m in masks[ratio <= lo + 1e-9]]
        if best_ratio is None or lo < best_ratio - 1e-9:
            best_ratio, tied = lo, here
        else:
            tied.extend(here)
    if best_ratio is None:
        return ExpansionVerdict(Status.CERTIFIED_EXACT)
    U = frozenset(_lex_smallest(tied))
    res, F = cheapest_deletion(G, U, robust_budget(len(U), p.s))
    ratio = _robust_ratio(n, res, len(U), p)
    if not robust_meets(n, res, len(U), p):
        return ExpansionVerdict(Status.REFUTED, ratio, tuple(sorted(U)), F)
    return ExpansionVerdict(Status.CERTIFIED_EXACT, ratio)


def _robust_candidates(G: Graph, trials: int, seed: int) -> list[frozenset[int]]:
    n = G.n
    cap = (2 * n) // 3
    rng = random.Random(seed)
    out: list[frozenset[int]] = [frozenset([v]) for v in range(n)]
    for comp in G.components():
        if len(comp) <= cap:
            out.append(frozenset(comp))
    for U, _ in sweep_candidates(G, max(1, trials // 4), seed):
        out.append(frozenset(U))
    arr = _arrays(G)
    for _ in range(trials):
        root = rng.randrange(n)
        order = breadth_first_order(arr.csr, root, directed=False, return_predecessors=False)
        size = rng.randint(1, max(1, min(cap, len(order))))
        out.append(frozenset(int(v) for v in order[:size]))
        size = rng.randint(1, max(1, cap))
        out.append(frozenset(rng.sample(range(n), size)))
    return [U for U in out if 1 <= len(U) <= cap]


def check_robust_expander(
    G: Graph,
    p: RobustParams,
    trials: int = 64,
    mode: str = "auto",
    seed: int = 0,
    exact_limit: int = EXACT_LIMIT,
) -> ExpansionVerdict:
    """Check robust vertex expansion against the cheapest-first edge adversary.

    ``worst_ratio`` is ``min |N_{G-F}(U)| * log2(n)**c / (eps * |U|)`` over the
    inspected sets; a value below 1 means a violation.
    """
    if G.n < 2:
        raise DegenerateInput("expansion needs at least two vertices")
    if mode == "auto":
        mode = "exact" if G.n <= exact_limit else "sampled"
    if mode == "exact":
        if G.n > exact_limit:
            raise ExactLimitExceeded(f"n={G.n} exceeds exact limit {exact_limit}")
        return _robust_exact(G, p)
    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    best = None
    for U in _robust_candidates(G, trials, seed):
        res, F = cheapest_deletion(G, U, robust_budget(len(U), p.s))
        ratio = _robust_ratio(G.n, res, len(U), p)
        key = (robust_meets(G.n, res, len(U), p), ratio, tuple(sorted(U)))
        if best is None or key < best[0]:
            best = (key, U, F, ratio)
    assert best is not None
    (meets, _, _), U, F, ratio = best
    if not meets:
        return ExpansionVerdict(Status.REFUTED, ratio, tuple(sorted(U)), F, trials)
    return ExpansionVerdict(Status.CERTIFIED_SAMPLED, ratio, trials=trials)


# --------------------------------------------------------------------------
# Stars or bipartite


class WitnessKind(str, Enum):
    STARS = "Stars"
    BIPARTITE = "Bipartite"
    NONE = "NoneFound"


@dataclass(frozen=True)
class StarsOrBipartiteWitness:
    kind: WitnessKind
    r: int
    t: int
    stars: tuple[tuple[int, tuple[int, ...]], ...] = ()
    X: tuple[int, ...] = ()
    bipartite_edges: tuple[Edge, ...] = ()

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "r": self.r,
            "t": self.t,
            "stars": [{"center": c, "leaves": list(ls)} for c, ls in self.stars],
            "X": list(self.X),
            "bipartite_edges": [list(e) for e in self.bipartite_edges],
        }


def stars_or_bipartite(G: Graph, U: Iterable[int], r: int, t: int, p: RobustParams) -> StarsOrBipartiteWitness:
    """Find many disjoint ``t``-stars centred in ``U`` or a bipartite ``(U, X)`` witness.

    Stars succeed when ``10 r * #stars >= |U|``.  The bipartite structure adds
    outside vertices one at a time, each with ``r`` edges into ``U`` while no
    ``U``-vertex exceeds degree ``2t``; it succeeds when
    ``|X| >= eps |U| / (2 log2(n)**c)``.  On failure both partial structures
    are returned.
    """
    if r < 1 or t < 1:
        raise ValueError("r and t must be at least 1")
    U = check_vertex_set(G, U)
    used: set[int] = set()
    stars = []
    for u in sorted(U):
        free = [w for w in G.adj[u] if w not in U and w not in used]
        if len(free) >= t:
            leaves = tuple(free[:t])
            used.update(leaves)
            stars.append((u, leaves))
    if stars and 10 * r * len(stars) >= len(U):
        return StarsOrBipartiteWitness(WitnessKind.STARS, r, t, stars=tuple(stars))

    load = dict.fromkeys(U, 0)
    X: list[int] = []
    edges: list[Edge] = []
    outside = sorted({w for u in U for w in G.adj[u] if w not in U})
    for w in outside:
        pick = [u for u in G.adj[w] if u in U and load[u] < 2 * t][:r]
        if len(pick) < r:
            continue
        X.append(w)
        for u in pick:
            load[u] += 1
            edges.append((min(u, w), max(u, w)))
    half = RobustParams(p.eps / 2, p.c, p.s)
    if X and U and robust_meets(G.n, len(X), len(U), half):
        return StarsOrBipartiteWitness(WitnessKind.BIPARTITE, r, t, X=tuple(X), bipartite_edges=tuple(sorted(edges)))
    return StarsOrBipartiteWitness(
        WitnessKind.NONE, r, t, stars=tuple(stars), X=tuple(X), bipartite_edges=tuple(sorted(edges))
    )
