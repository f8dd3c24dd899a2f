"""Extract a nearly-regular edge expander from a graph by peeling.

The loop keeps a current vertex set ``F``:

1. if some vertex has degree below ``d(F)/2``, remove the one of minimum
   degree (smallest id on ties);
2. otherwise look for a sparse cut ``U`` (``|U| <= |F|/2`` and
   ``e(U, U^c) < lam * d(F) * |U|``); if there is none, stop;
3. otherwise move to ``F[U^c]`` if that does not lower the average degree,
   else to ``F[U]``, whose average degree is then at least ``(1 - 2 lam) d(F)``.

Step 1 never lowers the average degree and step 3 lowers it only when the
vertex count at least halves, so the output satisfies
``d(H) >= (1 - 2 lam * floor(log2 n)) * d(G)`` and ``delta(H) >= d(H)/2``.
"""

from __future__ import annotations

import heapq
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegenerateInput, InternalInvariantViolation
from .expansion import (
    EXACT_LIMIT,
    ExpansionVerdict,
    LambdaParams,
    Status,
    _cut_key,
    _lambda_exact,
    sweep_candidates,
)
from .graph import DegreeStats, Graph, degree_stats, induced_subgraph
from . import rational


def _search(G: Graph, lam: Fraction, mode: str, trials: int, seed: int, exact_limit: int) -> ExpansionVerdict:
    n = G.n
    if n < 2 or G.m == 0:
        status = Status.CERTIFIED_EXACT if mode == "exact" or n <= exact_limit else Status.CERTIFIED_SAMPLED
        return ExpansionVerdict(status)
    comps = G.components()
    if len(comps) > 1:
        smallest = min(comps, key=lambda c: (len(c), c))
        return ExpansionVerdict(Status.REFUTED, Fraction(0), tuple(smallest), ())
    if mode == "auto":
        mode = "exact" if n <= exact_limit else "sampled"
    if mode == "exact":
        return _lambda_exact(G, lam)
    best = None
    for cand in sweep_candidates(G, trials, seed):
        U, b = cand
        if b * n < lam * 2 * G.m * len(U) and (best is None or _cut_key(cand) < _cut_key(best)):
            best = cand
    if best is None:
        return ExpansionVerdict(Status.CERTIFIED_SAMPLED, trials=trials)
    U, b = best
    return ExpansionVerdict(Status.REFUTED, Fraction(b, len(U)) * Fraction(n, 2 * G.m), U, (), trials)


def sparse_cut(
    G: Graph,
    p: LambdaParams,
    mode: str = "auto",
    trials: int = 16,
    seed: int = 0,
    exact_limit: int = EXACT_LIMIT,
) -> tuple[int, ...] | None:
    """A set ``U`` with ``|U| <= n/2`` and ``e(U, U^c) < lam * d(G) * |U|``, or None.

    A disconnected graph yields its smallest component directly.  Otherwise
    the search is exhaustive for ``n <= exact_limit`` (``mode="auto"``) and
    heuristic above that.
    """
    if G.n < 2:
        raise DegenerateInput("sparse cut needs at least two vertices")
    verdict = _search(G, p.lam, mode, trials, seed, exact_limit)
    return verdict.witness_U if verdict.status is Status.REFUTED else None


@dataclass(frozen=True)
class Step:
    kind: str  # "LowDegreeRemoval" or "CutDescent"
    before: DegreeStats
    after: DegreeStats
    n_before: int
    n_after: int
    vertex: int | None = None
    side: str | None = None  # "U" or "complement"
    cut_size: int | None = None

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "n_before": self.n_before,
            "n_after": self.n_after,
            "before": _stats_dict(self.before),
            "after": _stats_dict(self.after),
        }
        if self.kind == "LowDegreeRemoval":
            out["vertex"] = self.vertex
        else:
            out["side"] = self.side
            out["cut_size"] = self.cut_size
        return out


def _stats_dict(s: DegreeStats) -> dict:
    return {"avg": rational.to_json(s.avg), "min": s.min, "max": s.max}


@dataclass
class ExtractionTrace:
    steps: list[Step] = field(default_factory=list)

    @property
    def halvings(self) -> int:
        return sum(1 for s in self.steps if 2 * s.n_after <= s.n_before)

    @property
    def cut_descents(self) -> int:
        return sum(1 for s in self.steps if s.kind == "CutDescent")


@dataclass(frozen=True)
class BoundCheck:
    d_G: Fraction
    d_H: Fraction
    min_deg_H: int
    lam: Fraction
    log_n_floor: int
    required: Fraction
    avg_ok: bool
    min_ok: bool

    @property
    def ok(self) -> bool:
        return self.avg_ok and self.min_ok

    def to_dict(self) -> dict:
        return {
            "d_G": rational.to_json(self.d_G),
            "d_H": rational.to_json(self.d_H),
            "min_deg_H": self.min_deg_H,
            "lambda": rational.to_json(self.lam),
            "log_n_floor": self.log_n_floor,
            "required": rational.to_json(self.required),
            "avg_ok": self.avg_ok,
            "min_ok": self.min_ok,
        }


def bound_check(G: Graph, H: Graph, lam: Fraction, n_ref: int | None = None) -> BoundCheck:
    """Exact check of ``d(H) >= (1 - 2 lam floor(log2 n)) d(G)`` and ``delta(H) >= d(H)/2``.

    Using ``floor(log2 n)`` makes the inequality slightly stronger than the
    one with the real logarithm and keeps it rational.
    """
    n = G.n if n_ref is None else n_ref
    k = n.bit_length() - 1
    dG, sH = G.avg_degree(), degree_stats(H)
    required = (1 - 2 * lam * k) * dG
    return BoundCheck(dG, sH.avg, sH.min, lam, k, required, sH.avg >= required, 2 * sH.min >= sH.avg)


@dataclass
class ExpanderResult:
    H: Graph
    vertices: tuple[int, ...]  # ids in the input graph
    certificate: ExpansionVerdict
    trace: ExtractionTrace
    bound: BoundCheck

    def to_dict(self) -> dict:
        return {
            "vertices": [self.H.labels[i] for i in range(self.H.n)],
            "n": self.H.n,
            "m": self.H.m,
            "certificate": self.certificate.to_dict(),
            "bound_check": self.bound.to_dict(),
            "steps": len(self.trace.steps),
            "halvings": self.trace.halvings,
        }


class _Working:
    """Mutable induced subgraph of ``G`` supporting fast min-degree peeling."""

    def __init__(self, G: Graph, alive: set[int]):
        self.G = G
        self.alive = alive
        self.deg = {v: sum(1 for w in G.adj[v] if w in alive) for v in alive}
        self.m = sum(self.deg.values()) // 2
        self.heap = [(d, v) for v, d in self.deg.items()]
        heapq.heapify(self.heap)
        top = max(self.deg.values(), default=0)
        self.hist = [0] * (top + 1)
        for d in self.deg.values():
            self.hist[d] += 1
        self.maxd = top

    def stats(self) -> DegreeStats:
        self._clean()
        while self.maxd > 0 and self.hist[self.maxd] == 0:
            self.maxd -= 1
        return DegreeStats(Fraction(2 * self.m, len(self.alive)), self.heap[0][0], self.maxd)

    def _clean(self):
        while self.heap:
            d, v = self.heap[0]
            if v in self.alive and self.deg[v] == d:
                return
            heapq.heappop(self.heap)

    def min_vertex(self) -> tuple[int, int]:
        self._clean()
        d, v = self.heap[0]
        return v, d

    def remove(self, v: int):
        self.alive.discard(v)
        d = self.deg.pop(v)
        self.hist[d] -= 1
        for w in self.G.adj[v]:
            if w in self.alive:
                self.hist[self.deg[w]] -= 1
                self.deg[w] -= 1
                self.hist[self.deg[w]] += 1
                heapq.heappush(self.heap, (self.deg[w], w))
        self.m -= d


def extract_expander(
    G: Graph,
    p: LambdaParams,
    mode: str = "auto",
    trials: int = 16,
    seed: int = 0,
    exact_limit: int = EXACT_LIMIT,
    warn: bool = True,
) -> ExpanderResult:
    """Run the peeling loop on ``G`` and return the final expander ``H``.

    The returned ``bound`` is always re-checked; a failure there would be a
    bug and raises :class:`InternalInvariantViolation`.
    """
    if G.m == 0:
        raise DegenerateInput("graph has no edges")
    lam = p.lam
    if warn and lam * math.log2(G.n) > Fraction(1, 10):
        warnings.warn(f"lambda*log2(n) = {float(lam) * math.log2(G.n):.3g} exceeds 1/10", stacklevel=2)
    work = _Working(G, set(range(G.n)))
    trace = ExtractionTrace()
    calls = 0
    while True:
        nF = len(work.alive)
        v, dv = work.min_vertex()
        if dv * nF < work.m:
            before = work.stats()
            work.remove(v)
            trace.steps.append(Step("LowDegreeRemoval", before, work.stats(), nF, nF - 1, vertex=G.labels[v]))
            continue
        order = sorted(work.alive)
        F = induced_subgraph(G, order)
        verdict = _search(F, lam, mode, trials, seed + calls, exact_limit)
        calls += 1
        if verdict.status is not Status.REFUTED:
            break
        U = {order[i] for i in verdict.witness_U}
        rest = work.alive - U
        e_in_U = sum(1 for x in U for w in G.adj[x] if w in U) // 2
        e_in_rest = sum(1 for x in rest for w in G.adj[x] if w in rest) // 2
        dF = Fraction(2 * work.m, nF)
        before = work.stats()
        if Fraction(2 * e_in_rest, len(rest)) >= dF:
            side, keep = "complement", rest
        elif Fraction(2 * e_in_U, len(U)) >= (1 - 2 * lam) * dF:
            side, keep = "U", U
        else:
            raise InternalInvariantViolation("cut satisfies neither branch condition; not a sparse cut")
        work = _Working(G, set(keep))
        trace.steps.append(
            Step("CutDescent", before, work.stats(), nF, len(keep), side=side, cut_size=len(U))
        )
    H = induced_subgraph(G, sorted(work.alive))
    result = ExpanderResult(H, tuple(sorted(work.alive)), verdict, trace, bound_check(G, H, lam))
    if not result.bound.ok:
        raise InternalInvariantViolation(f"extraction bound failed: {result.bound}")
    if len(trace.steps) >= G.n or trace.halvings > math.ceil(math.log2(G.n)):
        raise InternalInvariantViolation("trace invariants violated")
    return result
