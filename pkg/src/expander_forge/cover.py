"""Covering a nearly-regular graph with vertex-disjoint expanders.

* :func:`pack_round` greedily extracts expanders whose average degree stays
  above ``d(1 - 10 eps)``.
* :func:`cover_weak` repeats packing rounds on the residue with a growing
  degree allowance.
* :func:`cover_strong` refines small members along a schedule of shrinking
  size thresholds so that each final member expands at a rate depending only
  on its own size.
* :func:`to_robust` turns an edge-expansion certificate into robust vertex
  expansion parameters.

All member vertex ids refer to the graph passed in; ``member.H.labels`` map
to the root graph that graph was cut from.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .config import RunConfig
from .errors import HypothesisViolated, PreconditionViolated
from .expansion import (
    ExpansionVerdict,
    LambdaParams,
    RobustParams,
    Status,
    check_lambda_expander,
    check_robust_expander,
)
from .extraction import extract_expander
from .graph import Graph, degree_stats, induced_subgraph
from .rational import as_fraction, ceil_fraction, to_json


@dataclass
class CoverMember:
    vertices: tuple[int, ...]
    H: Graph
    lambda_H: Fraction
    eps_H: Fraction
    s_H: Fraction
    certificate: ExpansionVerdict
    born_round: int
    c: Fraction | None = None
    stage_lambda: Fraction | None = None
    paper_bounds: bool = True

    def degree_ok(self, d: int) -> bool:
        st = degree_stats(self.H)
        return st.avg >= d * (1 - self.eps_H) and 2 * st.min >= st.avg

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "lambda_H": to_json(self.lambda_H),
            "eps_H": to_json(self.eps_H),
            "s_H": to_json(self.s_H),
            "c": to_json(self.c),
            "certificate": self.certificate.to_dict(),
            "born_round": self.born_round,
            "paper_bounds": self.paper_bounds,
        }


@dataclass
class Cover:
    n: int
    d: int
    members: list[CoverMember]
    uncovered: tuple[int, ...]
    params: dict = field(default_factory=dict)
    uncovered_history: list[int] = field(default_factory=list)

    @property
    def covered(self) -> int:
        return self.n - len(self.uncovered)

    def check(self) -> None:
        seen: set[int] = set()
        for mem in self.members:
            vs = set(mem.vertices)
            if vs & seen:
                raise AssertionError("cover members overlap")
            seen |= vs
        if seen | set(self.uncovered) != set(range(self.n)) or seen & set(self.uncovered):
            raise AssertionError("uncovered set does not complement the members")

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "members": [m.to_dict() for m in self.members],
            "uncovered": list(self.uncovered),
            "uncovered_history": list(self.uncovered_history),
            "params": self.params,
        }


# --------------------------------------------------------------------------
# Packing rounds


def _check_degrees(G: Graph, d: int, eps: Fraction) -> None:
    if G.n == 0 or G.m == 0:
        raise PreconditionViolated("graph has no edges")
    st = degree_stats(G)
    if st.max > d:
        raise PreconditionViolated(f"maximum degree {st.max} exceeds d={d}")
    if st.avg < d * (1 - eps):
        raise PreconditionViolated(f"average degree {st.avg} below d(1-eps) = {d * (1 - eps)}")


def _extract_kwargs(cfg: RunConfig, salt: int) -> dict:
    return {"trials": cfg.trials, "seed": cfg.seed + salt, "exact_limit": cfg.exact_limit, "warn": False}


def _pack(G: Graph, alive: set[int], d: int, eps: Fraction, lam: Fraction, cfg: RunConfig, born: int, salt: int):
    """One packing round on ``G[alive]``; mutates ``alive``.  Returns members as (vertices, H, result)."""
    out = []
    accept = d * (1 - 10 * eps)
    while len(alive) >= 2:
        order = sorted(alive)
        F = induced_subgraph(G, order)
        if F.m == 0:
            break
        res = extract_expander(F, LambdaParams(lam), **_extract_kwargs(cfg, salt + len(out)))
        if res.bound.d_H < accept:
            break
        verts = tuple(order[i] for i in res.vertices)
        alive.difference_update(verts)
        out.append((verts, induced_subgraph(G, verts), res.certificate))
    return out


def _member(verts, H, cert, lam: Fraction, eps_acc: Fraction, d: int, born: int) -> CoverMember:
    return CoverMember(verts, H, lam, eps_acc, lam * d / 4, cert, born, stage_lambda=lam)


def pack_round(G: Graph, d: int, eps, p: LambdaParams, cfg: RunConfig | None = None) -> Cover:
    """Greedily extract expanders with ``d(H) >= d(1 - 10 eps)`` until one falls short."""
    cfg = cfg or RunConfig()
    eps = as_fraction(eps)
    _check_degrees(G, d, eps)
    if p.lam * math.log2(G.n) > min(Fraction(1, 10), eps):
        warnings.warn("lambda*log2(n) exceeds min(1/10, eps)", stacklevel=2)
    alive = set(range(G.n))
    found = _pack(G, alive, d, eps, p.lam, cfg, 1, 0)
    members = [_member(v, H, c, p.lam, 10 * eps, d, 1) for v, H, c in found]
    cover = Cover(G.n, d, members, tuple(sorted(alive)), {"eps": to_json(eps), "lambda": to_json(p.lam)})
    cover.uncovered_history.append(len(alive))
    return cover


def weak_rounds(n: int, alpha: Fraction) -> int:
    """``t + 1`` where ``t = min{i >= 1 : (3/4)^(i+1) <= log2(n)^(-alpha)}``."""
    target = math.log2(max(n, 2)) ** (-float(alpha))
    i = 1
    while 0.75 ** (i + 1) > target:
        i += 1
    return i + 1


def round_eps(i: int, eps: Fraction, ratio: Fraction) -> Fraction:
    """Packing-round slack in round ``i``: ``eps`` first, then ``ratio^i eps / 10``.

    Members of round ``i`` then satisfy ``d(H) >= d(1 - ratio^i eps)`` for
    ``i >= 2`` and ``d(1 - 10 eps)`` in round 1.
    """
    return eps if i == 1 else ratio**i * eps / 10


def _weak(G: Graph, alive: set[int], d: int, eps: Fraction, lam: Fraction, alpha: Fraction, cfg: RunConfig, salt: int):
    n0 = len(alive)
    if cfg.mode == "paper":
        rounds, target = weak_rounds(n0, alpha), 0
    else:
        rounds, target = cfg.round_cap, cfg.coverage_target * n0
    found, history = [], []
    for i in range(1, rounds + 1):
        e = round_eps(i, eps, cfg.eps_ratio)
        got = _pack(G, alive, d, e, lam, cfg, i, salt + 1000 * i)
        found.extend((v, H, c, 10 * e, i) for v, H, c in got)
        history.append(len(alive))
        if len(alive) <= target or len(alive) < 2:
            break
    return found, history


def cover_weak(G: Graph, d: int, eps, p: LambdaParams, alpha=Fraction(1, 28), cfg: RunConfig | None = None) -> Cover:
    """Repeat packing rounds on the residue with slack ``round_eps(i)``.

    Paper mode runs ``t + 1`` rounds (see :func:`weak_rounds`); desk mode stops
    when the residue drops below ``coverage_target * n`` or after ``round_cap``
    rounds.
    """
    cfg = cfg or RunConfig()
    eps, alpha = as_fraction(eps), as_fraction(alpha)
    _check_degrees(G, d, eps)
    alive = set(range(G.n))
    found, history = _weak(G, alive, d, eps, p.lam, alpha, cfg, 0)
    members = [_member(v, H, c, p.lam, acc, d, i) for v, H, c, acc, i in found]
    return Cover(
        G.n,
        d,
        members,
        tuple(sorted(alive)),
        {"eps": to_json(eps), "lambda": to_json(p.lam), "alpha": to_json(alpha), "mode": cfg.mode},
        history,
    )


# --------------------------------------------------------------------------
# Refining schedule


@dataclass(frozen=True)
class RefiningSchedule:
    """Thresholds ``log n_{i+1} = (log n_i)^gamma`` kept exactly in double-log space.

    ``loglog[i-1]`` is ``log2(log2(n_i))``; every quantity is a power of two with
    an exactly known rational exponent.
    """

    C: Fraction
    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    c: Fraction
    loglog: tuple[Fraction, ...]
    t: int

    def log_n(self, i: int) -> float:
        return 2.0 ** float(self.loglog[i - 1])

    def eps_exponent(self, i: int) -> Fraction:
        """``log2(eps_i)``; ``i = 0`` gives ``eps_0 = log2(n)^-(C-1)``."""
        if i == 0:
            return -(self.C - 1) * self.loglog[0]
        return -(self.C - self.beta - 1) * self.loglog[i - 1]

    def lam_exponent(self, i: int) -> Fraction:
        return -self.C * self.loglog[i - 1]

    def eps(self, i: int) -> float:
        return 2.0 ** float(self.eps_exponent(i))

    def lam(self, i: int) -> float:
        return 2.0 ** float(self.lam_exponent(i))

    def exact(self, exponent: Fraction) -> Fraction | None:
        """``2**exponent`` as a Fraction when the exponent is an integer."""
        if exponent.denominator != 1:
            return None
        k = int(exponent)
        return Fraction(2) ** k

    def to_dict(self) -> dict:
        return {
            "C": to_json(self.C),
            "alpha": to_json(self.alpha),
            "beta": to_json(self.beta),
            "gamma": to_json(self.gamma),
            "c": to_json(self.c),
            "t": self.t,
            "log_n": [self.log_n(i) for i in range(1, len(self.loglog) + 1)],
            "eps": [self.eps(i) for i in range(1, len(self.loglog) + 1)],
            "lambda": [self.lam(i) for i in range(1, len(self.loglog) + 1)],
            "eps0": self.eps(0),
        }


def check_schedule_hypothesis(C: Fraction, alpha: Fraction) -> None:
    if C < max(28 * alpha + 3, 56 * alpha + 1):
        raise HypothesisViolated(f"need C >= max(28a+3, 56a+1); got C={C}, alpha={alpha}")


def refining_schedule(n: int | None = None, C=6, alpha=Fraction(1, 28), log_n=None) -> RefiningSchedule:
    """Threshold schedule for :func:`cover_strong`.

    Pass either ``n`` or ``log_n = log2(n)`` (handy when ``n`` is astronomically
    large).  ``t = max{i : log n_i >= 4}`` (0 when ``log2 n < 4``); entries are
    stored for ``i = 1..t+1``.
    """
    C, alpha = as_fraction(C), as_fraction(alpha)
    check_schedule_hypothesis(C, alpha)
    beta = 28 * alpha
    gamma = (C - beta - 1) / (C - 1)
    c = C * (C - 1) / (C - beta - 1)
    if log_n is None:
        if n is None or n < 2:
            raise ValueError("need n >= 2 or log_n")
        log_n = Fraction(n.bit_length() - 1) if n & (n - 1) == 0 else Fraction(math.log2(n))
    log_n = as_fraction(log_n)
    if log_n <= 1:
        ll0 = Fraction(0)
    else:
        ll0 = _log2_fraction(log_n)
    loglog = [ll0]
    while loglog[-1] >= 2:
        loglog.append(gamma * loglog[-1])
    t = len(loglog) - 1
    return RefiningSchedule(C, alpha, beta, gamma, c, tuple(loglog), t)


def _log2_fraction(x: Fraction) -> Fraction:
    """Exact for powers of two, otherwise the double-precision log as a Fraction."""
    if x.denominator == 1 and x.numerator & (x.numerator - 1) == 0:
        return Fraction(x.numerator.bit_length() - 1)
    return Fraction(math.log2(x))


# --------------------------------------------------------------------------
# Strong cover


def member_exponents(size: int, sched: RefiningSchedule) -> tuple[float, float]:
    """``(lambda_H, eps_H)`` for a final member on ``size`` vertices."""
    L = math.log2(size)
    return L ** (-float(sched.c)), L ** (-float(sched.C - sched.beta - 1))


def cover_strong(G: Graph, d: int | None = None, C=6, alpha=Fraction(1, 28), cfg: RunConfig | None = None) -> Cover:
    """Cover ``G`` with expanders whose expansion depends only on their own size.

    Stage 1 is :func:`cover_weak` with ``lambda_1`` and ``eps_0``.  At stage
    ``i`` every member ``H`` with ``|V(H)| <= n_{i+1}`` and
    ``d(H) >= d(1 - eps_i)`` is replaced by ``cover_weak(H, lambda_{i+1}, eps_i)``;
    other members are kept.  Final members carry
    ``lambda_H = log|V(H)|^-c`` and ``eps_H = log|V(H)|^-(C-28a-1)`` and are
    re-certified at ``lambda_H``.

    In desk mode ``eps_0`` is ``cfg.eps`` (or the degree gap ``1 - d(G)/d``
    when unset) and stage lambdas are raised to ``cfg.lambda_floor``.
    """
    cfg = cfg or RunConfig()
    C, alpha = as_fraction(C), as_fraction(alpha)
    if G.n == 0 or G.m == 0:
        raise PreconditionViolated("graph has no edges")
    st = degree_stats(G)
    d = st.max if d is None else d
    sched = refining_schedule(G.n, C, alpha)
    if cfg.mode == "paper":
        eps0 = ceil_fraction(sched.eps(0))
        if st.max > d or st.avg < d * (1 - eps0):
            raise HypothesisViolated("degree hypotheses fail for the paper-mode schedule")
    else:
        gap = 1 - st.avg / d
        eps0 = cfg.eps if cfg.eps is not None else max(Fraction(0), gap)
        _check_degrees(G, d, eps0)

    def stage_lam(i: int) -> Fraction:
        lam = max(Fraction(sched.lam(min(i, len(sched.loglog)))), cfg.lambda_floor)
        return lam if lam > 0 else Fraction(1, 2**60)

    alive = set(range(G.n))
    found, history = _weak(G, alive, d, eps0, stage_lam(1), alpha, cfg, 0)
    # (vertices, born stage)
    current = [(v, 1) for v, _H, _c, _acc, _i in found]
    uncovered = set(alive)
    for i in range(1, sched.t):
        eps_i = ceil_fraction(sched.eps(i))
        if eps_i > Fraction(1, 10):
            break
        nxt = []
        log_thr = sched.log_n(i + 1)
        for verts, born in current:
            sub = induced_subgraph(G, verts)
            small = math.log2(len(verts)) <= log_thr
            if small and sub.avg_degree() >= d * (1 - eps_i):
                inner = set(range(sub.n))
                got, _ = _weak(sub, inner, d, eps_i, stage_lam(i + 1), alpha, cfg, 7919 * (i + 1) + verts[0])
                for v, _H, _c, _acc, _r in got:
                    nxt.append((tuple(verts[x] for x in v), i + 1))
                uncovered.update(verts[x] for x in inner)
            else:
                nxt.append((verts, born))
        current = nxt
        history.append(len(uncovered))
    members = [_finalise(G, verts, born, d, sched, cfg) for verts, born in current]
    members.sort(key=lambda m: m.vertices[0])
    cover = Cover(
        G.n,
        d,
        members,
        tuple(sorted(uncovered)),
        {"C": to_json(C), "alpha": to_json(alpha), "c": to_json(sched.c), "eps0": to_json(eps0), "mode": cfg.mode},
        history,
    )
    cover.check()
    return cover


def _finalise(G: Graph, verts, born: int, d: int, sched: RefiningSchedule, cfg: RunConfig) -> CoverMember:
    H = induced_subgraph(G, verts)
    size = len(verts)
    if size >= 2:
        lam_f, eps_f = member_exponents(size, sched)
    else:
        lam_f, eps_f = 1.0, 1.0
    lam_H = Fraction(lam_f) if lam_f > 0 else Fraction(1, 2**60)
    eps_H = ceil_fraction(eps_f)
    st = degree_stats(H)
    paper_ok = st.avg >= d * (1 - eps_H) and 2 * st.min >= st.avg
    if not paper_ok:
        # fall back to the allowance the member was actually accepted under
        eps_H = max(eps_H, 1 - st.avg / d)
    if H.n >= 2:
        cert = check_lambda_expander(
            H, LambdaParams(lam_H), mode="auto", trials=cfg.trials, seed=cfg.seed, exact_limit=cfg.exact_limit
        )
    else:
        cert = ExpansionVerdict(Status.CERTIFIED_EXACT)
    s_H = d * lam_H / 4
    stage = Fraction(sched.lam(min(born, len(sched.loglog))))
    return CoverMember(tuple(verts), H, lam_H, eps_H, s_H, cert, born, sched.c, stage, paper_ok)


# --------------------------------------------------------------------------
# Robust wrapper


def robust_params(lam, c, d) -> RobustParams:
    """``(1/8, c, lam d / 4)``."""
    return RobustParams(Fraction(1, 8), as_fraction(c), as_fraction(lam) * d / 4)


def to_robust(member: CoverMember, d: int, trials: int = 64, seed: int = 0, exact_limit: int = 20):
    """Robust vertex-expansion parameters implied by a member's edge expansion.

    Requires ``eps_H <= 1/4``; the returned verdict re-checks the parameters
    directly (exhaustively when the member is small).
    """
    if member.eps_H > Fraction(1, 4):
        raise PreconditionViolated(f"eps_H = {member.eps_H} exceeds 1/4")
    c = member.c
    if c is None:
        L = math.log2(max(member.H.n, 2))
        c = Fraction(-math.log2(float(member.lambda_H)) / math.log2(L)).limit_denominator(10**6) if L > 1 else Fraction(0)
    params = robust_params(member.lambda_H, c, d)
    if member.H.n < 2:
        return params, None
    verdict = check_robust_expander(member.H, params, trials=trials, seed=seed, exact_limit=exact_limit)
    return params, verdict
