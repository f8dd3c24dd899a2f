"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

from __future__ import annotations

import json
import math
import random
import time
from fractions import Fraction

import pytest

from expander_forge import graph as gm
from expander_forge.cli import main as cli_main
from expander_forge.config import RunConfig
from expander_forge.cover import cover_weak, pack_round, refining_schedule
from expander_forge.errors import ClosureFailed, Degenerate, InsufficientDensity
from expander_forge.expansion import LambdaParams, check_lambda_expander, lambda_violates
from expander_forge.extraction import extract_expander
from expander_forge.graph import degree_stats
from expander_forge.hamilton import glue_forest, layer_matchings, nearly_hamilton_cycle, partition_scheme
from expander_forge.subdivision import chord_rich_cycle, cycle_partition, pack_f_subdivisions, verify_subdivision
from expander_forge.verify import verify_cycle
from corpus import small_corpus
from oracles import brute_lambda

DESK = RunConfig()


@pytest.fixture
def report(capsys):
    def emit(number: int, title: str, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'} {title}: {detail}")
        assert ok, detail

    return emit


# 1 -------------------------------------------------------------------------


def _extraction_inputs(count: int, seed: int):
    rng = random.Random(seed)
    for k in range(count):
        n = int(round(math.exp(rng.uniform(math.log(20), math.log(2000)))))
        kind = k % 4
        if kind == 0:
            d = rng.randint(3, 12)
            if n * d % 2:
                n += 1
            G = gm.random_regular(n, d, rng.randrange(2**32))
        elif kind == 1:
            G = gm.random_gnp(n, rng.uniform(2, 12) / n, rng.randrange(2**32))
        elif kind == 2:
            a = max(4, n // 2)
            d = rng.randint(3, 8)
            A = gm.random_regular(a + (a * d % 2), d, rng.randrange(2**32))
            B = gm.random_gnp(max(4, n - a), min(1.0, rng.uniform(3, 10) / max(4, n - a)), rng.randrange(2**32))
            U = gm.disjoint_union(A, B)
            extra = {(rng.randrange(A.n), A.n + rng.randrange(B.n)) for _ in range(rng.randint(1, 4))}
            G = gm.Graph.from_edges(U.n, U.edges() + sorted(extra))
        else:
            hub = gm.star(min(n - 1, 40))
            G = gm.disjoint_union(gm.random_gnm(n, 3 * n, rng.randrange(2**32)), hub)
        if G.m:
            yield G


def test_criterion_1_extraction_bound(report):
    start = time.perf_counter()
    runs = failures = 0
    for G in _extraction_inputs(200, 2024):
        lam = Fraction(1, 20) / math.ceil(math.log2(G.n))
        res = extract_expander(G, LambdaParams(lam), warn=False)
        s = degree_stats(res.H)
        floor_ok = s.avg >= (1 - 2 * lam * (G.n.bit_length() - 1)) * G.avg_degree()
        real_ok = float(s.avg) >= (1 - 2 * float(lam) * math.log2(G.n)) * float(G.avg_degree())
        if not (floor_ok and real_ok and 2 * s.min >= s.avg):
            failures += 1
        runs += 1
    elapsed = time.perf_counter() - start
    ok = runs == 200 and failures == 0 and elapsed < 60
    report(1, "extraction bound replay", ok, f"{runs} runs, {failures} violations, {elapsed:.1f}s (limit 60s)")


# 2 -------------------------------------------------------------------------


def test_criterion_2_small_cut_oracle(report):
    corpus = small_corpus()
    mismatches = 0
    checks = 0
    for _, G in corpus:
        for lam in (Fraction(1, 10), Fraction(1, 5), Fraction(1, 3)):
            ok, worst, bad = brute_lambda(G, lam)
            v = check_lambda_expander(G, LambdaParams(lam), "exact")
            checks += 1
            if v.certified != ok or v.worst_ratio != worst:
                mismatches += 1
            elif not ok and not (lambda_violates(G, v.witness_U, lam) and v.witness_U in bad):
                mismatches += 1
    good = mismatches == 0 and len(corpus) >= 45
    report(2, "small-instance cut oracle", good, f"{len(corpus)} graphs, {checks} checks, {mismatches} disagreements")


# 3 -------------------------------------------------------------------------


def _clique_unions(count: int, seed: int):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        sizes = []
        while True:
            k = rng.randint(3, 12)
            if sum(sizes) + k > 24:
                break
            sizes.append(k)
        if sizes:
            out.append(sizes)
    return out


def test_criterion_3_packing_coverage(report):
    cfg = RunConfig(exact_limit=24)
    bad = []
    for sizes in _clique_unions(20, 3):
        G = gm.disjoint_union(*[gm.complete(k) for k in sizes])
        d = max(sizes) - 1
        eps = 1 - G.avg_degree() / d
        lam = Fraction(1, 100)
        one = pack_round(G, d, eps, LambdaParams(lam), cfg)
        if 4 * one.covered < G.n:
            bad.append((sizes, "pack_round"))
        weak = cover_weak(G, d, eps, LambdaParams(lam), cfg=cfg)
        for i, left in enumerate(weak.uncovered_history, start=1):
            if left > Fraction(3, 4) ** i * G.n:
                bad.append((sizes, f"round {i}"))
    report(3, "packing round coverage", not bad, f"20 clique unions, violations: {bad or 'none'}")


# 4 -------------------------------------------------------------------------


def test_criterion_4_schedule_arithmetic(report):
    s = refining_schedule(log_n=1024, C=6, alpha=Fraction(1, 28))
    p = partition_scheme(4096, RunConfig(mode="paper"), 0)
    p.check()
    ok = s.gamma == Fraction(4, 5) and s.c == Fraction(15, 2) and p.t == 279 and p.q1 + (p.t + 1) * p.q2 == 1
    report(4, "schedule arithmetic", ok, f"gamma={s.gamma}, c={s.c}, t={p.t}, q1+(t+1)q2={p.q1 + (p.t + 1) * p.q2}")


# 5 -------------------------------------------------------------------------


def test_criterion_5_nearly_hamilton(report):
    start = time.perf_counter()
    hits = 0
    pipeline = []
    for seed in range(40):
        G = gm.random_regular(1000, 32, seed)
        try:
            cyc, rep = nearly_hamilton_cycle(G, DESK.with_(seed=seed), seed)
        except ClosureFailed:
            continue
        v = verify_cycle(G, cyc)
        if v.ok and v.length >= 900:
            hits += 1
        pipeline.append(rep.pipeline_covered)
    elapsed = time.perf_counter() - start
    ok = hits >= 38 and elapsed < 300
    report(
        5,
        "nearly-Hamilton desk target",
        ok,
        f"{hits}/40 seeds with a valid cycle on >= 90% of vertices, {elapsed:.1f}s (limit 300s); "
        f"median connecting-rounds path {sorted(pipeline)[len(pipeline) // 2] if pipeline else 0} vertices",
    )


# 6 -------------------------------------------------------------------------


def test_criterion_6_k4_packing(report):
    F = gm.complete(4)
    hits = invalid = 0
    for seed in range(20):
        G = gm.random_regular(1000, 32, 100 + seed)
        pk = pack_f_subdivisions(G, F, DESK.with_(seed=seed))
        seen = set()
        for s in pk.elements:
            if not verify_subdivision(G, F, s).ok or s.vertices() & seen:
                invalid += 1
            seen |= s.vertices()
        if len(seen) >= 800:
            hits += 1
    ok = invalid == 0 and hits >= 18
    report(6, "K4 subdivision packing", ok, f"{invalid} invalid elements, {hits}/20 seeds covering >= 80%")


# 7 -------------------------------------------------------------------------


def test_criterion_7_cycle_partition(report):
    over = 0
    for seed in range(15):
        rng = random.Random(seed)
        n, d = rng.randint(30, 300), rng.randint(3, 20)
        if n * d % 2:
            n += 1
        G = gm.random_regular(n, d, seed)
        cp = cycle_partition(G, DESK.with_(seed=seed))
        if len(cp.cycles) > n // (degree_stats(G).max + 1):
            over += 1
    G = gm.disjoint_union(gm.complete(10), gm.complete(10))
    cp = cycle_partition(G, DESK)
    valid = all(verify_cycle(G, c).ok for c in cp.cycles)
    ok = over == 0 and len(cp.cycles) == 2 and cp.covered >= 18 and valid
    report(7, "cycle-partition bound", ok, f"{over} runs over the cap; two K10 -> {len(cp.cycles)} cycles covering {cp.covered}")


# 8 -------------------------------------------------------------------------


def test_criterion_8_chords(report):
    hits = 0
    for seed in range(20):
        G = gm.random_gnp(500, 64 / 499, 500 + seed)
        r = chord_rich_cycle(G, DESK.with_(seed=seed))
        if r.cycle:
            v = verify_cycle(G, r.cycle)
            if v.ok and v.chords >= v.length:
                hits += 1
    report(8, "chord-rich cycle", hits >= 18, f"{hits}/20 seeds with recounted chords >= |C|")


# 9 -------------------------------------------------------------------------


def _property_sweep(cases: int, seed: int) -> tuple[int, list[str]]:
    """Randomised replay of the module invariants; returns (cases run, violations)."""
    rng = random.Random(seed)
    bad: list[str] = []
    done = 0
    while done < cases:
        kind = done % 6
        s = rng.randrange(2**32)
        if kind == 0:
            G = gm.random_gnp(rng.randint(2, 30), rng.random(), s)
            if 2 * G.m != sum(G.degrees()) or any(v not in G.nbrs[u] for v in range(G.n) for u in G.adj[v]):
                bad.append(f"graph {s}")
        elif kind == 1:
            G = gm.random_gnp(rng.randint(3, 9), rng.uniform(0.2, 0.9), s)
            if G.m:
                lam = Fraction(rng.randint(1, 20), 40)
                ok, worst, _ = brute_lambda(G, lam)
                v = check_lambda_expander(G, LambdaParams(lam), "exact")
                if v.certified != ok or v.worst_ratio != worst or (not ok and not lambda_violates(G, v.witness_U, lam)):
                    bad.append(f"lambda {s}")
        elif kind == 2:
            G = gm.random_gnp(rng.randint(10, 120), rng.uniform(0.03, 0.4), s)
            if G.m:
                lam = Fraction(1, 100)
                res = extract_expander(G, LambdaParams(lam), warn=False)
                if not res.bound.ok:
                    bad.append(f"extract {s}")
        elif kind == 3:
            n = rng.randint(20, 200)
            d = rng.randint(3, 10)
            n += n * d % 2
            G = gm.random_regular(n, d, s)
            parts = partition_scheme(n, DESK, s)
            parts.check()
            sys_ = glue_forest(layer_matchings(G, parts))
            sys_.check(G)
            if any(len(p) != parts.t for p in sys_.paths):
                bad.append(f"glue {s}")
        elif kind == 4:
            n = rng.randint(20, 150)
            d = rng.randint(4, 12)
            n += n * d % 2
            G = gm.random_regular(n, d, s)
            try:
                cyc, _ = nearly_hamilton_cycle(G, DESK, s)
                if not verify_cycle(G, cyc).ok:
                    bad.append(f"cycle {s}")
            except ClosureFailed:
                pass
            cp = cycle_partition(G, DESK.with_(seed=s % 1000))
            if len(cp.cycles) > n // (d + 1):
                bad.append(f"partition {s}")
        else:
            n = rng.randint(30, 120)
            d = rng.randint(6, 14)
            n += n * d % 2
            G = gm.random_regular(n, d, s)
            pk = pack_f_subdivisions(G, gm.complete(3), DESK.with_(seed=s % 1000))
            try:
                pk.check(G)
            except AssertionError:
                bad.append(f"packing {s}")
        done += 1
    return done, bad


def test_criterion_9_properties_and_determinism(report, tmp_path, capsys):
    cases, bad = _property_sweep(540, 9)
    G = gm.random_regular(200, 10, 7)
    path = tmp_path / "g.el"
    path.write_text(f"# n {G.n}\n" + gm.to_edge_list(G))
    same = True
    for command in ("extract", "cover", "hamilton", "pack-subdiv", "cycle-partition", "chords"):
        blobs = []
        for k in range(2):
            out = tmp_path / f"{command}{k}.json"
            cli_main([command, str(path), "--seed", "5", "--no-meta", "-o", str(out)])
            blobs.append(out.read_bytes())
        same &= blobs[0] == blobs[1]
    lib = [json.dumps(pack_f_subdivisions(G, gm.complete(4), DESK).to_dict(), sort_keys=True) for _ in range(2)]
    same &= lib[0] == lib[1]
    capsys.readouterr()
    ok = cases >= 500 and not bad and same
    report(9, "property suite and determinism", ok, f"{cases} randomized cases, {len(bad)} violations, byte-identical artifacts: {same}")
