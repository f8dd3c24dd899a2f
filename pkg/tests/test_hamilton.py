from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from expander_forge import graph as gm
from expander_forge.config import RunConfig
from expander_forge.errors import ClosureFailed, PreconditionViolated
from expander_forge.graph import Graph
from expander_forge.hamilton import (
    ConnectorConfig,
    MatchingLayer,
    PartitionScheme,
    PathSystem,
    absorb,
    connect_pairs,
    connect_round,
    glue_forest,
    layer_matchings,
    nearly_hamilton_cycle,
    nearly_hamilton_path,
    paper_parameters,
    partition_scheme,
)
from expander_forge.verify import verify_cycle, verify_path

DESK = RunConfig()


def _scheme(n, layers, **kw) -> PartitionScheme:
    used = {v for x in layers for v in x}
    rest = tuple(v for v in range(n) if v not in used)
    base = dict(V0=(), R=rest, V_prime=(), V1=(), V2=(), streams=((),), q1=Fraction(1, 2), q2=Fraction(1, 4), q3=Fraction(1, 4), ell=1, paper=False)
    base.update(kw)
    return PartitionScheme(n, layers=tuple(tuple(x) for x in layers), t=len(layers), **base)


def test_paper_parameters_log12():
    q1, q2, t, ell = paper_parameters(4096)
    assert (q1, q2, t) == (Fraction(1, 36), Fraction(1, 288), 279)
    assert q1 + (t + 1) * q2 == 1 and ell == 120


def test_desk_partition():
    p = partition_scheme(500, DESK, 3)
    p.check()
    assert p.t == 8 and p.q2 == Fraction(17, 20) / 9
    assert partition_scheme(500, DESK, 3) == p


def test_partition_paper_identity():
    p = partition_scheme(4096, RunConfig(mode="paper"), 0)
    p.check()
    assert p.t == 279 and p.q1 + (p.t + 1) * p.q2 == 1


def test_layer_matchings_complete_blocks():
    layers = [range(4 * i, 4 * i + 4) for i in range(3)]
    edges = [(u, v) for i in range(2) for u in layers[i] for v in layers[i + 1]]
    H = Graph.from_edges(12, edges)
    ml = layer_matchings(H, _scheme(12, layers))
    assert [len(m) for m in ml.matchings] == [4, 4] and ml.r == 4


def test_layer_matchings_gap():
    layers = [[0, 1], [2, 3], [4, 5]]
    H = Graph.from_edges(6, [(0, 2), (1, 3)])
    ml = layer_matchings(H, _scheme(6, layers))
    assert ml.surviving[-1] == [] and ml.r == 0
    assert glue_forest(ml).paths == []


def test_glue_two_paths():
    ml = MatchingLayer(3, [[(0, 2), (1, 3)], [(2, 4), (3, 5)]], [[(0, 2), (1, 3)], [(2, 4), (3, 5)]])
    assert glue_forest(ml).paths == [(0, 2, 4), (1, 3, 5)]


def test_glue_partial_chain():
    layers = [[0, 1], [2, 3], [4, 5]]
    H = Graph.from_edges(6, [(0, 2), (1, 3), (2, 4)])
    sys = glue_forest(layer_matchings(H, _scheme(6, layers)))
    assert sys.paths == [(0, 2, 4)]


def test_connect_pairs_k10():
    out = connect_pairs(gm.complete(10), range(4, 10), [(0, 1), (2, 3)], (), ConnectorConfig(), min_internal=1)
    assert all(o.ok for o in out)
    inner = [set(o.path[1:-1]) for o in out]
    assert not inner[0] & inner[1]


def test_connect_pairs_direct_edge_and_errors():
    out = connect_pairs(gm.path(2), (), [(0, 1)])
    assert out[0].path == (0, 1)
    with pytest.raises(PreconditionViolated):
        connect_pairs(gm.complete(4), {0, 2}, [(0, 1)])


def test_connect_pairs_backtracks():
    # the greedy route for (0, 1) takes vertex 4, the only way for (2, 3)
    G = Graph.from_edges(7, [(0, 4), (4, 1), (0, 5), (5, 6), (6, 1), (2, 4), (4, 3)])
    out = connect_pairs(G, {4, 5, 6}, [(0, 1), (2, 3)])
    assert [o.ok for o in out] == [True, True]
    assert out[0].path == (0, 5, 6, 1)


def test_connect_round_phase1():
    G = Graph.from_edges(5, [(0, 1), (2, 3), (1, 4), (2, 4)])
    sys = PathSystem([(0, 1), (2, 3)], [4])
    new, stats = connect_round(G, sys, {4})
    assert stats.phase1 == 1 and new.leaf_count == 2
    assert verify_path(G, new.paths[0]).ok


def test_connect_round_phase2():
    # leaves 1 and 2 are joined only through a 3-vertex path in V_i
    G = Graph.from_edges(7, [(0, 1), (2, 3), (1, 4), (4, 5), (5, 6), (6, 2)])
    sys = PathSystem([(0, 1), (2, 3)], [4])
    new, stats = connect_round(G, sys, {4, 5, 6})
    assert stats.phase2 == 1 and stats.phase1 == 0
    assert new.paths == [(0, 1, 4, 5, 6, 2, 3)]


def test_connect_round_empty_stream():
    sys = PathSystem([(0, 1), (2, 3)], [4])
    new, stats = connect_round(gm.complete(4), sys, set())
    assert stats.merges == 0 and new.paths == sys.paths


def test_nearly_hamilton_path_k50():
    sys, report = nearly_hamilton_path(gm.complete(50), DESK, 0)
    assert len(sys.paths) == 1 and len(sys.paths[0]) >= 45
    assert verify_path(gm.complete(50), sys.paths[0]).ok


def test_nearly_hamilton_path_c20_degrades():
    sys, report = nearly_hamilton_path(gm.cycle(20), DESK, 0)
    assert report.status != "complete"
    sys.check(gm.cycle(20))


def test_leaf_decay():
    G = gm.random_regular(400, 16, 2)
    _, report = nearly_hamilton_path(G, DESK, 2)
    prev = 2 * report.initial_paths
    for r in report.rounds:
        assert r.leaf_count <= max(2, prev)
        assert r.leaf_count == prev - 2 * r.merges
        prev = r.leaf_count


def test_cycle_k50():
    cyc, report = nearly_hamilton_cycle(gm.complete(50), DESK, 0)
    v = verify_cycle(gm.complete(50), cyc)
    assert v.ok and v.length >= 45 and cyc[0] == cyc[-1]


def test_cycle_two_components():
    G = gm.disjoint_union(gm.complete(10), gm.complete(10))
    try:
        cyc, report = nearly_hamilton_cycle(G, DESK, 0)
    except ClosureFailed as exc:
        assert exc.report is not None
        return
    assert set(cyc) <= set(range(10)) or set(cyc) <= set(range(10, 20))


def test_coverage_accounting():
    G = gm.random_regular(300, 12, 5)
    cyc, report = nearly_hamilton_cycle(G, DESK, 5)
    parts = partition_scheme(G.n, DESK, report.seed)
    uncovered = G.n - report.covered
    b = report.breakdown
    assert uncovered == b["V0_unused"] + b["X_missed"] + b["R_unused"]
    assert b["V0_unused"] <= len(parts.V0) and b["R_unused"] <= len(parts.R)


def test_absorb_keeps_ends():
    G = gm.complete(8)
    out, k = absorb(G, [0, 1], range(8), closed=False)
    assert out[0] == 0 and out[-1] == 1 and k == 6 and verify_path(G, out).ok


@settings(max_examples=40, deadline=None)
@given(st.integers(30, 150), st.integers(4, 12), st.integers(0, 10**6))
def test_property_pipeline_invariants(n, d, seed):
    if n * d % 2:
        n += 1
    G = gm.random_regular(n, d, seed)
    parts = partition_scheme(n, DESK, seed)
    parts.check()
    ml = layer_matchings(G, parts)
    for i, M in enumerate(ml.matchings):
        X, Y = set(parts.layers[i]), set(parts.layers[i + 1])
        assert len({u for u, _ in M}) == len(M) == len({v for _, v in M})
        assert all(u in X and v in Y and G.has_edge(u, v) for u, v in M)
        assert set(ml.surviving[i]) <= set(M)
        e = sum(1 for u in X for v in G.adj[u] if v in Y)
        top = max([sum(1 for v in G.adj[u] if v in Y) for u in X] + [sum(1 for u in G.adj[v] if u in X) for v in Y] + [0])
        assert len(M) * (top + 1) >= e
        if i:
            ends = {v for _, v in ml.surviving[i - 1]}
            assert all(u in ends for u, _ in ml.surviving[i])
    sys = glue_forest(ml)
    sys.check(G)
    for p in sys.paths:
        assert [next(k for k, x in enumerate(parts.layers) if v in x) for v in p] == list(range(parts.t))
    try:
        cyc, _ = nearly_hamilton_cycle(G, DESK, seed)
    except ClosureFailed:
        return
    assert verify_cycle(G, cyc).ok
