from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from expander_forge import graph as gm
from expander_forge.errors import DegenerateInput
from expander_forge.expansion import LambdaParams, Status, check_lambda_expander
from expander_forge.extraction import bound_check, extract_expander, sparse_cut
from expander_forge.graph import degree_stats

L = LambdaParams


def test_sparse_cut_examples():
    T2 = gm.disjoint_union(gm.complete(3), gm.complete(3))
    assert sparse_cut(T2, L(Fraction(1, 10))) == (0, 1, 2)
    U = sparse_cut(gm.barbell(5), L(Fraction(1, 5)), mode="exact")
    assert set(U) in ({0, 1, 2, 3, 4}, {5, 6, 7, 8, 9})
    assert sparse_cut(gm.complete(6), L(Fraction(2, 5)), mode="exact") is None


def test_k6_zero_steps():
    res = extract_expander(gm.complete(6), L(Fraction(1, 10)), warn=False)
    assert res.H == gm.complete(6) and res.trace.steps == []
    assert res.certificate.status is Status.CERTIFIED_EXACT


def test_two_k4_one_descent():
    G = gm.disjoint_union(gm.complete(4), gm.complete(4))
    res = extract_expander(G, L(Fraction(1, 20)), warn=False)
    assert res.H == gm.complete(4)
    assert [s.kind for s in res.trace.steps] == ["CutDescent"]
    assert res.bound.d_H == 3 >= (1 - 2 * Fraction(1, 20) * 3) * 3


def test_barbell_stays_on_one_side():
    res = extract_expander(gm.barbell(5), L(Fraction(1, 10)), warn=False)
    side = set(res.vertices)
    assert side <= {0, 1, 2, 3, 4, 5} or side <= {4, 5, 6, 7, 8, 9}
    assert res.bound.ok


def test_edgeless_rejected():
    with pytest.raises(DegenerateInput):
        extract_expander(gm.empty(5), L(Fraction(1, 10)))


def test_warns_on_large_lambda():
    with pytest.warns(UserWarning):
        extract_expander(gm.complete(8), L(Fraction(1, 5)))


def test_trace_is_consistent():
    G = gm.disjoint_union(gm.random_regular(30, 4, 1), gm.random_gnp(20, 0.2, 2))
    res = extract_expander(G, L(Fraction(1, 50)), warn=False)
    n = G.n
    for s in res.trace.steps:
        assert s.n_after < s.n_before
        if s.kind == "LowDegreeRemoval":
            assert s.after.avg >= s.before.avg
        else:
            assert s.after.avg >= s.before.avg or (
                2 * s.n_after <= s.n_before and s.after.avg >= (1 - 2 * Fraction(1, 50)) * s.before.avg
            )
    assert len(res.trace.steps) < n


def test_bound_check_uses_floor_log():
    G = gm.complete(9)
    b = bound_check(G, G, Fraction(1, 100))
    assert b.log_n_floor == 3 and b.required == (1 - Fraction(6, 100)) * 8


graphs = st.tuples(st.integers(6, 40), st.floats(0.05, 0.6), st.integers(0, 10**6))


@settings(max_examples=50, deadline=None)
@given(graphs, st.sampled_from([Fraction(1, 100), Fraction(1, 40), Fraction(1, 20)]))
def test_property_bound_and_certificate(data, lam):
    n, p, seed = data
    G = gm.random_gnp(n, p, seed)
    if G.m == 0:
        return
    res = extract_expander(G, L(lam), warn=False)
    H = res.H
    s = degree_stats(H)
    k = G.n.bit_length() - 1
    assert s.avg >= (1 - 2 * lam * k) * G.avg_degree()
    assert 2 * s.min >= s.avg
    if H.n <= 20 and H.n >= 2:
        assert check_lambda_expander(H, L(lam), "exact").certified
