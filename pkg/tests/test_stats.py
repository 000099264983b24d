from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from arbor.closed_form import complete_counts, cycle_counts
from arbor.core import DomainError, Graph, SubtreePolynomial, complete_graph, format_sig
from arbor.enumeration import subtree_polynomial
from arbor.stats import (
    density_from_polynomial,
    global_stats,
    local_stats_complete,
    local_stats_complete_formulas,
)
from arbor.universe import graphs


def test_k4_fractions():
    r = global_stats(complete_counts(4), 4)
    assert (r.p, r.q, r.mu_p, r.mu_q) == (
        Fraction(16, 34), Fraction(48, 78), Fraction(78, 102), Fraction(198, 234))
    assert r.raw() == {"p": (16, 34), "q": (48, 78), "mu_p": (78, 102), "mu_q": (198, 234)}
    assert (r.A, r.B, r.C) == (34, 78, 198)


def test_k4_json_schema():
    d = global_stats(complete_counts(4), 4).as_dict()
    assert d["p"] == {"num": "8", "den": "17", "raw": "16/34", "dec": "0.470588"}
    assert d["n"] == 4


def test_k10_decimals():
    r = global_stats(complete_counts(10), 10)
    assert format_sig(r.p) == "0.617473"
    assert format_sig(r.q) == "0.652736"


def test_k2_all_one():
    r = global_stats(complete_counts(2), 2)
    assert r.p == r.q == r.mu_p == r.mu_q == 1


def test_zero_counts_rejected():
    with pytest.raises(DomainError):
        global_stats([0, 0, 0], 4)
    with pytest.raises(DomainError):
        global_stats([1], 1)


def test_polynomial_and_count_vector_agree():
    assert global_stats(subtree_polynomial(complete_graph(6)), 6) == global_stats(complete_counts(6), 6)


def test_local_examples():
    assert local_stats_complete(4).p_local == Fraction(8, 13)
    assert local_stats_complete(3).p_local == Fraction(2, 3)
    assert format_sig(local_stats_complete(10).p_local) == "0.652736"
    with pytest.raises(DomainError):
        local_stats_complete(2)


@pytest.mark.parametrize("n", range(3, 51))
def test_local_formula_route_and_p_local_equals_q(n):
    counts_route = local_stats_complete(n)
    assert local_stats_complete_formulas(n) == counts_route
    assert counts_route.p_local == global_stats(complete_counts(n), n).q


def test_density_examples():
    assert density_from_polynomial(complete_counts(4).to_polynomial(), 4) == (
        Fraction(78, 102), Fraction(198, 234))
    assert density_from_polynomial(SubtreePolynomial((0, 1), 2), 2) == (1, 1)
    # sum k a_k = 24 and sum k^2 a_k = 4 + 16 + 36 = 56 over [4, 4, 4]
    assert density_from_polynomial(cycle_counts(4).to_polynomial(), 4) == (
        Fraction(24, 36), Fraction(56, 72))
    with pytest.raises(DomainError):
        density_from_polynomial(SubtreePolynomial((3, 0, 0), 3), 3)


def _check_report_properties(counts, n):
    r = global_stats(counts, n)
    sizes = {k for k, c in enumerate(counts, start=1) if c}
    assert r.p == r.q * r.mu_p
    assert r.p <= r.q and r.mu_p <= r.mu_q
    if len(sizes) == 1:
        assert r.p == r.q and r.mu_p == r.mu_q
    else:
        assert r.mu_p < r.mu_q
    if max(sizes) == n - 1 and len(sizes) > 1:
        assert r.p < r.q


@settings(max_examples=200)
@given(st.lists(st.integers(0, 10**12), min_size=1, max_size=12).filter(any))
def test_inequalities_on_arbitrary_counts(counts):
    _check_report_properties(counts, len(counts) + 1)


@st.composite
def connected_graphs(draw):
    n = draw(st.integers(2, 7))
    # random spanning tree plus extra edges keeps the graph connected
    edges = {(draw(st.integers(0, v - 1)), v) for v in range(1, n)}
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges |= set(draw(st.lists(st.sampled_from(pairs), max_size=8)))
    return Graph(n, sorted(edges))


@settings(max_examples=80, deadline=None)
@given(connected_graphs())
def test_two_routes_and_identity_on_random_graphs(g):
    poly = subtree_polynomial(g)
    r = global_stats(poly, g.vertex_count)
    assert density_from_polynomial(poly, g.vertex_count) == (r.mu_p, r.mu_q)
    _check_report_properties(poly.sizes(), g.vertex_count)


def test_identity_on_all_connected_graphs_up_to_six_vertices():
    for n in range(2, 7):
        for g in graphs(n):
            poly = subtree_polynomial(g)
            r = global_stats(poly, n)
            assert r.p == r.q * r.mu_p
            assert density_from_polynomial(poly, n) == (r.mu_p, r.mu_q)
