from fractions import Fraction
from itertools import combinations
from math import comb

import pytest

from arbor.closed_form import (
    bipartite_counts,
    complete_counts,
    complete_local_counts,
    cycle_counts,
)
from arbor.core import DomainError, complete_bipartite_graph, complete_graph, cycle_graph
from arbor.enumeration import is_subtree, local_subtree_polynomial, subtree_polynomial
from arbor.stats import global_stats


def test_complete_counts_examples():
    assert list(complete_counts(4)) == [6, 12, 16]
    assert list(complete_counts(2)) == [1]
    assert complete_counts(10).top == 10**8
    with pytest.raises(DomainError):
        complete_counts(1)


def test_complete_local_counts_examples():
    assert list(complete_local_counts(4)) == [1, 4, 8]
    assert list(complete_local_counts(2)) == [1]
    assert list(complete_local_counts(3)) == [1, 2]
    with pytest.raises(DomainError):
        complete_local_counts(1)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_local_counts_match_brute_force(n):
    edges = complete_graph(n).sorted_edges()
    through = [
        sum(1 for s in combinations(edges, k) if (0, 1) in s and is_subtree(s))
        for k in range(1, n)
    ]
    assert list(complete_local_counts(n)) == through


def test_bipartite_counts_examples():
    assert list(bipartite_counts(2, 2)) == [4, 4, 4]
    assert bipartite_counts(2, 3).top == 12 == 2 ** (3 - 1) * 3 ** (2 - 1)
    assert list(bipartite_counts(1, 1)) == [1]


def test_cycle_counts_examples():
    assert list(cycle_counts(4)) == [4, 4, 4]
    assert list(cycle_counts(3)) == [3, 3] == list(complete_counts(3))
    # sum k a_k = 10 * 45 and (n-1) sum a_k = 9 * 90
    assert global_stats(cycle_counts(10), 10).mu_p == Fraction(10, 18)


@pytest.mark.parametrize("n", range(2, 9))
def test_complete_matches_enumeration(n):
    assert subtree_polynomial(complete_graph(n)).sizes() == list(complete_counts(n))


@pytest.mark.parametrize("m, n", [(m, n) for m in range(1, 8) for n in range(1, 9 - m)])
def test_bipartite_matches_enumeration(m, n):
    assert subtree_polynomial(complete_bipartite_graph(m, n)).sizes() == list(bipartite_counts(m, n))


@pytest.mark.parametrize("n", range(3, 11))
def test_cycle_matches_enumeration(n):
    assert subtree_polynomial(cycle_graph(n)).sizes() == list(cycle_counts(n))


@pytest.mark.parametrize("n", range(3, 51))
def test_local_counts_double_count_B(n):
    counts = complete_counts(n)
    B = sum(k * c for k, c in enumerate(counts, start=1))
    local = complete_local_counts(n)
    assert sum(local) * comb(n, 2) == B
    assert local.top * comb(n, 2) == (n - 1) * n ** (n - 2)
    assert local.top == 2 * n ** (n - 3)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_local_counts_match_local_enumeration(n):
    g = complete_graph(n)
    for e in [(0, 1), (1, n - 1)]:
        assert local_subtree_polynomial(g, e).sizes() == list(complete_local_counts(n))


def test_count_vector_polynomial_view():
    poly = complete_counts(4).to_polynomial()
    assert poly.coefficients == (0, 6, 12, 16)
    assert poly.vertex_count == 4
