from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from artifact.cfrac import (
    INF,
    catalan,
    enumerate_K,
    enumerate_K_bounded,
    enumerate_K_naive,
    hj_dual,
    hj_eval,
    hj_expand,
    is_admissible,
    to_fraction,
)


def test_small_values():
    assert hj_expand(19, 11) == [2, 4, 3]
    assert hj_eval([1, 1]) == 0
    assert hj_eval([1]) == 1
    assert hj_eval([1, 1, 1]) is INF
    assert hj_dual([2, 4, 3]) == [3, 2, 3, 2]
    assert to_fraction([2, 4, 3]) == (19, 11)


def test_expand_rejects_bad_input():
    with pytest.raises(ValueError):
        hj_expand(4, 2)
    with pytest.raises(ValueError):
        hj_expand(3, 5)


coprime = st.tuples(st.integers(2, 400), st.integers(1, 399)).filter(lambda p: p[1] < p[0] and gcd(*p) == 1)


@given(coprime)
def test_expand_eval_round_trip(nq):
    n, q = nq
    seq = hj_expand(n, q)
    assert all(a >= 2 for a in seq)
    assert hj_eval(seq) == Fraction(n, q)


@given(coprime)
def test_dual_is_expansion_of_complement(nq):
    n, q = nq
    assert hj_dual(hj_expand(n, q)) == hj_expand(n, n - q)
    # Riemenschneider: sum over both sides agrees
    a, b = hj_expand(n, q), hj_expand(n, n - q)
    assert sum(x - 1 for x in a) == sum(x - 1 for x in b)


@given(coprime)
def test_dual_is_an_involution(nq):
    seq = hj_expand(*nq)
    assert hj_dual(hj_dual(seq)) == seq


@pytest.mark.parametrize("s", range(2, 9))
def test_k_counts_are_catalan(s):
    assert len(enumerate_K(s)) == catalan(s - 1)


def test_k1_is_empty():
    assert enumerate_K(1) == set()


@pytest.mark.parametrize("s", range(1, 8))
def test_inductive_matches_naive(s):
    assert enumerate_K(s) == enumerate_K_naive(s)


def test_bounded_19_11():
    assert enumerate_K_bounded([3, 2, 3, 2]) == {(1, 2, 2, 1), (3, 1, 2, 2), (2, 1, 3, 1)}


@given(st.lists(st.integers(2, 6), min_size=1, max_size=6))
def test_bounded_is_a_filter(b):
    ks = enumerate_K_bounded(b)
    assert all(is_admissible(k) and all(x <= y for x, y in zip(k, b)) for k in ks)
