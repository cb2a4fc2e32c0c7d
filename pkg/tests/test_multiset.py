from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from homifs.multiset import DigitMultiset, all_distinct, as_rational, multiset_equal, scale, sumset
from oracles import brute_distinct, brute_sumset

M = DigitMultiset.of

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
multisets = st.lists(rationals, min_size=0, max_size=7).map(M)


def test_canonical_form_sorts_and_counts():
    A = M([3, 1, F(1, 2), 1])
    assert A.items == ((F(1, 2), 1), (F(1), 2), (F(3), 1))
    assert len(A) == 4
    assert A.as_list() == [F(1, 2), 1, 1, 3]


def test_rejects_floats():
    with pytest.raises(TypeError):
        M([0.5])
    assert as_rational("2/6") == F(1, 3)


@pytest.mark.parametrize(
    "r, A, expected",
    [
        (F(1, 3), [1, 3], [F(1, 3), 1]),
        (1, [0, 2], [0, 2]),
        (F(-1, 3), [0, 2], [F(-2, 3), 0]),
    ],
)
def test_scale_examples(r, A, expected):
    assert scale(r, M(A)) == M(expected)


def test_scale_by_zero_collapses():
    assert scale(0, M([1, 2, 5])) == DigitMultiset(((F(0), 3),))


@pytest.mark.parametrize(
    "A, B, expected",
    [
        ([0, 2], [0, F(2, 3)], [0, F(2, 3), 2, F(8, 3)]),
        ([1, 3], [F(-1, 3), -1], [0, F(2, 3), 2, F(8, 3)]),
        ([5], [0], [5]),
    ],
)
def test_sumset_examples(A, B, expected):
    assert brute_sumset(A, B) == sorted(expected)
    assert sumset(M(A), M(B)) == M(expected)


def test_multiset_equal_examples():
    X = [0, F(2, 3), 2, F(8, 3)]
    assert multiset_equal(M(X), M(X))
    assert not multiset_equal(M([0, 2]), M([0, 2, 2]))
    assert not multiset_equal(M([0]), M([0, 1]))


def test_all_distinct_examples():
    assert all_distinct(M([0, F(2, 3), 2, F(8, 3)]))
    collide = sumset(M([0, 1, 2]), scale(F(1, 2), M([0, 1, 2])))
    assert collide == M([0, F(1, 2), 1, 1, F(3, 2), 2, 2, F(5, 2), 3])
    assert not all_distinct(collide)
    assert all_distinct(M([5]))


@given(multisets, multisets)
def test_sumset_commutes_and_has_product_size(A, B):
    assert sumset(A, B) == sumset(B, A)
    assert len(sumset(A, B)) == len(A) * len(B)
    assert sumset(A, B).as_list() == brute_sumset(A.as_list(), B.as_list())


@given(multisets, multisets, multisets)
def test_sumset_associates(A, B, C):
    assert sumset(sumset(A, B), C) == sumset(A, sumset(B, C))


@given(rationals, multisets, multisets)
def test_scale_distributes_over_sumset(r, A, B):
    assert scale(r, sumset(A, B)) == sumset(scale(r, A), scale(r, B))


@given(rationals, rationals, multisets)
def test_scale_composes(r, q, A):
    assert scale(r, scale(q, A)) == scale(r * q, A)


@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3), max_size=10))
def test_all_distinct_matches_pairwise_oracle(values):
    assert all_distinct(M(values)) == brute_distinct(values)
