from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from fundform.multiindex import (
    DegenerateIndex,
    MultiIndex,
    count_indices,
    enumerate_indices,
    parse_multiindex,
)

counts = st.lists(st.integers(0, 5), min_size=1, max_size=4)


@pytest.mark.parametrize("c, length, fact, weight", [
    ((0, 0), 0, 1, 1),
    ((2, 1), 3, 2, 3),
    ((0, 4), 4, 24, 1),
    ((3, 3), 6, 36, 20),
    ((1, 1), 2, 1, 2),
])
def test_basic_quantities(c, length, fact, weight):
    I = MultiIndex(c)
    assert I.length == length
    assert I.factorial == fact
    assert I.weight == weight


def test_arithmetic():
    assert MultiIndex((1, 0)) + MultiIndex((0, 1)) == (1, 1)
    assert MultiIndex((2, 1)) - MultiIndex((1, 1)) == (1, 0)
    assert MultiIndex((2, 1)).increment(2) == (2, 2)
    assert MultiIndex((2, 1)).at(1) == 2
    with pytest.raises(DegenerateIndex):
        MultiIndex((0, 1)) - MultiIndex((1, 0))
    with pytest.raises(DegenerateIndex):
        MultiIndex((0, 1)).decrement(1)


def test_negative_counts_rejected():
    with pytest.raises(ValueError):
        MultiIndex((1, -1))


def test_enumeration_order():
    assert enumerate_indices(2, 0) == [(0, 0)]
    assert enumerate_indices(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert enumerate_indices(1, 3) == [(3,)]
    assert enumerate_indices(3, 1) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_text_form_round_trip():
    I = MultiIndex((2, 0, 1))
    assert repr(I) == "(2,0,1)"
    assert parse_multiindex(repr(I)) == I


@given(st.integers(1, 4), st.integers(0, 6))
def test_enumeration_size_and_weights(m, p):
    idx = enumerate_indices(m, p)
    assert len(idx) == comb(p + m - 1, m - 1) == count_indices(m, p)
    assert len(set(idx)) == len(idx)
    assert all(I.length == p for I in idx)
    assert sum(I.weight for I in idx) == m ** p


@given(counts, st.data())
def test_add_subtract_inverse(c, data):
    I = MultiIndex(c)
    J = MultiIndex(data.draw(st.lists(st.integers(0, 5), min_size=len(c), max_size=len(c))))
    assert (I + J) - J == I
    assert (I + J).weight * (I + J).factorial == factorial(I.length + J.length)


@given(counts)
def test_weight_is_multinomial(c):
    I = MultiIndex(c)
    w = 1
    rest = I.length
    for x in c:
        w *= comb(rest, x)
        rest -= x
    assert I.weight == w
