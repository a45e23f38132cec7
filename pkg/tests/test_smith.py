from __future__ import annotations

from hypothesis import given, settings, strategies as st

from lefschetz.smith import cokernel, describe_group, invariant_factors

from oracles import invariant_factors as sympy_factors

matrices = st.integers(1, 5).flatmap(
    lambda cols: st.lists(st.lists(st.integers(-9, 9), min_size=cols, max_size=cols), min_size=1, max_size=5)
)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_matches_sympy(rows):
    assert invariant_factors(rows) == sympy_factors(rows)


@given(matrices)
def test_divisibility_chain(rows):
    d = invariant_factors(rows)
    assert all(x > 0 for x in d)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))


def test_known_groups():
    assert invariant_factors([[2, 0], [0, 3]]) == [1, 6]
    assert invariant_factors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert cokernel([[2, 0], [0, 3]], 2) == [6]
    assert cokernel([[1, 0, 0, 0]], 4) == [0, 0, 0]
    assert cokernel([], 2) == [0, 0]
    assert cokernel([[0, 0]], 2) == [0, 0]


def test_describe_group():
    assert describe_group([]) == "0"
    assert describe_group([0]) == "Z"
    assert describe_group([2, 0, 0]) == "Z/2 + Z^2"
