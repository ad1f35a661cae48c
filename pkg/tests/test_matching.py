"""Tests for Hopcroft-Karp maximum matching."""

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from services.matching import HopcroftKarp, has_perfect_matching


def brute_force_maximum(adjacency, right_count):
    best = 0
    left_count = len(adjacency)
    for rights in itertools.permutations(range(max(left_count, right_count)), left_count):
        matched = sum(1 for left, right in enumerate(rights) if right in adjacency[left])
        best = max(best, matched)
    return best


graphs = st.integers(min_value=1, max_value=5).flatmap(
    lambda n: st.lists(st.lists(st.integers(min_value=0, max_value=n - 1), max_size=n), min_size=n, max_size=n)
)


@pytest.mark.unit
def test_simple_matching():
    matcher = HopcroftKarp([[0, 1], [0], [2]])
    assert matcher.run() == 3
    assert matcher.matching == {0: 1, 1: 0, 2: 2}


@pytest.mark.unit
def test_needs_augmenting_path():
    # greedy 0 -> 0 blocks 1; the augmenting path reroutes 0 to 1
    assert HopcroftKarp([[0, 1], [0]]).run() == 2


@pytest.mark.unit
def test_hall_violation():
    assert not has_perfect_matching([[0], [0], [1, 2]], 3)


@pytest.mark.unit
def test_perfect_matching_needs_equal_sides():
    assert not has_perfect_matching([[0, 1]], 2)
    assert has_perfect_matching([], 0)


@pytest.mark.unit
@given(graphs)
def test_matches_brute_force(adjacency):
    n = len(adjacency)
    matcher = HopcroftKarp(adjacency)
    size = matcher.run()
    assert size == brute_force_maximum([set(rights) for rights in adjacency], n)
    matching = matcher.matching
    assert len(set(matching.values())) == len(matching) == size
    assert all(right in adjacency[left] for left, right in matching.items())
