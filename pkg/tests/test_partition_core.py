"""Tests for partitions, hooks, beta-sets and the abacus."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from services.exceptions import InvalidInputError
from services.partition_core import (
    all_partitions,
    beta_hook_pairs,
    beta_pair_to_hook,
    conjugate,
    contains,
    core_quotient,
    count_multipartitions,
    degree,
    degree_by_branching,
    e_hooks,
    first_column_beta_set,
    format_partition,
    from_core_quotient,
    hook_lengths,
    hook_to_beta_pair,
    hooks,
    in_box,
    is_core,
    make_partition,
    multipartitions,
    n_s_invariant,
    p_adic_digits,
    partition_of,
    plus,
    remove_hook,
    shift,
    size,
    sub_partitions,
    union,
)
from tests.strategies import partitions


@pytest.mark.unit
class TestMakePartition:
    def test_drops_trailing_zeros(self):
        assert make_partition([3, 1, 0, 0]) == (3, 1)

    def test_empty(self):
        assert make_partition([]) == ()

    @pytest.mark.parametrize("parts", [[1, 2], [3, -1], [2, 0, 1], [1.5], [True]])
    def test_rejects_invalid(self, parts):
        with pytest.raises(InvalidInputError):
            make_partition(parts)


@pytest.mark.unit
def test_plus_and_union():
    assert plus((3, 1), (2, 2, 1)) == (5, 3, 1)
    assert union((3, 1), (2, 2)) == (3, 2, 2, 1)


@pytest.mark.unit
def test_box_and_containment():
    assert in_box((3, 3, 1), 3)
    assert not in_box((4,), 3)
    assert not in_box((1, 1, 1, 1), 3)
    assert contains((4, 2, 1), (2, 2))
    assert not contains((4, 2), (2, 2, 1))


@pytest.mark.unit
@pytest.mark.parametrize("n, count", [(0, 1), (1, 1), (5, 7), (10, 42), (20, 627)])
def test_all_partitions_count(n, count):
    result = all_partitions(n)
    assert len(result) == count
    assert len(set(result)) == count
    assert all(size(partition) == n for partition in result)


@pytest.mark.unit
@given(partitions())
def test_conjugate_is_an_involution(partition):
    assert conjugate(conjugate(partition)) == partition
    assert size(conjugate(partition)) == size(partition)


@pytest.mark.unit
@given(partitions(max_size=10))
def test_degree_matches_branching_rule(partition):
    assert degree(partition) == degree_by_branching(partition)


@pytest.mark.unit
@pytest.mark.parametrize("n", range(1, 15))
def test_sum_of_squared_degrees_is_group_order(n):
    assert sum(degree(partition) ** 2 for partition in all_partitions(n)) == math.factorial(n)


@pytest.mark.unit
@pytest.mark.parametrize("n", range(1, 15))
def test_conjugate_has_the_same_degree(n):
    for partition in all_partitions(n):
        assert degree(conjugate(partition)) == degree(partition)


@pytest.mark.unit
def test_known_degrees():
    assert degree((2, 1)) == 2
    assert degree((3, 2)) == 5
    assert degree((4, 1)) == 4
    assert degree((3, 3, 3)) == 42
    assert degree(()) == 1


@pytest.mark.unit
def test_hooks_of_small_partition():
    lengths = hook_lengths((3, 1))
    assert lengths == {(1, 1): 4, (1, 2): 2, (1, 3): 1, (2, 1): 1}
    assert [hook.length for hook in e_hooks((3, 1), 2)] == [4, 2]


@pytest.mark.unit
class TestBetaSets:
    def test_first_column_beta_set(self):
        assert first_column_beta_set((3, 2, 2)) == (5, 3, 2)

    def test_shift(self):
        assert shift((5, 3, 2), 2) == (7, 5, 4, 1, 0)

    def test_remove_hook(self):
        beta = remove_hook((7, 5, 4, 1, 0), 7, 3)
        assert beta == (5, 4, 3, 1, 0)
        assert partition_of(beta) == (1, 1, 1)

    def test_remove_hook_rejects_occupied_target(self):
        with pytest.raises(InvalidInputError):
            remove_hook((7, 5, 4, 1, 0), 7, 5)

    def test_partition_of_rejects_repeats(self):
        with pytest.raises(InvalidInputError):
            partition_of((3, 3, 1))

    @given(partitions(), st.integers(min_value=0, max_value=6))
    def test_shift_keeps_partition(self, partition, s):
        assert partition_of(shift(first_column_beta_set(partition), s)) == partition

    @given(partitions(min_size=1, max_size=10))
    def test_beta_pairs_are_the_hooks(self, partition):
        beta = first_column_beta_set(partition)
        pairs = beta_hook_pairs(beta)
        assert sorted(x - y for x, y in pairs) == sorted(hook.length for hook in hooks(partition))
        for x, y in pairs:
            hook = beta_pair_to_hook(beta, x, y)
            assert hook_to_beta_pair(beta, hook) == (x, y)
            removed = partition_of(remove_hook(beta, x, y))
            assert size(removed) == size(partition) - (x - y)


@pytest.mark.unit
class TestCoreQuotient:
    def test_first_worked_example(self):
        result = core_quotient((8, 5, 3, 3), 5)
        assert result.core == (1, 1, 1, 1)
        assert result.quotient == ((), (), (2,), (1,), ())
        assert result.quotient_size == 3
        assert n_s_invariant((8, 5, 3, 3), 5) == 2

    def test_second_worked_example(self):
        result = core_quotient((7, 5, 5, 3, 3), 5)
        assert result.core == (4, 1, 1, 1, 1)
        assert result.quotient == ((), (2,), (1,), (), ())
        assert n_s_invariant((7, 5, 5, 3, 3), 5) == 2

    def test_long_partition(self):
        partition = (7, 7, 4, 3, 2, 2) + (1,) * 8
        result = core_quotient(partition, 5)
        assert result.core == (2, 1)
        assert result.quotient == ((2,), (1, 1, 1, 1), (), (), ())
        assert n_s_invariant(partition, 5) == 4

    def test_to_dict(self):
        assert core_quotient((2, 1), 2).to_dict() == {"r": 2, "core": [2, 1], "quotient": [[], []], "quotient_size": 0}

    def test_rejects_small_modulus(self):
        with pytest.raises(InvalidInputError):
            core_quotient((3,), 1)

    @given(partitions(max_size=16), st.integers(min_value=2, max_value=7))
    def test_size_identity_and_core(self, partition, r):
        result = core_quotient(partition, r)
        assert size(partition) == size(result.core) + r * result.quotient_size
        assert is_core(result.core, r)
        assert len(e_hooks(partition, r)) == result.quotient_size

    @settings(max_examples=60)
    @given(partitions(max_size=16), st.integers(min_value=2, max_value=7))
    def test_rebuild_from_core_and_quotient(self, partition, r):
        result = core_quotient(partition, r)
        assert from_core_quotient(result.core, result.quotient, r) == partition

    @pytest.mark.slow
    @pytest.mark.parametrize("r", [2, 3, 5, 7])
    def test_rebuild_every_partition_up_to_twenty(self, r):
        for n in range(21):
            for partition in all_partitions(n):
                result = core_quotient(partition, r)
                assert size(result.core) + r * result.quotient_size == n
                assert from_core_quotient(result.core, result.quotient, r) == partition

    def test_rebuild_rejects_non_core(self):
        with pytest.raises(InvalidInputError):
            from_core_quotient((2,), ((), ()), 2)


@pytest.mark.unit
def test_p_adic_digits():
    assert p_adic_digits(33, 5) == ([(2, 1), (1, 1)], 3)
    assert p_adic_digits(4, 5) == ([], 4)
    assert p_adic_digits(0, 3) == ([], 0)
    assert p_adic_digits(18, 3) == ([(2, 2)], 0)


@pytest.mark.unit
@pytest.mark.parametrize("s, a", [(1, 4), (2, 3), (3, 3), (5, 2), (4, 0)])
def test_multipartition_count_matches_enumeration(s, a):
    tuples = list(multipartitions(s, a))
    assert len(tuples) == count_multipartitions(s, a)
    assert len(set(tuples)) == len(tuples)
    assert all(sum(size(component) for component in t) == a for t in tuples)


@pytest.mark.unit
def test_sub_partitions():
    subs = list(sub_partitions((3, 2), 3))
    assert sorted(subs) == [(2, 1), (3,)]
    assert all(contains((3, 2), sub) for sub in subs)
    assert list(sub_partitions((2,), 3)) == []


@pytest.mark.unit
def test_format_partition():
    assert format_partition((3, 1, 1)) == "(3,1,1)"
    assert format_partition(()) == "()"
