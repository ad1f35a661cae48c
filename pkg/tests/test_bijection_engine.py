"""Tests for degree-dominating bijections."""

import pytest
from hypothesis import given, settings

from services.bijection_engine import (
    BijectionPair,
    BijectionRecord,
    DegreeRelation,
    build_bijection,
    dominance_match,
    label_text,
    matching_feasible,
    record_anomalies,
    relation_match_exists,
    verify_bijection,
)
from services.exceptions import BlockInfeasibleError, InvalidInputError
from services.normalizer_chars import enum_norm_n
from services.partition_core import format_partition
from services.sym_characters import enumerate_p_prime
from tests.strategies import degree_multisets


@pytest.mark.unit
class TestDominanceMatch:
    def test_feasible(self):
        result = dominance_match([5, 1, 3], [1, 3, 5])
        assert result.feasible
        assert sorted(result.pairs) == [(0, 2), (1, 0), (2, 1)]
        assert result.global_sorted == [5, 3, 1]

    def test_infeasible(self):
        result = dominance_match([1, 1], [2, 1])
        assert not result.feasible
        assert result.pairs == []

    def test_size_mismatch(self):
        with pytest.raises(InvalidInputError):
            dominance_match([1, 2], [1])

    @settings(max_examples=600)
    @given(degree_multisets())
    def test_agrees_with_augmenting_paths(self, degrees):
        globals_, locals_ = degrees
        result = dominance_match(globals_, locals_)
        assert result.feasible == matching_feasible(globals_, locals_)
        if result.feasible:
            assert sorted(g for g, _ in result.pairs) == sorted(l for _, l in result.pairs) == list(range(len(globals_)))
            assert all(locals_[l] <= globals_[g] for g, l in result.pairs)

    def test_divisibility_relation(self):
        assert DegreeRelation.DIVISIBILITY.holds(2, 6)
        assert not DegreeRelation.DIVISIBILITY.holds(4, 6)
        assert not matching_feasible([6, 3], [4, 1], DegreeRelation.DIVISIBILITY)
        assert matching_feasible([6, 4], [4, 2], DegreeRelation.DIVISIBILITY)


@pytest.mark.unit
class TestRelationExistence:
    def test_divisibility_fails_for_s7_at_3(self):
        assert relation_match_exists(7, 3, DegreeRelation.DOMINANCE)
        assert not relation_match_exists(7, 3, DegreeRelation.DIVISIBILITY)

    def test_trivial_below_p(self):
        assert relation_match_exists(3, 5, DegreeRelation.DIVISIBILITY)


@pytest.mark.unit
class TestBuildBijection:
    def test_single_hook_block(self):
        record = build_bijection(5, 5)
        assert record.strategy == "recursive"
        by_partition = {pair.partition: pair for pair in record.pairs}
        assert by_partition[(5,)].local_degree == 1
        assert by_partition[(1, 1, 1, 1, 1)].local_degree == 1
        assert by_partition[(3, 1, 1)].local_degree == 4
        assert len(record.block_trace) == 1
        assert record.block_trace[0].pinned == ((5,), (1, 1, 1, 1, 1))

    def test_identity_below_p(self):
        record = build_bijection(4, 5)
        assert all(pair.label.tail == pair.partition for pair in record.pairs)
        assert verify_bijection(record).passed

    @pytest.mark.parametrize("p", [5, 7])
    @pytest.mark.parametrize("n", [5, 6, 9, 11, 14, 17, 20])
    def test_recursive_strategy_dominates(self, n, p):
        record = build_bijection(n, p, "recursive")
        report = verify_bijection(record, expected_strategy="recursive")
        assert report.passed, report.failures[:3]
        assert record.strategy == "recursive"
        assert report.checked == len(enumerate_p_prime(n, p))

    @pytest.mark.parametrize("p", [2, 3, 5])
    @pytest.mark.parametrize("n", [4, 8, 12, 15])
    def test_global_strategy_dominates(self, n, p):
        record = build_bijection(n, p, "global")
        assert verify_bijection(record).passed

    @pytest.mark.parametrize("p", [2, 3])
    @pytest.mark.parametrize("n", [6, 9, 13])
    def test_small_primes_pass_with_notes(self, n, p):
        assert verify_bijection(build_bijection(n, p), expected_strategy="recursive").passed

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [25, 31, 40])
    def test_recursive_strategy_at_larger_n(self, n):
        assert verify_bijection(build_bijection(n, 5), expected_strategy="recursive").passed

    def test_rejects_unknown_strategy(self):
        with pytest.raises(InvalidInputError):
            build_bijection(5, 5, "greedy")

    def test_rejects_composite_modulus(self):
        with pytest.raises(InvalidInputError):
            build_bijection(5, 4)


@pytest.mark.unit
class TestRecordOutput:
    def test_lines_and_rows(self):
        record = build_bijection(6, 5)
        lines = record.to_lines()
        assert len(lines) == len(record.pairs)
        assert set(lines[0]) == {"lambda", "label", "dS", "dN"}
        assert isinstance(lines[0]["dS"], str)
        rows = record.csv_rows()
        assert len(rows) == 2 * len(record.pairs)
        assert [row[2] for row in rows[:2]] == ["S", "N"]
        assert rows[1][3] == label_text(record.pairs[0].label)

    def test_summary(self):
        summary = build_bijection(11, 5).summary()
        assert summary["pairs"] == len(enumerate_p_prime(11, 5))
        assert summary["anomalies"] == []
        assert len(summary["blocks"]) == len(enumerate_p_prime(1, 5))


@pytest.mark.unit
class TestVerification:
    def test_detects_dominance_violation(self):
        record = build_bijection(5, 5, "global")
        pairs = list(record.pairs)
        low = next(i for i, pair in enumerate(pairs) if pair.global_degree == 1)
        high = next(i for i, pair in enumerate(pairs) if pair.local_degree == 4)
        swapped = list(pairs)
        swapped[low] = BijectionPair(pairs[low].partition, pairs[high].label, 1, 4)
        swapped[high] = BijectionPair(pairs[high].partition, pairs[low].label, pairs[high].global_degree,
                                      pairs[low].label.degree)
        report = verify_bijection(BijectionRecord(n=5, p=5, strategy="global", pairs=swapped))
        assert not report.passed
        assert any(failure["reason"] == "dominance violated" for failure in report.failures)

    def test_detects_missing_pair(self):
        record = build_bijection(6, 5, "global")
        truncated = BijectionRecord(n=6, p=5, strategy="global", pairs=record.pairs[:-1])
        assert not verify_bijection(truncated).passed

    def test_detects_wrong_recorded_degree(self):
        record = build_bijection(5, 5, "global")
        first = record.pairs[0]
        bad = [BijectionPair(first.partition, first.label, first.global_degree + 1, first.local_degree)]
        report = verify_bijection(BijectionRecord(n=5, p=5, strategy="global", pairs=bad + record.pairs[1:]))
        assert any(failure["reason"] == "recorded degree mismatch" for failure in report.failures)


@pytest.mark.unit
class TestFallback:
    @pytest.fixture
    def failing_recursion(self, mocker):
        return mocker.patch(
            "services.bijection_engine._recursive_pairs",
            side_effect=BlockInfeasibleError((1,), [1, 4], [4, 4], detail="forced"),
        )

    def test_falls_back_to_global(self, failing_recursion):
        record = build_bijection(6, 5)
        assert record.strategy == "global"
        assert record.anomalies[0]["gamma"] == [1]
        assert record.anomalies[0]["n"] == 6
        failing_recursion.assert_called_once_with(6, 5)

    def test_fallback_fails_for_large_primes(self, failing_recursion):
        report = verify_bijection(build_bijection(6, 5), expected_strategy="recursive")
        assert not report.passed
        assert report.failures[0]["reason"] == "recursive block infeasible"

    def test_fallback_is_only_noted_for_small_primes(self, failing_recursion):
        record = build_bijection(7, 3)
        failures, notes = record_anomalies(record)
        assert failures == []
        assert notes == ["recursive strategy fell back to global at n=7, p=3"]
        assert verify_bijection(record, expected_strategy="recursive").passed


@pytest.mark.unit
def test_label_text():
    label = enum_norm_n(7, 5)[0]
    text = label_text(label)
    assert text.startswith("k1a1:")
    assert text.endswith(f"tail:{format_partition(label.tail)}")
