"""Tests for Sylow subgroup elements, class distributions and restriction multiplicities."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from services.cyclotomic import CycloInt
from services.exceptions import EnumerationCapError, InvalidInputError
from services.partition_core import all_partitions, degree
from services.sylow_restriction import (
    StarLabel,
    WreathElement,
    all_linear_labels,
    composite_threshold,
    cycle_type,
    cycle_type_count,
    enumerate_elements,
    enumerated_distribution,
    exponent,
    group_order,
    level_distribution,
    lin_value,
    m_star,
    omega_check,
    omega_star_check,
    permutation_cycle_type,
    restriction_multiplicity,
    star_product,
)


@pytest.mark.unit
class TestWreathElements:
    @pytest.mark.parametrize("p, k, order", [(5, 1, 5), (3, 2, 81), (2, 3, 128), (5, 2, 5 ** 6)])
    def test_group_order(self, p, k, order):
        assert group_order(p, k) == order

    @pytest.mark.parametrize("p, k", [(3, 2), (2, 3), (5, 1)])
    def test_enumeration_is_complete_and_faithful(self, p, k):
        elements = list(enumerate_elements(p, k))
        assert len(elements) == group_order(p, k)
        permutations = {tuple(g(x) for x in range(p ** k)) for g in elements}
        assert len(permutations) == len(elements)
        for g in elements:
            assert cycle_type(g) == permutation_cycle_type(g)

    def test_enumeration_cap(self):
        with pytest.raises(EnumerationCapError):
            list(enumerate_elements(5, 2, cap=1000))

    def test_compose_matches_point_action(self):
        elements = list(enumerate_elements(3, 2))
        identity = WreathElement.identity(3, 2)
        for g, h in zip(elements[::7], elements[3::11]):
            composed = g.compose(h)
            assert all(composed(x) == g(h(x)) for x in range(9))
            assert g.compose(identity) == g

    def test_compose_rejects_mixed_levels(self):
        with pytest.raises(InvalidInputError):
            WreathElement.identity(3, 1).compose(WreathElement.identity(3, 2))


@pytest.mark.unit
class TestLinearCharacters:
    def test_star_value_on_top_rotation(self):
        g = WreathElement(p=5, level=1, base=(WreathElement(p=5, level=0),) * 5, top=1)
        assert lin_value(StarLabel.star(5, 1), g) == CycloInt.from_power(5, 1)
        assert exponent((0,), g) == 0

    def test_exponent_is_a_homomorphism(self):
        elements = list(enumerate_elements(3, 2))
        for coords in ((1, 1), (0, 2), (2, 0)):
            for g, h in zip(elements[::5], elements[2::9]):
                assert exponent(coords, g.compose(h)) == (exponent(coords, g) + exponent(coords, h)) % 3

    def test_lin_value_needs_single_factor(self):
        with pytest.raises(InvalidInputError):
            lin_value(star_product(6, 5), WreathElement.identity(5, 1))

    def test_star_product(self):
        label = star_product(33, 5)
        assert label.factors == ((1, 1), (1,))
        assert label.a0 == 3
        assert label.n == 33
        assert label.order == group_order(5, 2) * group_order(5, 1)

    def test_label_display(self):
        assert StarLabel.of(5, [1, 7]).display() == "1,2"
        assert StarLabel.star(5, 2).display() == "star"

    def test_all_linear_labels(self):
        assert len(all_linear_labels(3, 2)) == 9


@pytest.mark.unit
class TestDistributions:
    @pytest.mark.parametrize("p, coords", [(3, (1, 1)), (3, (0, 1)), (3, (2, 0)), (2, (1, 0, 1)), (5, (2,))])
    def test_recursive_matches_enumeration(self, p, coords):
        assert level_distribution(p, coords) == enumerated_distribution(p, coords)

    def test_distribution_counts_the_group(self):
        assert sum(level_distribution(5, (1, 1)).values()) == group_order(5, 2)

    def test_cycle_types_of_p25(self):
        assert cycle_type_count(5, 2) == 7


@pytest.mark.unit
class TestMultiplicities:
    def test_worked_example(self):
        assert restriction_multiplicity((4, 1), StarLabel.star(5, 1)) == 1

    def test_trivial_character_in_trivial_representation(self):
        assert restriction_multiplicity((9,), StarLabel.trivial(3, 2)) == 1
        assert restriction_multiplicity((9,), StarLabel.star(3, 2)) == 0

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_cyclic_sylow_decomposes_completely(self, p):
        for partition in all_partitions(p):
            total = sum(restriction_multiplicity(partition, label) for label in all_linear_labels(p, 1))
            assert total == degree(partition)

    @settings(max_examples=25, deadline=None)
    @given(st.sampled_from(all_partitions(9)), st.tuples(st.integers(0, 2), st.integers(0, 2)))
    def test_multiplicity_bounded_by_degree(self, partition, coords):
        multiplicity = restriction_multiplicity(partition, StarLabel.of(3, coords))
        assert 0 <= multiplicity <= degree(partition)

    def test_with_fixed_points(self):
        label = StarLabel(p=3, factors=((1,),), a0=2)
        assert restriction_multiplicity((5,), label) == 0
        assert restriction_multiplicity((4, 1), label) == 1

    def test_size_mismatch(self):
        with pytest.raises(InvalidInputError):
            restriction_multiplicity((3, 1), StarLabel.star(5, 1))

    def test_cap(self):
        with pytest.raises(EnumerationCapError):
            restriction_multiplicity((25,), StarLabel.star(5, 2), cap=100)


@pytest.mark.unit
class TestThresholds:
    def test_m_star(self):
        assert m_star(5, 1) == 4
        assert m_star(5, 2) == 19
        assert m_star(3, 3) == 27 - 9 - 3
        with pytest.raises(InvalidInputError):
            m_star(5, 0)

    def test_composite_threshold(self):
        assert composite_threshold(33, 5) == 19 + 4 + 3
        assert composite_threshold(10, 5) == 8


@pytest.mark.unit
class TestOmegaChecks:
    def test_star_check_at_level_one(self):
        report = omega_star_check(5, 1, all_partitions(5))
        assert report.passed
        assert report.checked == 7
        assert report.in_box == 5
        assert report.positive == 5
        assert report.min_positive_degree == 4
        assert report.to_dict()["degree_floor"] == "4"

    def test_violation_is_reported(self):
        # the trivial character of C_5 misses (4, 1), which sits inside B_5(4)
        report = omega_check(StarLabel.trivial(5, 1), 4, [(4, 1), (3, 2)])
        assert not report.passed
        assert report.violations[0]["lambda"] == [4, 1]

    @pytest.mark.slow
    def test_star_check_at_level_two(self):
        sample = all_partitions(25)[::60]
        assert omega_star_check(5, 2, sample).passed
