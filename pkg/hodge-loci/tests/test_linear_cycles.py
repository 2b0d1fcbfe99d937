"""
Test cases for linear cycles, intersections and bicycles
"""

import random

import pytest

from linear_cycles import (
    CycleCombination,
    LinearCycle,
    bicycles,
    enumerate_cycles,
    intersection_dim,
    intersection_matrix,
    intersection_number,
    linear_cycle_count,
    m_count,
    pair_combination,
    permutation_sign,
    random_combination,
    standard_pair,
)
from reference_values import LINEAR_CYCLE_COUNTS


class TestEnumeration:
    """Test suite for listing linear cycles"""

    @pytest.mark.parametrize("nd,count", sorted(LINEAR_CYCLE_COUNTS.items()))
    def test_counts(self, nd, count):
        """Test (n+1)!! d^{n/2+1} linear cycles are enumerated"""
        assert linear_cycle_count(*nd) == count
        cycles = enumerate_cycles(*nd)
        assert len(cycles) == count
        assert len(set(cycles)) == count, "duplicate linear cycles"

    def test_lie_on_fermat(self):
        """Test every enumerated cycle lies on the Fermat variety"""
        for nd in [(2, 3), (2, 4), (4, 3)]:
            assert all(c.lies_on_fermat() for c in enumerate_cycles(*nd))

    def test_canonical(self):
        """Test enumerated cycles are already in canonical form"""
        for c in enumerate_cycles(4, 3):
            assert c.is_canonical()
            assert c.b[0] == 0

    def test_canonical_same_subspace(self):
        """Test swapping a pair gives the same linear subspace"""
        c = LinearCycle(2, 3, (0, 0), (1, 0, 2, 3))
        canon = c.canonical()
        assert canon.b == (0, 1, 2, 3)
        assert canon.a == (2, 0)
        assert intersection_dim(c, canon) == 1

    def test_exponents_mod_d(self):
        """Test exponents are kept modulo d"""
        assert LinearCycle(2, 5, (6, -1), (0, 1, 2, 3)).a == (1, 4)

    def test_invalid_cycle(self):
        """Test wrong permutations and exponent counts are rejected"""
        with pytest.raises(ValueError):
            LinearCycle(2, 3, (0, 0), (0, 1, 1, 3))
        with pytest.raises(ValueError):
            LinearCycle(2, 3, (0,), (0, 1, 2, 3))

    def test_permutation_sign(self):
        """Test signs of simple permutations"""
        assert permutation_sign((0, 1, 2, 3)) == 1
        assert permutation_sign((1, 0, 2, 3)) == -1
        assert permutation_sign((1, 2, 0, 3)) == 1


class TestIntersections:
    """Test suite for intersection dimensions and numbers"""

    def test_standard_pair_exponents(self):
        """Test the exponents of the standard pair"""
        _, second = standard_pair(2, 5, 0)
        assert second.a == (0, 1)
        _, second = standard_pair(2, 5, -1)
        assert second.a == (1, 1)
        first, second = standard_pair(6, 3, 3)
        assert first == second

    def test_standard_pair_range(self):
        """Test m outside [-1, n/2] is rejected"""
        with pytest.raises(ValueError):
            standard_pair(4, 3, 3)
        with pytest.raises(ValueError):
            standard_pair(4, 3, -2)

    def test_standard_pair_meets_in_m(self):
        """Test the standard pair meets in P^m"""
        for n, d in [(2, 5), (4, 4), (6, 3)]:
            for m in range(-1, n // 2 + 1):
                assert intersection_dim(*standard_pair(n, d, m)) == m, f"({n},{d},{m})"

    def test_intersection_numbers(self):
        """Test (1 - (1-d)^{m+1}) / d"""
        assert intersection_number(*standard_pair(2, 5, -1)) == 0
        assert intersection_number(*standard_pair(2, 5, 0)) == 1
        line = standard_pair(2, 3, 1)[0]
        assert intersection_number(line, line) == -1

    def test_twenty_seven_lines(self):
        """Test the intersection matrix of the lines on the cubic surface"""
        lines = enumerate_cycles(2, 3)
        matrix = intersection_matrix(lines)
        for i, row in enumerate(matrix):
            assert row[i] == -1
            assert all(v in (0, 1) for j, v in enumerate(row) if j != i)
            assert sum(row) == 9, f"line {i} meets {sum(row) + 1} others"

    def test_symmetry(self):
        """Test intersections and m_count are symmetric"""
        rng = random.Random(5)
        cycles = enumerate_cycles(4, 3)
        for _ in range(30):
            c1, c2 = rng.sample(cycles, 2)
            assert intersection_dim(c1, c2) == intersection_dim(c2, c1)
            assert intersection_number(c1, c2) == intersection_number(c2, c1)
            assert m_count(c1, c2) == m_count(c2, c1)

    def test_different_varieties(self):
        """Test cycles on different varieties cannot be intersected"""
        with pytest.raises(ValueError):
            intersection_dim(standard_pair(2, 3, 0)[0], standard_pair(2, 4, 0)[0])


class TestBicycles:
    """Test suite for bicycles and conductors"""

    def test_same_cycle(self):
        """Test a cycle against itself gives n/2+1 new bicycles of length 2"""
        c = standard_pair(4, 5, 2)[0]
        bikes = bicycles(c, c)
        assert len(bikes) == 3
        for bike in bikes:
            assert len(bike.cycle) == 2
            assert bike.conductor == 0
            assert bike.is_new
        assert m_count(c, c) == 2

    def test_worked_pair(self):
        """Test a = a_check = 0 with different pairings: one new bicycle"""
        c1 = LinearCycle(2, 4, (0, 0), (0, 1, 2, 3))
        c2 = LinearCycle(2, 4, (0, 0), (0, 1, 3, 2))
        conductors = sorted(bike.conductor for bike in bicycles(c1, c2))
        assert conductors == [0, 2]
        assert m_count(c1, c2) == 0

    @pytest.mark.parametrize("nd", [(2, 3), (2, 4)])
    def test_m_count_all_pairs(self, nd):
        """Test m_count equals the intersection dimension on every pair"""
        cycles = enumerate_cycles(*nd)
        for c1 in cycles:
            for c2 in cycles:
                assert m_count(c1, c2) == intersection_dim(c1, c2), f"{c1} vs {c2}"

    def test_m_count_sampled(self):
        """Test m_count equals the intersection dimension on sampled pairs of (4, 3)"""
        rng = random.Random(2017)
        cycles = enumerate_cycles(4, 3)
        for _ in range(300):
            c1, c2 = rng.choice(cycles), rng.choice(cycles)
            assert m_count(c1, c2) == intersection_dim(c1, c2), f"{c1} vs {c2}"


class TestCycleCombination:
    """Test suite for integer combinations of linear cycles"""

    @pytest.fixture
    def pair(self):
        """Fixture providing two lines on the quintic surface meeting in a point"""
        return standard_pair(2, 5, 0)

    def test_cancellation(self, pair):
        """Test P - P is the zero combination"""
        P, _ = pair
        z = CycleCombination.of((1, P)) - CycleCombination.of((1, P))
        assert z.is_zero()

    def test_merging_on_canonical_form(self):
        """Test terms equal up to canonical form are merged"""
        c = LinearCycle(2, 3, (0, 0), (1, 0, 2, 3))
        z = CycleCombination(2, 3, [(1, c), (2, c.canonical())])
        assert z.terms == ((3, c.canonical()),)

    def test_pair_combination(self, pair):
        """Test r P + r_check P_check"""
        z = pair_combination(2, 5, 0, 1, 2)
        assert sorted(z.terms) == sorted([(1, pair[0]), (2, pair[1])])

    def test_intersection_pairing(self, pair):
        """Test the pairing with the hyperplane section"""
        P, Q = pair
        zinf = CycleCombination(2, 5, zinf=1)
        assert zinf.intersection(zinf) == 5
        assert zinf.intersection(CycleCombination.of((1, P))) == 1
        z = CycleCombination.of((1, P), (1, Q))
        # P.P = Q.Q = (1 - 16)/5 = -3, P.Q = 1
        assert z.intersection(z) == -3 - 3 + 2

    def test_random_combination(self):
        """Test seeded sampling is reproducible and uses distinct cycles"""
        z1 = random_combination(2, 4, 3, random.Random(1), coeff_range=(1, 1))
        z2 = random_combination(2, 4, 3, random.Random(1), coeff_range=(1, 1))
        assert z1 == z2
        assert len(z1.terms) == 3
        assert all(c == 1 for c, _ in z1.terms)
