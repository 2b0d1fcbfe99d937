"""
Test cases for periods of linear cycles
"""

from fractions import Fraction

import pytest

from cyclotomic import cyclo_context
from indices import index_set
from linear_cycles import CycleCombination, LinearCycle, enumerate_cycles, pair_combination, standard_pair
from periods import period_degree, period_linear, period_prefactor, period_support, period_vector


class TestPeriodLinear:
    """Test suite for the closed period formula"""

    @pytest.fixture
    def line(self):
        """Fixture providing x_0 - zeta x_1 = x_2 - zeta x_3 = 0 on the cubic surface"""
        return LinearCycle(2, 3, (0, 0), (0, 1, 2, 3))

    def test_worked_value(self, line):
        """Test the period of x_0 x_2 is -zeta_6^4 / 9"""
        ctx = cyclo_context(3)
        assert period_linear(line, (1, 0, 1, 0)) == ctx.root(4) * Fraction(-1, 9)

    def test_scaled_value(self, line):
        """Test the scaled period drops the positive prefactor"""
        ctx = cyclo_context(3)
        assert period_linear(line, (1, 0, 1, 0), exact=False) == -ctx.root(4)

    def test_outside_support(self, line):
        """Test pairs not summing to d-2 give zero"""
        assert period_linear(line, (1, 1, 0, 0)).is_zero()

    def test_wrong_degree(self, line):
        """Test vectors of the wrong degree are rejected"""
        with pytest.raises(ValueError):
            period_linear(line, (1, 1, 1, 0))
        with pytest.raises(ValueError):
            period_linear(line, (1, 0, 1))

    def test_prefactor(self):
        """Test 1 / (d^{n/2+1} (n/2)!)"""
        assert period_prefactor(2, 3) == Fraction(1, 9)
        assert period_prefactor(4, 6) == Fraction(1, 432)

    def test_support_size(self):
        """Test the support has (d-1)^{n/2+1} members"""
        for n, d in [(2, 3), (2, 5), (4, 4), (6, 3)]:
            c = standard_pair(n, d, 0)[1]
            support = [i for i in index_set(n, d, period_degree(n, d)) if not period_linear(c, i).is_zero()]
            assert len(support) == (d - 1) ** (n // 2 + 1)
            assert sorted(i for i, _ in period_support(c)) == support

    def test_exponent_shift(self):
        """Test exponents a and a+d give the same periods"""
        c1 = LinearCycle(4, 4, (0, 1, 2), (0, 2, 1, 3, 4, 5))
        c2 = LinearCycle(4, 4, (4, 5, 2), (0, 2, 1, 3, 4, 5))
        for i, _ in period_support(c1):
            assert period_linear(c1, i) == period_linear(c2, i)


class TestPeriodVector:
    """Test suite for period vectors of combinations"""

    def test_single_cycle_pointwise(self):
        """Test a single cycle reproduces period_linear entry by entry"""
        for n, d in [(2, 3), (2, 4), (4, 3)]:
            for c in enumerate_cycles(n, d)[:10]:
                p = period_vector(CycleCombination.of((1, c)), exact=True)
                for i in index_set(n, d, period_degree(n, d)):
                    assert p[i] == period_linear(c, i)

    def test_cancellation(self):
        """Test c - c has zero periods"""
        c = standard_pair(4, 4, 1)[1]
        z = CycleCombination(4, 4, [(1, c), (-1, c)])
        assert period_vector(z).is_zero()

    def test_linearity(self):
        """Test periods are linear in the combination"""
        P, Q = standard_pair(4, 5, 0)
        lhs = period_vector(CycleCombination.of((2, P), (-3, Q)))
        rhs = period_vector(CycleCombination.of((1, P))) * 2 + period_vector(CycleCombination.of((1, Q))) * -3
        assert lhs == rhs

    def test_pair_nonzero(self):
        """Test the standard pair of lines on the cubic surface has nonzero periods"""
        assert not period_vector(pair_combination(2, 3, 0)).is_zero()

    def test_hyperplane_section_vanishes(self):
        """Test Z_inf contributes nothing to primitive periods"""
        assert period_vector(CycleCombination(2, 4, zinf=3)).is_zero()

    def test_read_outside_index_set(self):
        """Test item access rejects vectors outside the index set"""
        p = period_vector(pair_combination(2, 3, 0))
        with pytest.raises(KeyError):
            p[(2, 0, 0, 0)]
        assert p.get((2, 0, 0, 0)).is_zero()
