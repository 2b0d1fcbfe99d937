"""
Test cases for truncated series and periods over deformed Fermat varieties
"""

import itertools
from fractions import Fraction

import pytest

from cyclotomic import ContextMismatchError, cyclo_context
from indices import frac_decomp, index_set
from linear_cycles import CycleCombination, enumerate_cycles, standard_pair
from period_matrix import matrix_of
from periods import period_degree, period_linear, period_vector
from taylor_series import (
    DeformFamily,
    FormIndex,
    TruncSeries,
    _admissible_multisets,
    multi_factorial,
    series_arith,
    taylor_combination,
    taylor_period,
)


class TestDeformFamily:
    """Test suite for deformation families"""

    @pytest.mark.parametrize("nd,count", [((2, 5), 4), ((4, 4), 12), ((6, 3), 8)])
    def test_split_counts(self, nd, count):
        """Test the split family sizes 2 binom(d+n/2, n/2) - 2(n/2+1)^2"""
        assert len(DeformFamily.split(*nd)) == count

    def test_split_support(self):
        """Test split monomials use only even or only odd variables"""
        for alpha in DeformFamily.split(4, 4).params:
            assert not any(alpha[1::2]) or not any(alpha[0::2])

    def test_full_family(self):
        """Test the full family is I_d"""
        fam = DeformFamily.full(2, 5)
        assert len(fam) == 40
        assert fam.monomial_count(3) == 12340
        assert list(fam.params) == list(index_set(2, 5, 5))

    def test_invalid_monomial(self):
        """Test monomials of the wrong degree are rejected"""
        with pytest.raises(ValueError):
            DeformFamily(2, 3, [(1, 1, 0, 0)])


class TestTruncSeries:
    """Test suite for truncated power series"""

    @pytest.fixture
    def fam(self):
        """Fixture providing the split family of the quintic surface"""
        return DeformFamily.split(2, 5)

    def test_product_truncates(self, fam):
        """Test products drop terms above the order"""
        t0 = TruncSeries.variable(fam, 1, 0)
        t1 = TruncSeries.variable(fam, 1, 1)
        assert (t0 * t1).is_zero()
        s0 = TruncSeries.variable(fam, 2, 0)
        s1 = TruncSeries.variable(fam, 2, 1)
        assert (s0 * s1).coefficient((1, 0)) == 1

    def test_ring_identities(self, fam):
        """Test distributivity and subtraction"""
        one = TruncSeries.constant(fam, 3, 1)
        t = [TruncSeries.variable(fam, 3, k) for k in range(3)]
        a = one + t[0] * 2
        b = t[1] - t[2]
        c = t[0] * t[1] + one
        assert a * (b + c) == a * b + a * c
        assert (a - a).is_zero()
        assert series_arith(a, b, 'mul') == a * b
        assert series_arith(a, Fraction(1, 2), 'scalar') == a.scale(Fraction(1, 2))

    def test_mismatch(self, fam):
        """Test series of different orders or families cannot be combined"""
        with pytest.raises(ContextMismatchError):
            TruncSeries.variable(fam, 2, 0) + TruncSeries.variable(fam, 3, 0)
        with pytest.raises(ContextMismatchError):
            TruncSeries.variable(fam, 2, 0) + TruncSeries.variable(DeformFamily.full(2, 5), 2, 0)
        with pytest.raises(ValueError):
            series_arith(TruncSeries.zero(fam, 2), TruncSeries.zero(fam, 2), 'pow')

    def test_substitute(self, fam):
        """Test t0 -> t1 + t1^2 in t0^2 gives t1^2 + 2 t1^3"""
        t0 = TruncSeries.variable(fam, 3, 0)
        t1 = TruncSeries.variable(fam, 3, 1)
        result = (t0 * t0).substitute({0: t1 + t1 * t1})
        assert result == t1 * t1 + (t1 * t1 * t1).scale(2)

    def test_substitute_constant_rejected(self, fam):
        """Test substituted series must vanish at the origin"""
        t0 = TruncSeries.variable(fam, 2, 0)
        with pytest.raises(ValueError):
            t0.substitute({0: TruncSeries.constant(fam, 2, 1)})

    def test_degree_helpers(self, fam):
        """Test lowest degree, homogeneous parts and linear part"""
        t0 = TruncSeries.variable(fam, 3, 0)
        t1 = TruncSeries.variable(fam, 3, 1)
        s = t0 * t1 + t1 * 3
        assert s.lowest_degree() == 1
        assert s.linear_part() == {1: cyclo_context(5).rational(3)}
        assert s.homogeneous(2) == t0 * t1
        assert TruncSeries.zero(fam, 3).lowest_degree() is None

    def test_multi_factorial(self):
        """Test a! over repeated parameters"""
        assert multi_factorial((0, 0, 3)) == 2
        assert multi_factorial((1, 1, 1, 2, 2)) == 12
        assert multi_factorial(()) == 1


class TestTaylorPeriods:
    """Test suite for periods over the deformed family"""

    def test_form_index(self):
        """Test integral pole orders only"""
        assert FormIndex((0, 0, 0, 0), 4).k == 1
        assert FormIndex((1, 0, 1, 0), 3).k == 2
        with pytest.raises(ValueError):
            FormIndex((0, 0, 0, 0), 3)

    def test_empty_family(self):
        """Test an empty family leaves only the constant term"""
        c = standard_pair(2, 4, 0)[1]
        beta = FormIndex((1, 1, 1, 1), 4)
        series = taylor_period(c, beta, DeformFamily.empty(2, 4), 3)
        assert list(series.terms) == [()]

    @pytest.mark.parametrize("nd", [(2, 3), (2, 4), (2, 5), (4, 3)])
    def test_constant_term_is_period(self, nd):
        """Test the constant term reproduces the closed period formula"""
        n, d = nd
        fam = DeformFamily.empty(n, d)
        for c in enumerate_cycles(n, d)[:6]:
            for beta in index_set(n, d, period_degree(n, d)):
                series = taylor_period(c, FormIndex(beta, d), fam, 0)
                assert series.coefficient(()) == period_linear(c, beta), f"{c} at {beta}"

    def test_admissible_terms_only(self):
        """Test every stored term satisfies the pairing condition"""
        n, d = 2, 4
        fam = DeformFamily.full(n, d)
        c = standard_pair(n, d, 0)[1]
        beta = FormIndex((0, 0, 0, 0), d)
        series = taylor_period(c, beta, fam, 2)
        assert not series.is_zero()
        for key in series.terms:
            total = list(beta.beta)
            for p in key:
                total = [x + y for x, y in zip(total, fam.params[p])]
            _, fracs = frac_decomp(total, d)
            for u, v, _ in c.pairs():
                assert fracs[u] + fracs[v] == 1

    def test_every_admissible_term_found(self):
        """Test the pruned enumeration keeps every admissible multi-index up to the order"""
        n, d, order = 2, 4, 2
        fam = DeformFamily.full(n, d)
        c = standard_pair(n, d, 0)[1]
        beta = FormIndex((0, 0, 0, 0), d)
        expected = set()
        for size in range(order + 1):
            for key in itertools.combinations_with_replacement(range(len(fam)), size):
                total = list(beta.beta)
                for p in key:
                    total = [x + y for x, y in zip(total, fam.params[p])]
                _, fracs = frac_decomp(total, d)
                if all(fracs[u] + fracs[v] == 1 for u, v, _ in c.pairs()):
                    expected.add(key)
        assert expected
        assert set(taylor_period(c, beta, fam, order).terms) == expected

    def test_residue_enumeration(self):
        """Test multisets are nondecreasing, bounded and hit the required residues"""
        residues = [(1, 0), (0, 1), (1, 1), (0, 0)]
        keys = list(_admissible_multisets(residues, (1, 1), 3, 2))
        brute = [
            key
            for size in range(4)
            for key in itertools.combinations_with_replacement(range(4), size)
            if tuple(sum(residues[p][i] for p in key) % 2 for i in range(2)) == (1, 1)
        ]
        assert sorted(keys) == sorted(brute)
        assert len(keys) == len(set(keys))

    def test_linear_term_matches_period_matrix(self):
        """Test the linear coefficient is (n/2) p_{beta+alpha} on the period matrix row"""
        n, d = 4, 4
        P, Q = standard_pair(n, d, 0)
        z = CycleCombination.of((1, P), (-2, Q))
        fam = DeformFamily.full(n, d)
        p = period_vector(z, exact=True)
        M = matrix_of(z)
        for r, beta in enumerate(M.row_index):
            linear = taylor_combination(z, FormIndex(beta, d), fam, 1).linear_part()
            for col, alpha in enumerate(fam.params):
                target = tuple(a + b for a, b in zip(beta, alpha))
                if max(target) > d - 2:
                    continue
                coeff = linear.get(col, cyclo_context(d).zero())
                assert coeff == p.get(target) * (n // 2)
                assert coeff.is_zero() == M.entry(r, col).is_zero()

    def test_cancellation(self):
        """Test c - c has the zero series"""
        c = standard_pair(2, 5, 0)[1]
        z = CycleCombination(2, 5, [(3, c), (-3, c)])
        assert taylor_combination(z, FormIndex((1, 0, 0, 0), 5), DeformFamily.split(2, 5), 3).is_zero()

    def test_linearity(self):
        """Test constant and linear terms follow the cycle coefficients"""
        P, Q = standard_pair(2, 4, -1)
        fam = DeformFamily.full(2, 4)
        beta = FormIndex((0, 0, 0, 0), 4)
        lhs = taylor_combination(CycleCombination.of((2, P), (-3, Q)), beta, fam, 2)
        rhs = taylor_period(P, beta, fam, 2).scale(2) + taylor_period(Q, beta, fam, 2).scale(-3)
        assert lhs == rhs

    def test_variety_mismatch(self):
        """Test a cycle and a family on different varieties are rejected"""
        c = standard_pair(2, 4, 0)[0]
        with pytest.raises(ValueError):
            taylor_period(c, FormIndex((0, 0, 0, 1), 5), DeformFamily.empty(2, 5), 1)
