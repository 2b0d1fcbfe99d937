"""
Test cases for exact and modular elimination
"""

import numpy as np
import pytest

from cyclotomic import admissible_primes, cyclo_context
from elimination import (
    ExactEchelon,
    dense_to_row,
    determinant,
    exact_rank,
    kernel_basis,
    modp_rank,
    pivot_structure,
    rref,
    to_int_row,
)


class TestExactElimination:
    """Test suite for elimination over Q(zeta)"""

    @pytest.fixture
    def ctx(self):
        """Fixture providing Q(zeta_8)"""
        return cyclo_context(4)

    @pytest.fixture
    def low_rank(self, ctx):
        """Fixture providing a 5 x 7 matrix of rank 2 with entries in Z[zeta]"""
        rng = np.random.default_rng(0)
        left = rng.integers(-4, 5, size=(5, 2))
        right = rng.integers(-4, 5, size=(2, 7))
        while np.linalg.matrix_rank(left @ right) != 2:
            left = rng.integers(-4, 5, size=(5, 2))
            right = rng.integers(-4, 5, size=(2, 7))
        zeta = ctx.root(1)
        product = left @ right
        return [dense_to_row([zeta * int(v) for v in row]) for row in product]

    def test_rank_of_product(self, ctx, low_rank):
        """Test the rank of a product of rank-2 factors"""
        assert exact_rank(low_rank, ctx) == 2

    def test_kernel(self, ctx, low_rank):
        """Test kernel vectors are annihilated and rank + nullity = columns"""
        basis = kernel_basis(low_rank, 7, ctx)
        assert len(basis) == 5
        for vec in basis:
            for row in low_rank:
                total = sum((value * vec[c] for c, value in row.items()), ctx.zero())
                assert total.is_zero()

    def test_rref_pivots(self, ctx):
        """Test reduced rows carry unit pivots and zeros above and below"""
        one, zeta = ctx.one(), ctx.root(1)
        rows = [{0: zeta, 1: one}, {0: one, 2: zeta}, {1: one - zeta * zeta, 2: -(zeta ** 3)}]
        reduced, pivots = rref(rows, ctx)
        for row, col in zip(reduced, pivots):
            assert row[col] == 1
            for other in reduced:
                if other is not row:
                    assert col not in other

    def test_pivot_structure(self, ctx):
        """Test leading pivot minors are nonsingular"""
        one, zero, zeta = ctx.one(), ctx.zero(), ctx.root(1)
        dense = [[zero, zeta, one], [zero, zeta * 2, one * 2], [one, zero, zeta]]
        rows = [dense_to_row(r) for r in dense]
        sources, pivots = pivot_structure(rows, ctx)
        assert sources == [0, 2]
        for t in range(1, len(sources) + 1):
            minor = [[dense[r][c] for c in pivots[:t]] for r in sources[:t]]
            assert not determinant(minor, ctx).is_zero()

    def test_determinant(self, ctx):
        """Test small determinants"""
        one, zeta = ctx.one(), ctx.root(1)
        assert determinant([[one, one * 2], [one * 3, one * 4]], ctx) == -2
        assert determinant([[zeta, ctx.zero()], [one, zeta]], ctx) == ctx.root(2)
        assert determinant([[one, one], [one, one]], ctx).is_zero()

    def test_echelon_contains(self, ctx):
        """Test span membership"""
        zeta = ctx.root(1)
        echelon = ExactEchelon(ctx)
        assert echelon.add(to_int_row({0: zeta, 2: ctx.one()}))
        assert not echelon.add(to_int_row({0: zeta * zeta, 2: zeta}))
        assert echelon.contains(to_int_row({0: zeta * 3, 2: ctx.one() * 3}))
        assert not echelon.contains(to_int_row({1: ctx.one()}))


class TestModularRank:
    """Test suite for ranks over Z/p"""

    def test_rank_of_product(self):
        """Test the modular rank of an integer product of rank 3"""
        rng = np.random.default_rng(1)
        p = admissible_primes(3, 1)[0]
        M = rng.integers(-9, 10, size=(6, 3)) @ rng.integers(-9, 10, size=(3, 8))
        assert modp_rank(M % p, p) == np.linalg.matrix_rank(M)

    def test_small_prime_drop(self):
        """Test rank can drop modulo a prime dividing a minor"""
        M = np.array([[1, 2], [3, 1]])
        assert modp_rank(M, 7) == 2
        assert modp_rank(M, 5) == 1

    def test_empty(self):
        """Test the empty matrix has rank 0"""
        assert modp_rank(np.zeros((0, 4), dtype=np.int64), 7) == 0
