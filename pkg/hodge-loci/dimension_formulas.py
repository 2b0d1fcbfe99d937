"""
Dimension Formulas - C_a, K^d_n(m), H^d_n(m) and the codimension tables built from them
"""

import itertools
import logging
import random
from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from config import DEFAULT_SEED
from cyclotomic import admissible_primes
from elimination import modp_rank
from indices import check_nd, index_set
from linear_cycles import CycleCombination, enumerate_cycles, m_count, pair_combination
from period_matrix import build_matrix, matrix_of, rank_exact
from periods import PeriodVector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CIType:
    """
    Degree sequence (a_1, ..., a_s) of a complete intersection on X^d_n

    The parts are kept sorted; C_a only depends on the multiset.
    """

    n: int
    d: int
    parts: Tuple[int, ...]

    def __post_init__(self):
        check_nd(self.n, self.d)
        if any(a < 1 for a in self.parts):
            raise ValueError(f"Complete intersection degrees must be positive, got {self.parts}")
        object.__setattr__(self, 'parts', tuple(sorted(self.parts)))

    @classmethod
    def powers(cls, n: int, d: int, *blocks: Tuple[int, int]) -> 'CIType':
        """Build a^b, c^e, ... from (value, multiplicity) blocks."""
        return cls(n, d, tuple(value for value, times in blocks for _ in range(times)))

    def label(self) -> str:
        counts = sorted(Counter(self.parts).items())
        return ','.join(f"{v}^{k}" if k > 1 else str(v) for v, k in counts) or '()'


def ci_type(n: int, d: int, degrees: Sequence[int]) -> CIType:
    """
    The type (d_1, ..., d_{n/2+1}, d-d_1, ..., d-d_{n/2+1}) of a complete intersection of degrees d_i

    Raises:
        ValueError: wrong number of degrees or a degree outside [1, d-1]
    """
    check_nd(n, d)
    if len(degrees) != n // 2 + 1:
        raise ValueError(f"A complete intersection in X^{d}_{n} needs {n // 2 + 1} degrees, got {len(degrees)}")
    if any(not 1 <= e <= d - 1 for e in degrees):
        raise ValueError(f"Degrees must lie in [1, {d - 1}], got {tuple(degrees)}")
    return CIType(n, d, tuple(degrees) + tuple(d - e for e in degrees))


def cformula(t: CIType) -> int:
    """
    C_a = binom(n+1+d, n+1) - sum_k (-1)^{k-1} sum_{|S|=k, sum S <= d} binom(n+1+d-sum S, n+1)

    Sub-multisets are counted with multiplicity by choosing how many copies
    of each distinct part enter S.

    The sum is taken literally for every type: n+1 linear parts leave a
    point, so C_{1^{n+1}} = 1, and n+2 linear parts give 0.
    """
    n, d = t.n, t.d
    counts = sorted(Counter(t.parts).items())
    total = 0
    for choice in itertools.product(*(range(k + 1) for _, k in counts)):
        weight = sum(c * v for c, (v, _) in zip(choice, counts))
        if weight > d:
            continue
        size = sum(choice)
        ways = 1
        for c, (_, k) in zip(choice, counts):
            ways *= comb(k, c)
        total += (-1) ** size * ways * comb(n + 1 + d - weight, n + 1)
    return total


def _check_m(n: int, m: int):
    if not -1 <= m <= n // 2:
        raise ValueError(f"m must lie in [-1, {n // 2}], got {m}")


def kdim(n: int, d: int, m: int) -> int:
    """Codimension of V_P ∩ V_Pcheck for two linear cycles meeting in P^m."""
    check_nd(n, d)
    _check_m(n, m)
    single = cformula(CIType.powers(n, d, (1, n // 2 + 1), (d - 1, n // 2 + 1)))
    meet = cformula(CIType.powers(n, d, (1, n - m + 1), (d - 1, m + 1)))
    return 2 * single - meet


def hdim_scaled(n: int, d: int, m: int, r: int = 1, r_check: int = 1) -> int:
    """rank [p_{i+j}(r P + r_check Pcheck)] for the standard pair meeting in P^m."""
    check_nd(n, d)
    _check_m(n, m)
    rank = rank_exact(matrix_of(pair_combination(n, d, m, r, r_check)))
    logger.debug(f"H({n},{d},{m}; {r},{r_check}) = {rank}")
    return rank


def hdim(n: int, d: int, m: int) -> int:
    return hdim_scaled(n, d, m, 1, 1)


def single_cycle_rank(n: int, d: int) -> int:
    """binom(n/2+d, d) - (n/2+1)^2"""
    return comb(n // 2 + d, d) - (n // 2 + 1) ** 2


def general_rank(n: int, d: int) -> int:
    """Maximal possible rank min(|I_d|, |I_{(n/2)d-n-2}|)."""
    check_nd(n, d)
    return min(len(index_set(n, d, d)), len(index_set(n, d, (n // 2) * d - n - 2)))


def rank_upper_bound(n: int, d: int) -> int:
    """Upper end of the admissible rank range for a nonzero period vector."""
    check_nd(n, d)
    if n <= 2 or d * (n - 2) < 2 * (n + 1):
        return comb((n // 2) * d - 1, n + 1)
    if d * (n - 2) == 2 * (n + 1):
        return comb(d + n, n + 1) - (n + 2)
    return comb(d + n + 1, n + 1) - (n + 2) ** 2


def cubic_bounds(n: int) -> Tuple[int, int]:
    """Rank range binom(n/2+1, 3) .. binom(n+2, min(3, n/2-2)) for cubic Fermat varieties, n >= 4."""
    if n < 4 or n % 2:
        raise ValueError(f"Cubic bounds need an even n >= 4, got {n}")
    return comb(n // 2 + 1, 3), comb(n + 2, min(3, n // 2 - 2))


@dataclass
class RangeCheck:
    rank: int
    lower: int
    upper: int
    general: int

    @property
    def in_range(self) -> bool:
        return self.lower <= self.rank <= self.upper

    @property
    def at_lower_bound(self) -> bool:
        return self.rank == self.lower

    @property
    def is_general(self) -> bool:
        """The rank attains its maximum, so the cycle is a general Hodge cycle."""
        return self.rank == self.general

    def to_record(self) -> Dict:
        return {
            'rank': str(self.rank),
            'lower': str(self.lower),
            'upper': str(self.upper),
            'general_rank': str(self.general),
            'in_range': self.in_range,
            'general_hodge_cycle': self.is_general,
        }


def range_check(n: int, d: int, p: PeriodVector) -> RangeCheck:
    """
    Place rank [p_{i+j}] within its admissible range

    Raises:
        ValueError: p is the zero vector or belongs to another variety
    """
    if (p.n, p.d) != (n, d):
        raise ValueError(f"Period vector of X^{p.d}_{p.n} checked against X^{d}_{n}")
    if p.is_zero():
        raise ValueError("The rank range only applies to nonzero period vectors")
    result = RangeCheck(rank_exact(build_matrix(p)), single_cycle_rank(n, d), rank_upper_bound(n, d), general_rank(n, d))
    if not result.in_range:
        logger.warning(f"Rank {result.rank} outside [{result.lower}, {result.upper}] for ({n},{d})")
    return result


def codim_table(n: int, d: int) -> List[Tuple[Tuple[int, ...], int]]:
    """C_a for every nondecreasing degree type (d_1 <= ... <= d_{n/2+1} <= d/2)."""
    check_nd(n, d)
    rows = []
    for degrees in itertools.combinations_with_replacement(range(1, d // 2 + 1), n // 2 + 1):
        rows.append((degrees, cformula(ci_type(n, d, degrees))))
    return rows


@dataclass
class FirstEquality:
    n: int
    d: int
    hdim: int
    cformula: int

    @property
    def holds(self) -> bool:
        return self.hdim == self.cformula


def first_equality(n: int, d: int) -> FirstEquality:
    """Both sides of H(n/2-1) = C_{1^{n/2},2,(d-1)^{n/2},d-2}; nothing is asserted."""
    check_nd(n, d)
    if n < 2 or d < 3:
        raise ValueError(f"The type (1^{{n/2}},2) needs n >= 2 and d >= 3, got ({n},{d})")
    lhs = hdim(n, d, n // 2 - 1)
    rhs = cformula(ci_type(n, d, (1,) * (n // 2) + (2,)))
    if lhs != rhs:
        logger.info(f"First equality fails for ({n},{d}): H = {lhs}, C = {rhs}")
    return FirstEquality(n, d, lhs, rhs)


@dataclass
class PairSample:
    combination: CycleCombination
    rank: int
    matches_standard: bool


def hdim_random_pairs(
    n: int, d: int, m: int, sample: int, rng: Optional[random.Random] = None, max_attempts: int = 10_000
) -> List[PairSample]:
    """
    H for random pairs of linear cycles meeting in P^m, compared with the standard pair

    Pairs are drawn from all linear cycles and kept when their bicycle count
    says they meet in P^m.
    """
    _check_m(n, m)
    rng = rng or random.Random(DEFAULT_SEED)
    expected = hdim(n, d, m)
    cycles = enumerate_cycles(n, d)
    samples: List[PairSample] = []
    attempts = 0
    while len(samples) < sample and attempts < max_attempts:
        attempts += 1
        first, second = rng.sample(cycles, 2)
        if m_count(first, second) != m:
            continue
        z = CycleCombination(n, d, [(1, first), (1, second)])
        rank = rank_exact(matrix_of(z))
        if rank != expected:
            logger.warning(f"H differs for {z}: {rank} != {expected}")
        samples.append(PairSample(z, rank, rank == expected))
    if len(samples) < sample:
        logger.warning(f"Only {len(samples)} of {sample} pairs meeting in P^{m} found in {max_attempts} draws")
    return samples


def _monomials(nvars: int, degree: int) -> List[Tuple[int, ...]]:
    if degree < 0:
        return []
    if nvars == 1:
        return [(degree,)]
    return [(first,) + rest for first in range(degree, -1, -1) for rest in _monomials(nvars - 1, degree - first)]


def cformula_bruteforce(t: CIType, seed: int = 0) -> int:
    """
    Codimension of the degree-d part of an ideal of random forms of degrees a_1..a_s

    The multiplication map (+) S_{d-a_i} -> S_d is assembled with random
    coefficients modulo a large prime and its rank taken there. Small cases only.
    """
    n, d = t.n, t.d
    nvars = n + 2
    p = admissible_primes(d, 1)[0]
    rng = np.random.default_rng(seed)
    target = _monomials(nvars, d)
    position = {mono: k for k, mono in enumerate(target)}
    columns = []
    for a in t.parts:
        if a > d:
            continue
        form = {mono: int(rng.integers(1, p)) for mono in _monomials(nvars, a)}
        for mult in _monomials(nvars, d - a):
            col = np.zeros(len(target), dtype=np.int64)
            for mono, coeff in form.items():
                col[position[tuple(x + y for x, y in zip(mono, mult))]] = coeff
            columns.append(col)
    if not columns:
        return len(target)
    rank = modp_rank(np.stack(columns), p)
    return len(target) - rank
