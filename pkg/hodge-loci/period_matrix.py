"""
Period Matrix - the matrix [p_{i+j}], its exact and modular ranks, and rank in a pencil
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Collection, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
import sympy as sp

from config import DEFAULT_PRIME_COUNT, MINOR_PROBE_BUDGET, MINOR_SAMPLE_COUNT, PRIME_CEILING
from cyclotomic import (
    BadPrimeError,
    CycloNum,
    admissible_primes,
    cyclo_context,
    cyclo_to_modp,
    primitive_root_of_unity,
)
from elimination import determinant, exact_rank, kernel_basis as _kernel_basis, modp_rank, pivot_structure
from indices import IndexSet, index_set
from linear_cycles import CycleCombination, LinearCycle, enumerate_cycles, random_combination, standard_pair
from periods import PeriodVector, period_vector

logger = logging.getLogger(__name__)

Row = Dict[int, CycloNum]


class MinorSearchError(RuntimeError):
    """Raised when no nonsingular minor of the requested size is found within the probe budget"""


class PeriodMatrix:
    """
    [p_{i+j}] with rows I_{(n/2)d-n-2} and columns I_d

    Rows are stored keyed by column index with zero entries omitted.
    """

    def __init__(self, n: int, d: int, rows: List[Row], source: Optional[object] = None):
        self.n = n
        self.d = d
        self.row_index: IndexSet = index_set(n, d, (n // 2) * d - n - 2)
        self.col_index: IndexSet = index_set(n, d, d)
        if len(rows) != len(self.row_index):
            raise ValueError(f"Expected {len(self.row_index)} rows, got {len(rows)}")
        self.rows = rows
        self.source = source

    @property
    def ctx(self):
        return cyclo_context(self.d)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.row_index), len(self.col_index)

    def entry(self, r: int, c: int) -> CycloNum:
        return self.rows[r].get(c, self.ctx.zero())

    def dense(self) -> List[List[CycloNum]]:
        nrows, ncols = self.shape
        return [[self.entry(r, c) for c in range(ncols)] for r in range(nrows)]

    def apply(self, vec: Sequence[CycloNum]) -> List[CycloNum]:
        """Matrix-vector product M v."""
        return [sum((value * vec[c] for c, value in row.items()), self.ctx.zero()) for row in self.rows]

    def is_zero(self) -> bool:
        return not any(self.rows)

    def __repr__(self) -> str:
        return f"PeriodMatrix(n={self.n}, d={self.d}, shape={self.shape})"


def build_matrix(p: PeriodVector, source: Optional[object] = None) -> PeriodMatrix:
    """
    Assemble entry (i, j) = p_{i+j}; p is zero outside I_{(n/2+1)d-n-2}
    """
    n, d = p.n, p.d
    row_index = index_set(n, d, (n // 2) * d - n - 2)
    col_index = index_set(n, d, d)
    rows: List[Row] = [{} for _ in range(len(row_index))]
    support = p.support()
    for r, i in enumerate(row_index):
        for s in support:
            j = tuple(a - b for a, b in zip(s, i))
            if min(j) < 0 or j not in col_index:
                continue
            rows[r][col_index.index(j)] = p.get(s)
    matrix = PeriodMatrix(n, d, rows, source=source if source is not None else p)
    logger.debug(f"Built {matrix}")
    return matrix


def matrix_of(z: CycleCombination) -> PeriodMatrix:
    """Scaled period matrix of a combination (ranks and kernels only)."""
    return build_matrix(period_vector(z, exact=False), source=z)


def rank_exact(M: PeriodMatrix) -> int:
    """Rank over Q(zeta_2d) by fraction-free elimination."""
    return exact_rank(M.rows, M.ctx)


def kernel_basis(M: PeriodMatrix) -> List[List[CycloNum]]:
    """Exact basis of ker M, checked by multiplication."""
    basis = _kernel_basis(M.rows, M.shape[1], M.ctx)
    for vec in basis:
        if not all(x.is_zero() for x in M.apply(vec)):
            raise ArithmeticError("Kernel vector failed the M v = 0 check")
    return basis


def modular_image(M: PeriodMatrix, p: int, r: int) -> np.ndarray:
    image = np.zeros(M.shape, dtype=np.int64)
    for k, row in enumerate(M.rows):
        for c, value in row.items():
            image[k, c] = cyclo_to_modp(value, p, r)
    return image


def rank_modp(M: PeriodMatrix, p: int, r: int) -> int:
    """
    Rank of the image under zeta -> r mod p; never exceeds the exact rank

    Raises:
        BadPrimeError: p divides a denominator (retry with another prime)
    """
    if p >= PRIME_CEILING:
        raise BadPrimeError(f"Prime {p} exceeds the int64-safe ceiling {PRIME_CEILING}")
    return modp_rank(modular_image(M, p, r), p)


class RankResult(NamedTuple):
    rank: int
    provenance: str


def rank_certified(
    M: PeriodMatrix,
    primes: Optional[Sequence[int]] = None,
    certify: bool = True,
    prime_count: int = DEFAULT_PRIME_COUNT,
) -> RankResult:
    """
    Modular filter followed by exact certification

    A modular rank equal to min(rows, cols) is already exact. Otherwise the
    exact rank is computed when certify is set; without it, agreement over
    all primes is reported as 'modular-agreement(k)'.
    """
    if primes is None:
        primes = admissible_primes(M.d, prime_count + 2, PRIME_CEILING)
    ranks = []
    for p in primes:
        if len(ranks) == prime_count:
            break
        try:
            ranks.append(rank_modp(M, p, primitive_root_of_unity(M.d, p)))
        except BadPrimeError as e:
            logger.warning(f"Skipping prime {p}: {e}")
    if ranks and max(ranks) == min(M.shape):
        return RankResult(max(ranks), 'exact-by-full-modular-rank')
    if certify or not ranks:
        return RankResult(rank_exact(M), 'exact')
    if len(set(ranks)) == 1:
        return RankResult(ranks[0], f'modular-agreement({len(ranks)})')
    return RankResult(max(ranks), 'modular-lower-bound')


@dataclass
class ParamMatrix:
    """A(x) = base + x * slope, entries of degree at most one in x."""

    base: PeriodMatrix
    slope: PeriodMatrix

    def __post_init__(self):
        if (self.base.n, self.base.d) != (self.slope.n, self.slope.d):
            raise ValueError("Base and slope come from different Fermat varieties")

    @classmethod
    def from_pair(cls, first: LinearCycle, second: LinearCycle) -> 'ParamMatrix':
        n, d = first.n, first.d
        return cls(
            matrix_of(CycleCombination(n, d, [(1, first)])),
            matrix_of(CycleCombination(n, d, [(1, second)])),
        )

    @classmethod
    def standard(cls, n: int, d: int, m: int) -> 'ParamMatrix':
        return cls.from_pair(*standard_pair(n, d, m))

    @property
    def ctx(self):
        return self.base.ctx

    @property
    def shape(self) -> Tuple[int, int]:
        return self.base.shape

    def at(self, x: Fraction) -> List[Row]:
        x = Fraction(x)
        rows = []
        for b_row, s_row in zip(self.base.rows, self.slope.rows):
            row = dict(b_row)
            if x != 0:
                for c, value in s_row.items():
                    total = row[c] + value * x if c in row else value * x
                    if total.is_zero():
                        row.pop(c, None)
                    else:
                        row[c] = total
            rows.append(row)
        return rows

    def rank_at(self, x: Fraction) -> int:
        return exact_rank(self.at(x), self.ctx)


@dataclass
class Minor:
    rows: List[int]
    cols: List[int]
    determinant: List[CycloNum]  # coefficients of P(x), constant term first
    probe: Fraction


def _interpolate(points: Sequence[Fraction], values: Sequence[CycloNum], ctx) -> List[CycloNum]:
    """Coefficients of the polynomial through (points, values), constant term first."""
    size = len(points)
    coeffs = [ctx.zero() for _ in range(size)]
    for k, (xk, yk) in enumerate(zip(points, values)):
        if yk.is_zero():
            continue
        basis = [Fraction(1)]
        denom = Fraction(1)
        for t, xt in enumerate(points):
            if t == k:
                continue
            basis = [Fraction(0)] + basis
            for s in range(len(basis) - 1):
                basis[s] -= xt * basis[s + 1]
            denom *= xk - xt
        for s, c in enumerate(basis):
            if c:
                coeffs[s] = coeffs[s] + yk * (c / denom)
    while len(coeffs) > 1 and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


def minor_polynomial(A: ParamMatrix, rows: Sequence[int], cols: Sequence[int]) -> List[CycloNum]:
    """
    det of the (rows, cols) minor of A(x) as a polynomial in x

    Evaluated at x = 1..a+1 and interpolated; the degree is at most a.
    """
    size = len(rows)
    ctx = A.ctx
    if size == 0:
        return [ctx.one()]
    points = [Fraction(k) for k in range(1, size + 2)]
    values = []
    for x in points:
        full = A.at(x)
        values.append(determinant([[full[r].get(c, ctx.zero()) for c in cols] for r in rows], ctx))
    return _interpolate(points, values, ctx)


def good_minor(A: ParamMatrix, a: int, seed: int = 0, budget: int = MINOR_PROBE_BUDGET,
               avoid: Collection[int] = ()) -> Minor:
    """
    An a x a minor of A(x) whose determinant is not the zero polynomial

    Pivot columns are searched in a seeded random order that puts the
    columns in `avoid` last, so repeated calls spread over the columns.

    Raises:
        MinorSearchError: no probe within the budget reaches rank a
    """
    ctx = A.ctx
    if a == 0:
        return Minor([], [], [ctx.one()], Fraction(0))
    rng = random.Random(seed)
    avoid = set(avoid)
    fresh = [c for c in range(A.shape[1]) if c not in avoid]
    used = [c for c in range(A.shape[1]) if c in avoid]
    rng.shuffle(fresh)
    rng.shuffle(used)
    order = fresh + used
    position = {c: k for k, c in enumerate(order)}
    probes = [Fraction(rng.randint(2, 10 ** 6), rng.randint(1, 997)) for _ in range(budget)]
    for x0 in probes:
        permuted = [{position[c]: v for c, v in row.items()} for row in A.at(x0)]
        sources, pivots = pivot_structure(permuted, ctx)
        if len(sources) < a:
            logger.debug(f"Probe x={x0} has rank {len(sources)} < {a}")
            continue
        rows, cols = sorted(sources[:a]), sorted(order[p] for p in pivots[:a])
        poly = minor_polynomial(A, rows, cols)
        if all(c.is_zero() for c in poly):
            raise ArithmeticError(f"Minor nonsingular at x={x0} interpolated to zero")
        return Minor(rows, cols, poly, x0)
    raise MinorSearchError(f"No {a}x{a} minor with nonzero determinant after {budget} probes")


def rational_roots(poly: Sequence[CycloNum]) -> List[Fraction]:
    """
    Rational roots of a polynomial with Q(zeta) coefficients

    A rational root is a common root of every power-basis coordinate
    polynomial, so the roots are read off the gcd of those polynomials.
    """
    x = sp.Symbol('x')
    if not poly:
        return []
    deg = poly[0].ctx.deg
    coordinate_polys = []
    for t in range(deg):
        coeffs = [c.coeffs[t] for c in poly]
        if any(coeffs):
            coordinate_polys.append(
                sp.Poly([sp.Rational(q.numerator, q.denominator) for q in reversed(coeffs)], x, domain=sp.QQ)
            )
    if not coordinate_polys:
        raise ValueError("The zero polynomial has every rational number as a root")
    g = reduce(lambda f, h: f.gcd(h), coordinate_polys)
    if g.degree() <= 0:
        return []
    roots = set()
    for factor, _ in g.factor_list()[1]:
        if factor.degree() == 1:
            c1, c0 = factor.all_coeffs()
            r = -sp.Rational(c0) / sp.Rational(c1)
            roots.add(Fraction(int(r.p), int(r.q)))
    return sorted(roots)


@dataclass
class ScanResult:
    generic_rank: int
    minors: List[Minor]
    rational_roots: List[Fraction]
    root_ranks: Dict[Fraction, int]
    rank_drops: List[Fraction]
    probes: Dict[Fraction, int] = field(default_factory=dict)
    note: str = 'only rational roots of the minor determinants are scanned'

    def to_record(self) -> Dict:
        return {
            'generic_rank': str(self.generic_rank),
            'minor_size': str(self.generic_rank),
            'minor_count': str(len(self.minors)),
            'determinant_degrees': [str(len(m.determinant) - 1) for m in self.minors],
            'rational_roots': [str(r) for r in self.rational_roots],
            'root_ranks': {str(r): str(k) for r, k in sorted(self.root_ranks.items())},
            'rank_drops': [str(r) for r in self.rank_drops],
            'note': self.note,
        }


def constant_rank_scan(A: ParamMatrix, seed: int = 0, minor_count: int = MINOR_SAMPLE_COUNT) -> ScanResult:
    """
    Generic rank of A(x) and the rational points where it changes

    The generic rank a is the largest rank seen, confirmed at a+2 distinct
    nonzero values of x. Candidate points are the rational roots of the
    determinants of `minor_count` good a x a minors, each built on pivot
    columns the earlier ones did not use; every candidate gets its rank,
    and the drops are the candidates below a.
    """
    if minor_count < 1:
        raise ValueError(f"At least one minor is needed, got {minor_count}")
    rng = random.Random(seed)
    probes: Dict[Fraction, int] = {}
    first = Fraction(rng.randint(2, 10 ** 6), rng.randint(1, 997))
    a = probes.setdefault(first, A.rank_at(first))
    confirmed = {first} if probes[first] == a else set()
    x = 1
    while len(confirmed) < a + 2:
        value = Fraction(x)
        x += 1
        if value in probes:
            continue
        rank = probes[value] = A.rank_at(value)
        if rank > a:
            a = rank
            confirmed = {v for v, k in probes.items() if k == a}
        elif rank == a:
            confirmed.add(value)
    minors: List[Minor] = []
    used = set()
    roots = set()
    for _ in range(minor_count if a else 1):
        minor = good_minor(A, a, seed=rng.randrange(2 ** 32), avoid=used)
        minors.append(minor)
        used.update(minor.cols)
        roots.update(rational_roots(minor.determinant))
    roots = sorted(roots)
    root_ranks = {r: probes[r] if r in probes else A.rank_at(r) for r in roots}
    drops = sorted({r for r, k in root_ranks.items() if k < a} | {v for v, k in probes.items() if k < a})
    logger.info(f"Constant-rank scan: generic rank {a}, {len(minors)} minors, rational roots {roots}, drops {drops}")
    return ScanResult(a, minors, roots, root_ranks, drops, probes)


class ConcatResult(NamedTuple):
    rank_first: int
    rank_second: int
    rank_stacked: int

    @property
    def no_inclusion(self) -> bool:
        """Neither kernel contains the other."""
        return self.rank_stacked > self.rank_first and self.rank_stacked > self.rank_second


def concat_rank(M1: PeriodMatrix, M2: PeriodMatrix) -> ConcatResult:
    """Ranks of M1, M2 and of their row concatenation."""
    if (M1.n, M1.d) != (M2.n, M2.d):
        raise ValueError("Matrices of different Fermat varieties")
    return ConcatResult(rank_exact(M1), rank_exact(M2), exact_rank(M1.rows + M2.rows, M1.ctx))


def _random_tangent_source(n: int, d: int, rng: random.Random, cycles: Sequence[LinearCycle]) -> CycleCombination:
    """A single linear cycle, or a sum of two meeting in P^{n/2-1} or P^{n/2-2}."""
    first = rng.choice(cycles)
    changed = rng.choice([0, 1, 2])
    if changed == 0 or changed > n // 2 + 1:
        return CycleCombination(n, d, [(1, first)])
    # a different exponent in k slots of the same pairing cuts the meet down to P^{n/2-k}
    slots = rng.sample(range(n // 2 + 1), changed)
    a = list(first.a)
    for e in slots:
        a[e] = (a[e] + rng.randint(1, d - 1)) % d
    second = LinearCycle(n, d, a, first.b)
    return CycleCombination(n, d, [(1, first), (1, second)])


def kernel_sweep(n: int, d: int, sample: int, seed: int) -> List[Tuple[CycleCombination, CycleCombination, ConcatResult]]:
    """
    Concatenated-rank checks on a seeded sample of tangent-space pairs
    """
    rng = random.Random(seed)
    cycles = enumerate_cycles(n, d)
    results = []
    for _ in range(sample):
        z1 = _random_tangent_source(n, d, rng, cycles)
        z2 = _random_tangent_source(n, d, rng, cycles)
        results.append((z1, z2, concat_rank(matrix_of(z1), matrix_of(z2))))
    violations = sum(1 for _, _, res in results if not res.no_inclusion)
    logger.info(f"Kernel sweep ({n},{d}): {sample} pairs, {violations} without strict inequality")
    return results


def three_cycle_test(n: int, d: int, sample: int, seed: int, threshold: int) -> List[Tuple[CycleCombination, int, bool]]:
    """
    Rank of [p_{i+j}] for sums of three distinct linear cycles against a threshold

    Returns:
        (combination, rank, rank > threshold) per sample
    """
    rng = random.Random(seed)
    results = []
    for _ in range(sample):
        z = random_combination(n, d, 3, rng, coeff_range=(1, 1))
        rank = rank_exact(matrix_of(z))
        results.append((z, rank, rank > threshold))
    return results
