"""
Linear Cycles - linear subspaces P^{n/2} of the Fermat variety and their incidence
"""

import itertools
import logging
import random
from math import prod
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from cyclotomic import CycloNum, cyclo_context
from elimination import exact_rank
from indices import check_nd

logger = logging.getLogger(__name__)


def permutation_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation of 0..len-1 via its cycle decomposition."""
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class LinearCycle:
    """
    The linear cycle cut out by x_{b_2e} - zeta^{1+2a_e} x_{b_2e+1} = 0, e = 0..n/2

    Any permutation b and any integer exponents are accepted; exponents are
    kept modulo d. Use canonical() for the normal form with b_0 = 0 and each
    even slot holding the smallest unused index.
    """

    def __init__(self, n: int, d: int, a: Sequence[int], b: Sequence[int]):
        check_nd(n, d)
        if len(a) != n // 2 + 1:
            raise ValueError(f"Expected {n // 2 + 1} exponents, got {len(a)}")
        if sorted(b) != list(range(n + 2)):
            raise ValueError(f"b must be a permutation of 0..{n + 1}, got {tuple(b)}")
        self.n = n
        self.d = d
        self.a: Tuple[int, ...] = tuple(int(x) % d for x in a)
        self.b: Tuple[int, ...] = tuple(int(x) for x in b)

    @property
    def sign(self) -> int:
        return permutation_sign(self.b)

    def pairs(self) -> List[Tuple[int, int, int]]:
        """(b_2e, b_2e+1, a_e) for every slot e."""
        return [(self.b[2 * e], self.b[2 * e + 1], self.a[e]) for e in range(self.n // 2 + 1)]

    def is_canonical(self) -> bool:
        return self.canonical().b == self.b

    def canonical(self) -> 'LinearCycle':
        normalized = []
        for u, v, a in self.pairs():
            if u > v:
                # x_v - zeta^{-(1+2a)} x_u = 0 describes the same subspace
                u, v, a = v, u, self.d - 1 - a
            normalized.append((u, v, a))
        normalized.sort()
        b = [x for u, v, _ in normalized for x in (u, v)]
        return LinearCycle(self.n, self.d, [a for _, _, a in normalized], b)

    def defining_forms(self) -> List[Dict[int, CycloNum]]:
        ctx = cyclo_context(self.d)
        return [{u: ctx.one(), v: -ctx.root(1 + 2 * a)} for u, v, a in self.pairs()]

    def lies_on_fermat(self) -> bool:
        """Substituting the equations into sum x_i^d gives zero pair by pair."""
        ctx = cyclo_context(self.d)
        return all((ctx.root(self.d * (1 + 2 * a)) + 1).is_zero() for _, _, a in self.pairs())

    def _key(self):
        return (self.n, self.d, self.a, self.b)

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearCycle) and self._key() == other._key()

    def __lt__(self, other: 'LinearCycle') -> bool:
        return self._key() < other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"LinearCycle(n={self.n}, d={self.d}, a={self.a}, b={self.b})"

    def to_record(self) -> Dict:
        return {'a': list(self.a), 'b': list(self.b)}


def _pairings(remaining: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
    if not remaining:
        yield ()
        return
    first = remaining[0]
    for k in range(1, len(remaining)):
        rest = remaining[1:k] + remaining[k + 1:]
        for tail in _pairings(rest):
            yield (first, remaining[k]) + tail


def linear_cycle_count(n: int, d: int) -> int:
    """(n+1)!! * d^{n/2+1}"""
    return prod(range(n + 1, 0, -2)) * d ** (n // 2 + 1)


def enumerate_cycles(n: int, d: int) -> List[LinearCycle]:
    """
    All linear cycles in canonical form, ordered by b then a
    """
    check_nd(n, d)
    cycles = [
        LinearCycle(n, d, a, b)
        for b in _pairings(tuple(range(n + 2)))
        for a in itertools.product(range(d), repeat=n // 2 + 1)
    ]
    expected = linear_cycle_count(n, d)
    if len(cycles) != expected:
        raise RuntimeError(f"Enumerated {len(cycles)} linear cycles, expected {expected}")
    logger.debug(f"Enumerated {len(cycles)} linear cycles for (n,d)=({n},{d})")
    return cycles


def standard_pair(n: int, d: int, m: int) -> Tuple[LinearCycle, LinearCycle]:
    """
    Two linear cycles meeting in P^m: a = 0 and a = (0^{m+1}, 1^{n/2-m}), b = identity

    Raises:
        ValueError: m outside [-1, n/2]
    """
    check_nd(n, d)
    if not -1 <= m <= n // 2:
        raise ValueError(f"m must lie in [-1, {n // 2}], got {m}")
    identity = tuple(range(n + 2))
    a_check = (0,) * (m + 1) + (1,) * (n // 2 - m)
    return LinearCycle(n, d, (0,) * (n // 2 + 1), identity), LinearCycle(n, d, a_check, identity)


def _check_same_nd(c1: LinearCycle, c2: LinearCycle):
    if (c1.n, c1.d) != (c2.n, c2.d):
        raise ValueError(f"Cycles live on different Fermat varieties: {(c1.n, c1.d)} vs {(c2.n, c2.d)}")


def intersection_dim(c1: LinearCycle, c2: LinearCycle) -> int:
    """Projective dimension of c1 ∩ c2, -1 for the empty set."""
    _check_same_nd(c1, c2)
    rank = exact_rank(c1.defining_forms() + c2.defining_forms(), cyclo_context(c1.d))
    return c1.n + 1 - rank


def intersection_number(c1: LinearCycle, c2: LinearCycle) -> int:
    """(1 - (1-d)^{m+1}) / d for cycles meeting in P^m."""
    m = intersection_dim(c1, c2)
    d = c1.d
    numerator = 1 - (1 - d) ** (m + 1)
    assert numerator % d == 0
    return numerator // d


def intersection_matrix(cycles: Sequence[LinearCycle]) -> List[List[int]]:
    size = len(cycles)
    matrix = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            matrix[i][j] = matrix[j][i] = intersection_number(cycles[i], cycles[j])
    return matrix


class Bicycle(NamedTuple):
    cycle: Tuple[int, ...]
    conductor: int
    is_new: bool


def _partners(cycle: LinearCycle) -> Dict[int, Tuple[int, int]]:
    """vertex -> (partner, signed weight of the step vertex -> partner)"""
    table = {}
    for u, v, a in cycle.pairs():
        table[u] = (v, 1 + 2 * a)
        table[v] = (u, -(1 + 2 * a))
    return table


def _canonical_walk(walk: Tuple[int, ...]) -> Tuple[int, ...]:
    r = len(walk)
    candidates = []
    for seq in (walk, tuple(reversed(walk))):
        for shift in range(0, r, 2):
            candidates.append(seq[shift:] + seq[:shift])
    return min(candidates)


def bicycles(c1: LinearCycle, c2: LinearCycle) -> List[Bicycle]:
    """
    Alternating cycles between the pairings of c1 (odd steps) and c2 (even steps)

    Each walk is reported in its least form under shifts by two and reversal;
    the conductor is the signed sum of 1+2a along that walk.
    """
    _check_same_nd(c1, c2)
    first = _partners(c1)
    second = _partners(c2)
    order = 2 * c1.d
    seen = set()
    result = []
    for start in range(c1.n + 2):
        if start in seen:
            continue
        walk = []
        vertex = start
        while True:
            walk.append(vertex)
            seen.add(vertex)
            middle = first[vertex][0]
            walk.append(middle)
            seen.add(middle)
            vertex = second[middle][0]
            if vertex == start:
                break
        walk = _canonical_walk(tuple(walk))
        conductor = 0
        for k, vertex in enumerate(walk):
            table = first if k % 2 == 0 else second
            partner, weight = table[vertex]
            assert partner == walk[(k + 1) % len(walk)]
            conductor += weight
        result.append(Bicycle(walk, conductor, conductor % order == 0))
    return sorted(result)


def m_count(c1: LinearCycle, c2: LinearCycle) -> int:
    """Number of new bicycles minus one."""
    return sum(1 for bike in bicycles(c1, c2) if bike.is_new) - 1


class CycleCombination:
    """
    Integer combination sum r_k [P_k] + s [Z_inf] of linear cycles

    Terms are merged on canonical forms; zero coefficients are dropped.
    """

    def __init__(self, n: int, d: int, terms: Sequence[Tuple[int, LinearCycle]] = (), zinf: int = 0):
        check_nd(n, d)
        merged: Dict[LinearCycle, int] = {}
        for coeff, cycle in terms:
            if (cycle.n, cycle.d) != (n, d):
                raise ValueError(f"Cycle {cycle} does not live on X^{d}_{n}")
            key = cycle.canonical()
            merged[key] = merged.get(key, 0) + int(coeff)
        self.n = n
        self.d = d
        self.terms: Tuple[Tuple[int, LinearCycle], ...] = tuple(
            (coeff, cycle) for cycle, coeff in sorted(merged.items()) if coeff != 0
        )
        self.zinf = int(zinf)

    @classmethod
    def of(cls, *pairs: Tuple[int, LinearCycle], zinf: int = 0) -> 'CycleCombination':
        if not pairs:
            raise ValueError("Use CycleCombination(n, d) for an empty combination")
        first = pairs[0][1]
        return cls(first.n, first.d, pairs, zinf)

    def _check(self, other: 'CycleCombination'):
        if (self.n, self.d) != (other.n, other.d):
            raise ValueError("Combinations live on different Fermat varieties")

    def __add__(self, other: 'CycleCombination') -> 'CycleCombination':
        self._check(other)
        return CycleCombination(self.n, self.d, self.terms + other.terms, self.zinf + other.zinf)

    def __neg__(self) -> 'CycleCombination':
        return -1 * self

    def __sub__(self, other: 'CycleCombination') -> 'CycleCombination':
        return self + (-other)

    def __mul__(self, k: int) -> 'CycleCombination':
        return CycleCombination(self.n, self.d, [(k * c, cyc) for c, cyc in self.terms], k * self.zinf)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CycleCombination)
            and (self.n, self.d, self.terms, self.zinf) == (other.n, other.d, other.terms, other.zinf)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.d, self.terms, self.zinf))

    def is_zero(self) -> bool:
        return not self.terms and self.zinf == 0

    def intersection(self, other: 'CycleCombination') -> int:
        """Bilinear intersection pairing with Z_inf.Z_inf = d and Z_inf.P = 1."""
        self._check(other)
        total = self.zinf * other.zinf * self.d
        total += self.zinf * sum(c for c, _ in other.terms)
        total += other.zinf * sum(c for c, _ in self.terms)
        for r1, p1 in self.terms:
            for r2, p2 in other.terms:
                total += r1 * r2 * intersection_number(p1, p2)
        return total

    def __repr__(self) -> str:
        body = ' + '.join(f"{c}*{cyc.a}/{cyc.b}" for c, cyc in self.terms) or '0'
        if self.zinf:
            body += f" + {self.zinf}*Zinf"
        return f"CycleCombination(n={self.n}, d={self.d}: {body})"

    def to_record(self) -> Dict:
        return {
            'n': self.n,
            'd': self.d,
            'terms': [{'coeff': str(c), **cyc.to_record()} for c, cyc in self.terms],
            'zinf': str(self.zinf),
        }


def pair_combination(n: int, d: int, m: int, r: int = 1, r_check: int = 1) -> CycleCombination:
    """r [P] + r_check [P_check] for the standard pair meeting in P^m."""
    first, second = standard_pair(n, d, m)
    return CycleCombination(n, d, [(r, first), (r_check, second)])


def random_combination(
    n: int,
    d: int,
    size: int,
    rng: random.Random,
    coeff_range: Tuple[int, int] = (-5, 5),
    cycles: Optional[Sequence[LinearCycle]] = None,
) -> CycleCombination:
    """Seeded sample of `size` distinct linear cycles with nonzero coefficients."""
    pool = cycles if cycles is not None else enumerate_cycles(n, d)
    chosen = rng.sample(list(pool), size)
    low, high = coeff_range
    coefficients = [c for c in range(low, high + 1) if c != 0]
    return CycleCombination(n, d, [(rng.choice(coefficients), cyc) for cyc in chosen])
