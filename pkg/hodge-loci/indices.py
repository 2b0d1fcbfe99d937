"""
Index combinatorics - exponent vectors, the sets I_N and Hodge numbers
"""

import logging
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Iterator, List, Sequence, Tuple

logger = logging.getLogger(__name__)

ExpVec = Tuple[int, ...]


def check_nd(n: int, d: int):
    """Validate the dimension/degree pair of a Fermat variety."""
    if n < 0 or n % 2:
        raise ValueError(f"Dimension n must be a non-negative even integer, got {n}")
    if d < 2:
        raise ValueError(f"Degree d must be at least 2, got {d}")


def _bounded_compositions(length: int, total: int, bound: int) -> Iterator[ExpVec]:
    """Vectors of the given length with entries in [0, bound] summing to total, lexicographic."""
    if length == 0:
        if total == 0:
            yield ()
        return
    rest_capacity = (length - 1) * bound
    low = max(0, total - rest_capacity)
    for first in range(low, min(bound, total) + 1):
        for tail in _bounded_compositions(length - 1, total - first, bound):
            yield (first,) + tail


class IndexSet:
    """
    The set I_N of exponent vectors with 0 <= i_e <= d-2 and total degree N

    Members are sorted lexicographically with i_0 most significant; this
    order fixes every row and column order downstream.
    """

    def __init__(self, n: int, d: int, N: int, members: Sequence[ExpVec]):
        self.n = n
        self.d = d
        self.N = N
        self.members: Tuple[ExpVec, ...] = tuple(members)
        self._position: Dict[ExpVec, int] = {v: k for k, v in enumerate(self.members)}

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[ExpVec]:
        return iter(self.members)

    def __getitem__(self, k: int) -> ExpVec:
        return self.members[k]

    def __contains__(self, v) -> bool:
        return tuple(v) in self._position

    def index(self, v: Sequence[int]) -> int:
        return self._position[tuple(v)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IndexSet)
            and (self.n, self.d, self.N) == (other.n, other.d, other.N)
            and self.members == other.members
        )

    def __repr__(self) -> str:
        return f"IndexSet(n={self.n}, d={self.d}, N={self.N}, size={len(self)})"

    def to_records(self) -> Dict:
        return {'n': self.n, 'd': self.d, 'N': self.N, 'members': [list(v) for v in self.members]}

    @classmethod
    def from_records(cls, record: Dict) -> 'IndexSet':
        return cls(record['n'], record['d'], record['N'], [tuple(v) for v in record['members']])


@lru_cache(maxsize=256)
def index_set(n: int, d: int, N: int) -> IndexSet:
    """
    Build I_N for the Fermat variety of dimension n and degree d

    Returns:
        IndexSet, empty when N < 0 or N > (n+2)(d-2)
    """
    check_nd(n, d)
    if N < 0 or N > (n + 2) * (d - 2):
        return IndexSet(n, d, N, ())
    members = list(_bounded_compositions(n + 2, N, d - 2))
    logger.debug(f"I_{N} for (n,d)=({n},{d}) has {len(members)} members")
    return IndexSet(n, d, N, members)


def moduli_dim(n: int, d: int) -> int:
    """Number of deformation parameters, |I_d|."""
    check_nd(n, d)
    if d >= 3:
        return comb(d + n + 1, n + 1) - (n + 2) ** 2
    return len(index_set(n, d, d))


def hodge_numbers(n: int, d: int) -> List[int]:
    """Primitive Hodge numbers h^{n-q,q}_0 = |I_{(q+1)d-n-2}| for q = 0..n."""
    check_nd(n, d)
    return [len(index_set(n, d, (q + 1) * d - n - 2)) for q in range(n + 1)]


def hodge_table(n: int, d: int) -> List[int]:
    """Full middle-row Hodge numbers (the middle one gains the hyperplane class)."""
    numbers = hodge_numbers(n, d)
    numbers[n // 2] += 1
    return numbers


def betti_middle(n: int, d: int) -> int:
    return sum(hodge_table(n, d))


def frac_decomp(v: Sequence[int], d: int) -> Tuple[Tuple[int, ...], Tuple[Fraction, ...]]:
    """
    Split (v_i + 1)/d into integer and fractional parts

    Returns:
        (integer parts, fractional parts in [0, 1))
    """
    ints = tuple((e + 1) // d for e in v)
    fracs = tuple(Fraction(e + 1, d) - q for e, q in zip(v, ints))
    return ints, fracs


def pochhammer(x: Fraction, y: int) -> Fraction:
    """Rising factorial (x)_y = x (x+1) ... (x+y-1)"""
    if y < 0:
        raise ValueError(f"Pochhammer length must be non-negative, got {y}")
    result = Fraction(1)
    for k in range(y):
        result *= x + k
    return result


def bar_reduce(beta: Sequence[int], d: int) -> ExpVec:
    """Coordinate-wise reduction into [0, d-1]."""
    return tuple(b % d for b in beta)


def pole_order(beta: Sequence[int], d: int) -> Fraction:
    """k = sum (beta_i + 1)/d; integral exactly for residue forms."""
    return Fraction(sum(beta) + len(beta), d)
