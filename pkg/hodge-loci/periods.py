"""
Periods - the period formula for linear cycles and period vectors of combinations
"""

import itertools
import logging
from fractions import Fraction
from math import factorial
from typing import Dict, Iterator, List, Sequence, Tuple

from cyclotomic import CycloNum, cyclo_context
from indices import ExpVec, IndexSet, index_set
from linear_cycles import CycleCombination, LinearCycle

logger = logging.getLogger(__name__)


def period_degree(n: int, d: int) -> int:
    """Total degree (n/2+1)d - n - 2 of the forms paired with middle cohomology."""
    return (n // 2 + 1) * d - n - 2


def period_prefactor(n: int, d: int) -> Fraction:
    """The common positive factor 1 / (d^{n/2+1} (n/2)!)."""
    return Fraction(1, d ** (n // 2 + 1) * factorial(n // 2))


def _phase_exponent(cycle: LinearCycle, i: Sequence[int]) -> int:
    return sum((i[u] + 1) * (1 + 2 * a) for u, _, a in cycle.pairs())


def period_linear(cycle: LinearCycle, i: Sequence[int], exact: bool = True) -> CycloNum:
    """
    Period of x^i against the linear cycle

    Args:
        cycle: the linear cycle
        i: exponent vector of total degree (n/2+1)d - n - 2
        exact: keep the rational prefactor 1/(d^{n/2+1}(n/2)!); when False
            only sign(b)(-1)^{n/2} zeta^eps is returned

    Returns:
        sign(b)(-1)^{n/2} zeta^eps / (d^{n/2+1}(n/2)!) when every b-pair of i
        sums to d-2, zero otherwise

    Raises:
        ValueError: wrong length or total degree
    """
    n, d = cycle.n, cycle.d
    ctx = cyclo_context(d)
    if len(i) != n + 2 or min(i) < 0:
        raise ValueError(f"Exponent vector {tuple(i)} is not in N^{n + 2}")
    if sum(i) != period_degree(n, d):
        raise ValueError(f"Exponent vector {tuple(i)} has degree {sum(i)}, expected {period_degree(n, d)}")
    if any(i[u] + i[v] != d - 2 for u, v, _ in cycle.pairs()):
        return ctx.zero()
    value = ctx.root(_phase_exponent(cycle, i)) * (cycle.sign * (-1) ** (n // 2))
    if exact:
        value = value * period_prefactor(n, d)
    return value


def period_support(cycle: LinearCycle) -> Iterator[Tuple[ExpVec, int]]:
    """Exponent vectors with nonzero period and their phase exponents eps."""
    n, d = cycle.n, cycle.d
    pairs = cycle.pairs()
    for choice in itertools.product(range(d - 1), repeat=len(pairs)):
        i = [0] * (n + 2)
        for (u, v, _), left in zip(pairs, choice):
            i[u] = left
            i[v] = d - 2 - left
        yield tuple(i), _phase_exponent(cycle, i)


class PeriodVector:
    """
    Periods p_i of a cycle for i in I_{(n/2+1)d-n-2}

    Only nonzero values are stored; every member of the index set reads
    back, zero where no value is stored.
    """

    def __init__(self, n: int, d: int, values: Dict[ExpVec, CycloNum], exact: bool = True):
        self.n = n
        self.d = d
        self.exact = exact
        self.index: IndexSet = index_set(n, d, period_degree(n, d))
        self._values: Dict[ExpVec, CycloNum] = {}
        for key, value in values.items():
            if key not in self.index:
                raise ValueError(f"{key} is not in I_{self.index.N}")
            if not value.is_zero():
                self._values[tuple(key)] = value

    @property
    def ctx(self):
        return cyclo_context(self.d)

    def get(self, i: Sequence[int]) -> CycloNum:
        """p_i, zero for any vector outside the index set."""
        return self._values.get(tuple(i), self.ctx.zero())

    def __getitem__(self, i: Sequence[int]) -> CycloNum:
        if tuple(i) not in self.index:
            raise KeyError(f"{tuple(i)} is not in I_{self.index.N}")
        return self.get(i)

    @property
    def values(self) -> Dict[ExpVec, CycloNum]:
        return {i: self.get(i) for i in self.index}

    def support(self) -> List[ExpVec]:
        return sorted(self._values)

    def is_zero(self) -> bool:
        return not self._values

    def _check(self, other: 'PeriodVector'):
        if (self.n, self.d, self.exact) != (other.n, other.d, other.exact):
            raise ValueError("Period vectors of different varieties or normalizations")

    def __add__(self, other: 'PeriodVector') -> 'PeriodVector':
        self._check(other)
        values = dict(self._values)
        for key, value in other._values.items():
            values[key] = values[key] + value if key in values else value
        return PeriodVector(self.n, self.d, values, self.exact)

    def __mul__(self, k: int) -> 'PeriodVector':
        return PeriodVector(self.n, self.d, {key: v * k for key, v in self._values.items()}, self.exact)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PeriodVector)
            and (self.n, self.d, self.exact) == (other.n, other.d, other.exact)
            and self._values == other._values
        )

    def __repr__(self) -> str:
        return f"PeriodVector(n={self.n}, d={self.d}, support={len(self._values)})"

    def to_records(self) -> List[Dict]:
        return [{'i': list(i), 'value': self._values[i].to_record()} for i in self.support()]


def period_vector(z: CycleCombination, exact: bool = False) -> PeriodVector:
    """
    Integer combination of linear-cycle periods; Z_inf contributes nothing

    With exact=False the common positive prefactor is dropped, which
    leaves ranks and kernels unchanged.
    """
    n, d = z.n, z.d
    ctx = cyclo_context(d)
    sign_n = (-1) ** (n // 2)
    accum: Dict[ExpVec, List[int]] = {}
    for coeff, cycle in z.terms:
        weight = coeff * cycle.sign * sign_n
        for i, eps in period_support(cycle):
            vec = accum.setdefault(i, [0] * ctx.deg)
            for t, c in enumerate(ctx.powers[eps % ctx.order]):
                if c:
                    vec[t] += weight * c
    prefactor = period_prefactor(n, d) if exact else Fraction(1)
    values = {i: ctx.from_coeffs([Fraction(c) * prefactor for c in vec]) for i, vec in accum.items()}
    logger.debug(f"Period vector of {z} has {sum(1 for v in values.values() if v)} nonzero entries")
    return PeriodVector(n, d, values, exact)
