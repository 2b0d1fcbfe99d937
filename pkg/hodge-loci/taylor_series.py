"""
Taylor Series - truncated power series over Q(zeta_2d) and periods over deformed Fermat varieties
"""

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from cyclotomic import ContextMismatchError, CycloNum, cyclo_context
from indices import ExpVec, check_nd, frac_decomp, index_set, pochhammer, pole_order
from linear_cycles import CycleCombination, LinearCycle

logger = logging.getLogger(__name__)

MultiIndex = Tuple[int, ...]  # sorted parameter positions, repeated by multiplicity


class DeformFamily:
    """
    f_t = sum x_i^d - sum_{alpha in I} t_alpha x^alpha

    Args:
        n, d: the Fermat variety
        params: exponent vectors alpha of total degree d; stored sorted and duplicate-free
        label: 'full', 'split' or 'custom'
    """

    def __init__(self, n: int, d: int, params: Sequence[ExpVec], label: str = 'custom'):
        check_nd(n, d)
        cleaned = sorted({tuple(int(x) for x in alpha) for alpha in params})
        for alpha in cleaned:
            if len(alpha) != n + 2 or min(alpha) < 0 or sum(alpha) != d:
                raise ValueError(f"Deformation monomial {alpha} is not of degree {d} in {n + 2} variables")
        self.n = n
        self.d = d
        self.params: Tuple[ExpVec, ...] = tuple(cleaned)
        self.label = label

    @classmethod
    def full(cls, n: int, d: int) -> 'DeformFamily':
        """Every alpha in I_d."""
        return cls(n, d, list(index_set(n, d, d)), 'full')

    @classmethod
    def split(cls, n: int, d: int) -> 'DeformFamily':
        """Deformations A(x_0, x_2, ...) + B(x_1, x_3, ...) within I_d."""
        params = [
            alpha for alpha in index_set(n, d, d)
            if not any(alpha[1::2]) or not any(alpha[0::2])
        ]
        return cls(n, d, params, 'split')

    @classmethod
    def empty(cls, n: int, d: int) -> 'DeformFamily':
        return cls(n, d, [], 'empty')

    def __len__(self) -> int:
        return len(self.params)

    def monomial_count(self, order: int) -> int:
        """Nonconstant monomials of degree <= order in the parameters."""
        return comb(len(self.params) + order, order) - 1

    def __eq__(self, other) -> bool:
        return isinstance(other, DeformFamily) and (self.n, self.d, self.params) == (other.n, other.d, other.params)

    def __hash__(self) -> int:
        return hash((self.n, self.d, self.params))

    def __repr__(self) -> str:
        return f"DeformFamily(n={self.n}, d={self.d}, {self.label}, {len(self.params)} params)"

    def to_record(self) -> Dict:
        return {'n': self.n, 'd': self.d, 'label': self.label, 'params': [list(a) for a in self.params]}


def _merge(k1: MultiIndex, k2: MultiIndex) -> MultiIndex:
    return tuple(sorted(k1 + k2))


def multi_factorial(key: MultiIndex) -> int:
    """a! = prod over parameters of a_alpha!"""
    return prod(factorial(k) for k in Counter(key).values())


Scalar = Union[int, Fraction, CycloNum]


class TruncSeries:
    """
    Polynomial in the family parameters, truncated above total degree `order`

    Monomials are keyed by sorted tuples of parameter positions, so
    t_0^2 t_3 is (0, 0, 3). Zero coefficients are never stored.
    """

    def __init__(self, family: DeformFamily, order: int, terms: Optional[Mapping[MultiIndex, CycloNum]] = None):
        if order < 0:
            raise ValueError(f"Truncation order must be non-negative, got {order}")
        self.family = family
        self.order = order
        self.terms: Dict[MultiIndex, CycloNum] = {}
        for key, value in (terms or {}).items():
            if len(key) <= order and not value.is_zero():
                self.terms[tuple(sorted(key))] = value

    @property
    def ctx(self):
        return cyclo_context(self.family.d)

    @classmethod
    def zero(cls, family: DeformFamily, order: int) -> 'TruncSeries':
        return cls(family, order)

    @classmethod
    def constant(cls, family: DeformFamily, order: int, value: Scalar) -> 'TruncSeries':
        ctx = cyclo_context(family.d)
        value = value if isinstance(value, CycloNum) else ctx.rational(value)
        return cls(family, order, {(): value})

    @classmethod
    def variable(cls, family: DeformFamily, order: int, index: int) -> 'TruncSeries':
        if not 0 <= index < len(family):
            raise IndexError(f"No parameter {index} in {family}")
        return cls(family, order, {(index,): cyclo_context(family.d).one()})

    def _check(self, other: 'TruncSeries'):
        if self.family != other.family or self.order != other.order:
            raise ContextMismatchError(
                f"Series over {self.family} at order {self.order} and {other.family} at order {other.order}"
            )

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, key: Sequence[int]) -> CycloNum:
        return self.terms.get(tuple(sorted(key)), self.ctx.zero())

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: 'TruncSeries') -> 'TruncSeries':
        self._check(other)
        terms = dict(self.terms)
        for key, value in other.terms.items():
            terms[key] = terms[key] + value if key in terms else value
        return TruncSeries(self.family, self.order, terms)

    def __neg__(self) -> 'TruncSeries':
        return TruncSeries(self.family, self.order, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: 'TruncSeries') -> 'TruncSeries':
        return self + (-other)

    def scale(self, c: Scalar) -> 'TruncSeries':
        return TruncSeries(self.family, self.order, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other) -> 'TruncSeries':
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        self._check(other)
        order = self.order
        right = other.by_degree()
        terms: Dict[MultiIndex, CycloNum] = {}
        for k1, v1 in self.terms.items():
            room = order - len(k1)
            for degree in range(room + 1):
                for k2, v2 in right.get(degree, ()):
                    key = _merge(k1, k2)
                    value = v1 * v2
                    terms[key] = terms[key] + value if key in terms else value
        return TruncSeries(self.family, order, terms)

    def __rmul__(self, other) -> 'TruncSeries':
        return self.scale(other)

    def by_degree(self) -> Dict[int, List[Tuple[MultiIndex, CycloNum]]]:
        grouped: Dict[int, List[Tuple[MultiIndex, CycloNum]]] = {}
        for key, value in self.terms.items():
            grouped.setdefault(len(key), []).append((key, value))
        return grouped

    def homogeneous(self, degree: int) -> 'TruncSeries':
        return TruncSeries(self.family, self.order, {k: v for k, v in self.terms.items() if len(k) == degree})

    def linear_part(self) -> Dict[int, CycloNum]:
        """Parameter position -> coefficient of t_alpha."""
        return {k[0]: v for k, v in self.terms.items() if len(k) == 1}

    def lowest_degree(self) -> Optional[int]:
        """Least degree with a nonzero term, None for the zero series."""
        return min((len(k) for k in self.terms), default=None)

    def substitute(self, mapping: Mapping[int, 'TruncSeries']) -> 'TruncSeries':
        """
        Replace parameters by series without constant term

        Products of the replaced parameters are computed once per multiset
        and reused across every monomial that contains them.
        """
        for series in mapping.values():
            self._check(series)
            if () in series.terms:
                raise ValueError("Substituted series must vanish at the origin")
        one = TruncSeries.constant(self.family, self.order, 1)
        products: Dict[MultiIndex, TruncSeries] = {(): one}

        def power(key: MultiIndex) -> TruncSeries:
            if key not in products:
                products[key] = power(key[:-1]) * mapping[key[-1]]
            return products[key]

        terms: Dict[MultiIndex, CycloNum] = {}
        for key, value in self.terms.items():
            kept = tuple(x for x in key if x not in mapping)
            replaced = tuple(x for x in key if x in mapping)
            if not replaced:
                terms[key] = terms[key] + value if key in terms else value
                continue
            room = self.order - len(kept)
            # every substituted factor raises the degree by at least one
            if len(replaced) > room:
                continue
            for sub_key, sub_value in power(replaced).terms.items():
                if len(sub_key) > room:
                    continue
                merged = _merge(kept, sub_key)
                product = value * sub_value
                terms[merged] = terms[merged] + product if merged in terms else product
        return TruncSeries(self.family, self.order, terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncSeries)
            and self.family == other.family
            and self.order == other.order
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        return f"TruncSeries({self.family!r}, order={self.order}, terms={len(self.terms)})"

    def to_records(self) -> List[Dict]:
        """Terms sorted by (degree, multi-index) with power-basis coefficients as strings."""
        return [
            {'a': list(key), 'coeff': self.terms[key].to_record()}
            for key in sorted(self.terms, key=lambda k: (len(k), k))
        ]


def series_arith(s1: TruncSeries, s2, op: str) -> TruncSeries:
    """
    Truncated ring operation

    Args:
        op: 'add', 'sub', 'mul', or 'scalar' (s2 is then an int, Fraction or CycloNum)

    Raises:
        ContextMismatchError: different families or orders
    """
    if op == 'add':
        return s1 + s2
    if op == 'sub':
        return s1 - s2
    if op == 'mul':
        if not isinstance(s2, TruncSeries):
            raise TypeError("Use op='scalar' to multiply by a number")
        return s1 * s2
    if op == 'scalar':
        return s1.scale(s2)
    raise ValueError(f"Unknown series operation: {op}")


@dataclass(frozen=True)
class FormIndex:
    """A monomial x^beta with integral pole order k = sum (beta_i+1)/d."""

    beta: ExpVec
    d: int

    def __post_init__(self):
        object.__setattr__(self, 'beta', tuple(int(b) for b in self.beta))
        if min(self.beta, default=0) < 0:
            raise ValueError(f"Exponents must be non-negative, got {self.beta}")
        k = pole_order(self.beta, self.d)
        if k.denominator != 1 or k < 1:
            raise ValueError(f"x^{self.beta} has pole order {k}, expected a positive integer")

    @property
    def k(self) -> int:
        return int(pole_order(self.beta, self.d))


@lru_cache(maxsize=200_000)
def _term_weight(d: int, pairs: Tuple[Tuple[int, int, int], ...], beta_check: ExpVec) -> Optional[Tuple[Fraction, int]]:
    """
    (D, d*E) for an admissible beta_check, None otherwise

    Admissible means the fractional parts of (beta_u+1)/d and (beta_v+1)/d
    add up to one on every pair (u, v) of the cycle.
    """
    ints, fracs = frac_decomp(beta_check, d)
    if any(fracs[u] + fracs[v] != 1 for u, v, _ in pairs):
        return None
    weight = Fraction(1)
    for q, r in zip(fracs, ints):
        weight *= pochhammer(q, r)
    phase = sum(fracs[u] * (1 + 2 * a) for u, _, a in pairs) * d
    if phase.denominator != 1:
        raise ArithmeticError(f"Non-integral phase {phase} at {beta_check}")
    return weight, int(phase)


def _admissible_multisets(residues: Sequence[Tuple[int, ...]], need: Tuple[int, ...], order: int,
                          d: int) -> Iterator[MultiIndex]:
    """
    Nondecreasing tuples of length <= order whose pair residues add up to `need` mod d

    reach[t][p] holds the residue sums of at most t parameters drawn from
    positions p onwards; a branch is dropped once `need` is out of reach.
    """
    size = len(residues)
    zero = tuple(0 for _ in need)

    def shift(v, w, sign=1):
        return tuple((a + sign * b) % d for a, b in zip(v, w))

    reach = [[{zero} for _ in range(size + 1)] for _ in range(order + 1)]
    for t in range(1, order + 1):
        for p in range(size - 1, -1, -1):
            reach[t][p] = reach[t][p + 1] | {shift(v, residues[p]) for v in reach[t - 1][p]}
    stack: List[Tuple[MultiIndex, Tuple[int, ...]]] = [((), zero)]
    while stack:
        key, have = stack.pop()
        if have == need:
            yield key
        left = order - len(key)
        if not left:
            continue
        for p in range(size - 1, (key[-1] if key else 0) - 1, -1):
            total = shift(have, residues[p])
            if shift(need, total, -1) in reach[left - 1][p]:
                stack.append((key + (p,), total))


def taylor_period(cycle: LinearCycle, beta: FormIndex, fam: DeformFamily, order: int) -> TruncSeries:
    """
    Truncated expansion of the period of x^beta Omega / f_t^k over the transported cycle

    The coefficient of t^a is D zeta^{dE} / (a! C) with
    C = sign(b) (-1)^{n/2} d^{n/2+1} (k-1)!, summed over the a whose
    beta + sum a_alpha alpha is admissible.

    Raises:
        ValueError: cycle and family live on different varieties
    """
    n, d = fam.n, fam.d
    if (cycle.n, cycle.d) != (n, d) or beta.d != d:
        raise ValueError(f"{cycle} and {fam} are not on the same Fermat variety")
    if len(beta.beta) != n + 2:
        raise ValueError(f"Form exponent {beta.beta} must have {n + 2} entries")
    ctx = cyclo_context(d)
    k = beta.k
    pairs = tuple(cycle.pairs())
    normalizer = Fraction(cycle.sign * (-1) ** (n // 2), d ** (n // 2 + 1) * factorial(k - 1))
    base = beta.beta
    terms: Dict[MultiIndex, CycloNum] = {}
    # beta_check_u + beta_check_v = -2 mod d on every pair is necessary for admissibility
    residues = [tuple((alpha[u] + alpha[v]) % d for u, v, _ in pairs) for alpha in fam.params]
    need = tuple((-2 - base[u] - base[v]) % d for u, v, _ in pairs)
    for key in _admissible_multisets(residues, need, order, d):
        beta_check = list(base)
        for p in key:
            for i, x in enumerate(fam.params[p]):
                beta_check[i] += x
        beta_check = tuple(beta_check)
        found = _term_weight(d, pairs, beta_check)
        if found is None:
            continue
        weight, phase = found
        assert pole_order(beta_check, d) == k + len(key)
        terms[key] = ctx.root(phase) * (weight * normalizer / multi_factorial(key))
    series = TruncSeries(fam, order, terms)
    logger.debug(f"Taylor series of x^{base} over {cycle}: {len(series)} terms up to order {order}")
    return series


def taylor_combination(z: CycleCombination, beta: FormIndex, fam: DeformFamily, order: int) -> TruncSeries:
    """Integer-weighted sum of taylor_period; Z_inf integrates every primitive form to zero."""
    total = TruncSeries.zero(fam, order)
    for coeff, cycle in z.terms:
        total = total + taylor_period(cycle, beta, fam, order).scale(coeff)
    return total
