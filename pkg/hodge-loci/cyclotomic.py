"""
Cyclotomic arithmetic - exact elements of Q(zeta_2d) in the power basis
"""

import cmath
import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple, Union

import sympy as sp

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]


class ContextMismatchError(ValueError):
    """Raised when values from different fields or families are combined"""


class BadPrimeError(ArithmeticError):
    """Raised when a prime cannot carry the modular image of a value"""


class CycloCtx:
    """
    The field Q(zeta) with zeta a primitive 2d-th root of unity

    Args:
        d: Fermat degree, at least 2
    """

    def __init__(self, d: int):
        if d < 2:
            raise ValueError(f"Fermat degree must be at least 2, got {d}")
        self.d = d
        self.order = 2 * d
        x = sp.Symbol('x')
        poly = sp.Poly(sp.cyclotomic_poly(self.order, x), x)
        # low degree first
        self.phi: Tuple[int, ...] = tuple(int(c) for c in reversed(poly.all_coeffs()))
        self.deg = len(self.phi) - 1
        assert self.deg == int(sp.totient(self.order))
        self.powers: Tuple[Tuple[int, ...], ...] = tuple(
            self._reduce(self._monomial(k)) for k in range(self.order)
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, CycloCtx) and other.d == self.d

    def __hash__(self) -> int:
        return hash(('CycloCtx', self.d))

    def __repr__(self) -> str:
        return f"CycloCtx(d={self.d}, order={self.order}, deg={self.deg})"

    def __reduce__(self):
        return (cyclo_context, (self.d,))

    def _monomial(self, k: int) -> List[int]:
        vec = [0] * max(k + 1, self.deg)
        vec[k] = 1
        return vec

    def _reduce(self, vec: List[int]) -> Tuple[int, ...]:
        """Reduce an integer polynomial in zeta modulo phi (phi is monic)."""
        vec = list(vec)
        deg = self.deg
        phi = self.phi
        for top in range(len(vec) - 1, deg - 1, -1):
            c = vec[top]
            if c:
                base = top - deg
                for j in range(deg):
                    if phi[j]:
                        vec[base + j] -= c * phi[j]
                vec[top] = 0
        if len(vec) < deg:
            vec.extend([0] * (deg - len(vec)))
        return tuple(vec[:deg])

    def mul_vec(self, u: Sequence[int], v: Sequence[int]) -> Tuple[int, ...]:
        """Product of two integer coordinate vectors, reduced modulo phi."""
        deg = self.deg
        prod = [0] * (2 * deg - 1)
        for i, ui in enumerate(u):
            if ui:
                for j, vj in enumerate(v):
                    if vj:
                        prod[i + j] += ui * vj
        return self._reduce(prod)

    def zero(self) -> 'CycloNum':
        return CycloNum._make(self, (0,) * self.deg, 1)

    def one(self) -> 'CycloNum':
        return self.root(0)

    def root(self, k: int) -> 'CycloNum':
        return CycloNum._make(self, self.powers[k % self.order], 1)

    def rational(self, q: Rational) -> 'CycloNum':
        q = Fraction(q)
        nums = [0] * self.deg
        nums[0] = q.numerator
        return CycloNum._make(self, tuple(nums), q.denominator)

    def from_coeffs(self, coeffs: Sequence[Rational]) -> 'CycloNum':
        """Build an element from power-basis coordinates (any length, reduced mod phi)."""
        fracs = [Fraction(c) for c in coeffs]
        den = 1
        for f in fracs:
            den = den * f.denominator // math.gcd(den, f.denominator)
        nums = [f.numerator * (den // f.denominator) for f in fracs]
        return CycloNum._make(self, self._reduce(nums), den)


@lru_cache(maxsize=None)
def cyclo_context(d: int) -> CycloCtx:
    """Shared context for Q(zeta_2d)"""
    return CycloCtx(d)


class CycloNum:
    """
    Immutable element of Q(zeta_2d)

    Stored as integer numerators over one positive common denominator,
    normalized so the gcd of all of them is 1.
    """

    __slots__ = ('ctx', 'nums', 'den')

    def __init__(self, ctx: CycloCtx, coeffs: Sequence[Rational]):
        other = ctx.from_coeffs(coeffs)
        self.ctx = ctx
        self.nums = other.nums
        self.den = other.den

    @classmethod
    def _make(cls, ctx: CycloCtx, nums: Tuple[int, ...], den: int) -> 'CycloNum':
        if den < 0:
            nums = tuple(-c for c in nums)
            den = -den
        g = math.gcd(den, *nums)
        if g == 0 or not any(nums):
            nums, den = (0,) * ctx.deg, 1
        elif g != 1:
            nums = tuple(c // g for c in nums)
            den //= g
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.nums = nums
        obj.den = den
        return obj

    def __reduce__(self):
        return (_rebuild, (self.ctx.d, self.nums, self.den))

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.nums)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def _coerce(self, other) -> 'CycloNum':
        if isinstance(other, CycloNum):
            if other.ctx != self.ctx:
                raise ContextMismatchError(
                    f"Cannot combine elements of Q(zeta_{self.ctx.order}) and Q(zeta_{other.ctx.order})"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return CycloNum._make(self.ctx, tuple(a + b for a, b in zip(self.nums, other.nums)), self.den)
        return CycloNum._make(
            self.ctx,
            tuple(a * other.den + b * self.den for a, b in zip(self.nums, other.nums)),
            self.den * other.den,
        )

    __radd__ = __add__

    def __neg__(self) -> 'CycloNum':
        return CycloNum._make(self.ctx, tuple(-a for a in self.nums), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloNum._make(self.ctx, tuple(a * other for a in self.nums), self.den)
        if isinstance(other, Fraction):
            return CycloNum._make(
                self.ctx, tuple(a * other.numerator for a in self.nums), self.den * other.denominator
            )
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNum._make(self.ctx, self.ctx.mul_vec(self.nums, other.nums), self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> 'CycloNum':
        """Multiplicative inverse via the extended Euclidean algorithm over Q."""
        if self.is_zero():
            raise ZeroDivisionError(f"division by zero in Q(zeta_{self.ctx.order})")
        x = sp.Symbol('x')
        f = sp.Poly(list(reversed(self.nums)), x, domain=sp.QQ)
        g = sp.Poly(list(reversed(self.ctx.phi)), x, domain=sp.QQ)
        inv = f.invert(g)
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(inv.all_coeffs())]
        return self.ctx.from_coeffs(coeffs) * self.den

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError(f"division by zero in Q(zeta_{self.ctx.order})")
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int) -> 'CycloNum':
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ctx.rational(other)
        if not isinstance(other, CycloNum):
            return NotImplemented
        return self.ctx == other.ctx and self.den == other.den and self.nums == other.nums

    def __hash__(self) -> int:
        return hash((self.ctx.d, self.nums, self.den))

    def __repr__(self) -> str:
        return f"CycloNum({self})"

    def __str__(self) -> str:
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = '' if j == 0 else ('z' if j == 1 else f'z^{j}')
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f'-{mono}')
            else:
                parts.append(f'{c}*{mono}')
        return ' + '.join(parts).replace('+ -', '- ') if parts else '0'

    def to_record(self) -> List[str]:
        """Power-basis coordinates as exact decimal strings."""
        return [str(c) for c in self.coeffs]


def _rebuild(d: int, nums: Tuple[int, ...], den: int) -> CycloNum:
    return CycloNum._make(cyclo_context(d), nums, den)


def cyclo_root(ctx: CycloCtx, k: int) -> CycloNum:
    """zeta_2d^k with the exponent taken modulo 2d"""
    return ctx.root(k)


def cyclo_arith(x: CycloNum, y: CycloNum, op: str) -> CycloNum:
    """
    Exact field operation

    Args:
        x, y: operands from the same context
        op: one of 'add', 'sub', 'mul', 'div'

    Raises:
        ContextMismatchError: operands from different fields
        ZeroDivisionError: division by zero
    """
    if x.ctx != y.ctx:
        raise ContextMismatchError(f"Cannot combine elements of Q(zeta_{x.ctx.order}) and Q(zeta_{y.ctx.order})")
    if op == 'add':
        return x + y
    if op == 'sub':
        return x - y
    if op == 'mul':
        return x * y
    if op == 'div':
        return x / y
    raise ValueError(f"Unknown operation: {op}")


def cyclo_pow(x: CycloNum, k: int) -> CycloNum:
    """x^k; negative k needs x != 0"""
    return x ** k


def cyclo_conj(x: CycloNum) -> CycloNum:
    """Complex conjugate, zeta -> zeta^-1"""
    ctx = x.ctx
    acc = [0] * ctx.deg
    for j, c in enumerate(x.nums):
        if c:
            for t, v in enumerate(ctx.powers[(-j) % ctx.order]):
                acc[t] += c * v
    return CycloNum._make(ctx, tuple(acc), x.den)


def cyclo_eval(x: CycloNum) -> complex:
    """Numeric value at zeta = exp(pi i / d); a sanity oracle only."""
    z = cmath.exp(1j * math.pi / x.ctx.d)
    return sum(float(c) * z ** j for j, c in enumerate(x.coeffs))


def ring_membership(x: CycloNum) -> bool:
    """True when every coordinate lies in Z[1/d]."""
    den = x.den
    g = math.gcd(den, x.ctx.d)
    while g > 1:
        den //= g
        g = math.gcd(den, x.ctx.d)
    return den == 1


def admissible_primes(d: int, count: int, below: int = 2 ** 31) -> List[int]:
    """
    Largest primes p < below with p = 1 mod 2d, in descending order
    """
    order = 2 * d
    primes = []
    q = ((below - 2) // order) * order + 1
    while len(primes) < count and q > order:
        if sp.isprime(q):
            primes.append(q)
        q -= order
    if len(primes) < count:
        raise BadPrimeError(f"Only {len(primes)} primes = 1 mod {order} below {below}")
    return primes


def primitive_root_of_unity(d: int, p: int) -> int:
    """Least residue r with Phi_2d(r) = 0 mod p"""
    ctx = cyclo_context(d)
    if (p - 1) % ctx.order != 0:
        raise BadPrimeError(f"Prime {p} is not 1 mod {ctx.order}")
    for h in range(2, p):
        r = pow(h, (p - 1) // ctx.order, p)
        if _eval_mod(ctx.phi, r, p) == 0:
            return min(pow(r, j, p) for j in range(1, ctx.order) if math.gcd(j, ctx.order) == 1)
    raise BadPrimeError(f"No primitive {ctx.order}-th root of unity mod {p}")


def _eval_mod(coeffs: Iterable[int], r: int, p: int) -> int:
    acc = 0
    power = 1
    for c in coeffs:
        acc = (acc + c * power) % p
        power = power * r % p
    return acc


def cyclo_to_modp(x: CycloNum, p: int, r: int) -> int:
    """
    Image of x under zeta -> r in Z/p

    Raises:
        BadPrimeError: p divides the denominator of x, or p != 1 mod 2d
    """
    if (p - 1) % x.ctx.order != 0:
        raise BadPrimeError(f"Prime {p} is not 1 mod {x.ctx.order}")
    if x.den % p == 0:
        raise BadPrimeError(f"Denominator {x.den} is divisible by {p}")
    return _eval_mod(x.nums, r, p) * pow(x.den, -1, p) % p
