"""
Exact and modular Gaussian elimination over Q(zeta_2d)
"""

import logging
import math
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from cyclotomic import CycloCtx, CycloNum

logger = logging.getLogger(__name__)

IntVec = Tuple[int, ...]
IntRow = Dict[int, IntVec]


def _strip_content(row: IntRow) -> IntRow:
    g = 0
    for vec in row.values():
        g = math.gcd(g, *vec)
        if g == 1:
            return row
    if g > 1:
        return {k: tuple(c // g for c in vec) for k, vec in row.items()}
    return row


def to_int_row(row: Mapping[int, CycloNum]) -> IntRow:
    """Clear denominators of a row keyed by column; zero entries are dropped."""
    den = 1
    for x in row.values():
        den = den * x.den // math.gcd(den, x.den)
    out = {}
    for k, x in row.items():
        if x.is_zero():
            continue
        scale = den // x.den
        out[k] = tuple(c * scale for c in x.nums)
    return _strip_content(out)


def dense_to_row(values: Sequence[CycloNum]) -> Dict[int, CycloNum]:
    return {k: x for k, x in enumerate(values) if not x.is_zero()}


class ExactEchelon:
    """
    Incremental fraction-free row echelon form over Z[zeta]

    Rows are combined as r <- piv*r - r[c]*s with content stripping, so no
    rational normalization happens during elimination. Pivots are the first
    nonzero column of each reduced row, in insertion order.
    """

    def __init__(self, ctx: CycloCtx):
        self.ctx = ctx
        self.rows: List[IntRow] = []
        self.pivots: List[int] = []
        self.sources: List[Optional[int]] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row: IntRow) -> IntRow:
        mul = self.ctx.mul_vec
        for stored, col in zip(self.rows, self.pivots):
            factor = row.get(col)
            if factor is None:
                continue
            pivot = stored[col]
            new: IntRow = {k: mul(pivot, v) for k, v in row.items()}
            for k, v in stored.items():
                t = mul(factor, v)
                old = new.get(k)
                val = tuple(-c for c in t) if old is None else tuple(a - b for a, b in zip(old, t))
                if any(val):
                    new[k] = val
                else:
                    new.pop(k, None)
            row = _strip_content(new)
            if not row:
                break
        return row

    def add(self, row: IntRow, source: Optional[int] = None) -> bool:
        """Insert a row; returns True when it raised the rank."""
        reduced = self.reduce(row)
        if not reduced:
            return False
        self.rows.append(reduced)
        self.pivots.append(min(reduced))
        self.sources.append(source)
        return True

    def contains(self, row: IntRow) -> bool:
        """True when the row lies in the span of the inserted rows."""
        return not self.reduce(row)


def exact_rank(rows: Iterable[Mapping[int, CycloNum]], ctx: CycloCtx) -> int:
    echelon = ExactEchelon(ctx)
    for k, row in enumerate(rows):
        echelon.add(to_int_row(row), source=k)
    return echelon.rank


def pivot_structure(rows: Iterable[Mapping[int, CycloNum]], ctx: CycloCtx) -> Tuple[List[int], List[int]]:
    """
    Pivot rows and pivot columns in insertion order

    For every t, the first t pivot rows and first t pivot columns span a
    nonsingular t x t minor.
    """
    echelon = ExactEchelon(ctx)
    for k, row in enumerate(rows):
        echelon.add(to_int_row(row), source=k)
    return list(echelon.sources), list(echelon.pivots)


def determinant(matrix: Sequence[Sequence[CycloNum]], ctx: CycloCtx) -> CycloNum:
    """Determinant of a square matrix by Gaussian elimination over the field."""
    size = len(matrix)
    rows = [list(r) for r in matrix]
    det = ctx.one()
    for c in range(size):
        piv = next((r for r in range(c, size) if not rows[r][c].is_zero()), None)
        if piv is None:
            return ctx.zero()
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        pivot = rows[c][c]
        det = det * pivot
        inv = pivot.inverse()
        for r in range(c + 1, size):
            entry = rows[r][c]
            if entry.is_zero():
                continue
            factor = entry * inv
            rows[r] = [a - factor * b if k >= c else a for k, (a, b) in enumerate(zip(rows[r], rows[c]))]
    return det


def rref(rows: Iterable[Mapping[int, CycloNum]], ctx: CycloCtx) -> Tuple[List[Dict[int, CycloNum]], List[int]]:
    """
    Reduced row echelon form over the field

    Returns:
        (rows with pivot entry 1 and zeros above/below every pivot, pivot columns)
    """
    reduced: List[Dict[int, CycloNum]] = []
    pivots: List[int] = []
    for row in rows:
        row = {k: v for k, v in row.items() if not v.is_zero()}
        for stored, col in zip(reduced, pivots):
            factor = row.get(col)
            if factor is None:
                continue
            for k, v in stored.items():
                val = row.get(k, ctx.zero()) - factor * v
                if val.is_zero():
                    row.pop(k, None)
                else:
                    row[k] = val
        if not row:
            continue
        col = min(row)
        inv = row[col].inverse()
        row = {k: v * inv for k, v in row.items()}
        for stored in reduced:
            factor = stored.get(col)
            if factor is None:
                continue
            for k, v in row.items():
                val = stored.get(k, ctx.zero()) - factor * v
                if val.is_zero():
                    stored.pop(k, None)
                else:
                    stored[k] = val
        reduced.append(row)
        pivots.append(col)
    return reduced, pivots


def kernel_basis(rows: Iterable[Mapping[int, CycloNum]], ncols: int, ctx: CycloCtx) -> List[List[CycloNum]]:
    """Basis of {v : M v = 0}, one vector per free column."""
    reduced, pivots = rref(rows, ctx)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [ctx.zero() for _ in range(ncols)]
        vec[free] = ctx.one()
        for row, col in zip(reduced, pivots):
            entry = row.get(free)
            if entry is not None:
                vec[col] = -entry
        basis.append(vec)
    return basis


def modp_rank(matrix: np.ndarray, p: int) -> int:
    """
    Rank of an integer matrix over Z/p

    Args:
        matrix: int64 array with entries in [0, p); p < 2^31
        p: prime modulus
    """
    M = np.array(matrix, dtype=np.int64) % p
    if M.size == 0:
        return 0
    nrows, ncols = M.shape
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        nonzero = np.nonzero(M[rank:, c])[0]
        if nonzero.size == 0:
            continue
        piv = rank + int(nonzero[0])
        if piv != rank:
            M[[rank, piv]] = M[[piv, rank]]
        inv = pow(int(M[rank, c]), -1, p)
        M[rank] = (M[rank] * inv) % p
        below = np.nonzero(M[rank + 1:, c])[0] + rank + 1
        if below.size:
            factors = M[below, c].reshape(-1, 1)
            M[below] = (M[below] - factors * M[rank]) % p
        rank += 1
    return rank
