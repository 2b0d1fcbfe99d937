"""
Reference values - published tables the reproduction commands diff against
"""

from typing import Dict, List, Tuple

# (H^3_n(m), K^3_n(m)) for cubic Fermat varieties, column c = n/2 - m.
# Published grid, rows n = 4..12.
CUBIC_HK_TABLE: Dict[int, List[Tuple[int, int]]] = {
    4: [(1, 1), (1, 2), (1, 2), (1, 2)],
    6: [(4, 4), (4, 7), (6, 8), (7, 8), (8, 8)],
    8: [(10, 10), (10, 16), (16, 19), (19, 20), (20, 20), (20, 20)],
    10: [(20, 20), (20, 30), (32, 36), (38, 39), (40, 40), (40, 40), (40, 40)],
    12: [(35, 35), (35, 50), (55, 60), (65, 66), (69, 69), (70, 70), (70, 70), (70, 70)],
}

# Rows whose reproduction takes hours rather than minutes
SLOW_CUBIC_ROWS = (12,)

# (n, d, m) -> (H, K), the published five-tuples outside the cubic grid.
FIVE_TUPLES: Dict[Tuple[int, int, int], Tuple[int, int]] = {
    (4, 4, 0): (11, 12),
    (4, 4, -1): (12, 12),
    (4, 5, 0): (24, 24),
    (4, 5, -1): (24, 24),
    (4, 6, 0): (38, 38),
    (4, 6, -1): (38, 38),
    (6, 4, 1): (36, 37),
    (6, 4, 0): (38, 38),
    (6, 4, -1): (38, 38),
}

# Codimension of complete intersection loci on the sextic fourfold, keyed by (d_1, d_2, d_3).
# Published table of complete intersection loci.
SEXTIC_FOURFOLD_CODIM: Dict[Tuple[int, ...], int] = {
    (1, 1, 1): 19,
    (1, 1, 2): 32,
    (1, 1, 3): 37,
    (1, 2, 2): 54,
    (1, 2, 3): 62,
    (1, 3, 3): 71,
    (2, 2, 2): 92,
    (2, 2, 3): 106,
    (2, 3, 3): 122,
    (3, 3, 3): 141,
}

# Linear P^5 in the cubic tenfold: the only complete intersection type there
CUBIC_TENFOLD_CODIM = ((10, 3, (1, 1, 1, 1, 1, 1)), 20)

# Full middle-row Hodge numbers (cubic rows and the sextic fourfold).
HODGE_TABLES: Dict[Tuple[int, int], List[int]] = {
    (4, 3): [0, 1, 21, 1, 0],
    (6, 3): [0, 0, 8, 71, 8, 0, 0],
    (8, 3): [0, 0, 0, 45, 253, 45, 0, 0, 0],
    (10, 3): [0, 0, 0, 1, 220, 925, 220, 1, 0, 0, 0],
    (12, 3): [0, 0, 0, 0, 14, 1001, 3432, 1001, 14, 0, 0, 0, 0],
    (4, 6): [1, 426, 1752, 426, 1],
}

# Remaining columns of the cubic Hodge-number table: |I_d| and the cubic rank range.
# The published n = 12 upper end reads 1001 = binom(14, 4); the range formula with
# min{3, n/2-2} gives binom(14, 3) = 364, which is what is stored.
CUBIC_MODULI: Dict[int, Tuple[int, Tuple[int, int]]] = {
    4: (20, (1, 1)),
    6: (56, (4, 8)),
    8: (120, (10, 45)),
    10: (220, (20, 220)),
    12: (364, (35, 364)),
}

# Triples whose Hodge locus for r P + r' P' is smooth and reduced, so H = K
SMOOTH_REDUCED_TRIPLES: List[Tuple[int, int, int]] = (
    [(2, d, -1) for d in range(5, 15)]
    + [(4, 4, -1), (4, 5, -1), (4, 6, -1), (4, 5, 0), (4, 6, 0)]
    + [(6, 3, -1), (6, 4, -1), (6, 4, 0)]
    + [(8, 3, -1), (8, 3, 0)]
    + [(10, 3, -1), (10, 3, 0), (10, 3, 1)]
)

# Linear-cycle counts (n+1)!! d^{n/2+1}
LINEAR_CYCLE_COUNTS: Dict[Tuple[int, int], int] = {(2, 3): 27, (2, 4): 48, (4, 6): 3240}
