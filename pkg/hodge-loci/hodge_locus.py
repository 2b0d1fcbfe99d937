"""
Hodge Locus - N-reducedness of the Hodge locus of a combination of linear cycles
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from config import MAX_SERIES_MONOMIALS, MAX_STACKED_UNKNOWNS
from cyclotomic import CycloNum, cyclo_context
from elimination import ExactEchelon, rref, to_int_row
from indices import index_set
from linear_cycles import CycleCombination
from period_matrix import matrix_of, rank_exact
from taylor_series import DeformFamily, FormIndex, MultiIndex, TruncSeries, taylor_combination

logger = logging.getLogger(__name__)

SOLVERS = ('graph', 'stacked')
FAMILIES = ('full', 'split', 'auto')


class ResourceBudgetError(RuntimeError):
    """Raised when a problem exceeds the configured series or unknown budget"""


def hodge_forms(n: int, d: int) -> List[FormIndex]:
    """x^beta with beta in I_{kd-n-2} for k = 1..n/2, ordered by (k, beta)."""
    forms = []
    for k in range(1, n // 2 + 1):
        forms.extend(FormIndex(beta, d) for beta in index_set(n, d, k * d - n - 2))
    return forms


def choose_family(n: int, d: int, order: int, family: str = 'auto') -> DeformFamily:
    """
    Deformation family for a problem of the given order

    Raises:
        ResourceBudgetError: the chosen family has too many monomials
        ValueError: unknown family name
    """
    if family not in FAMILIES:
        raise ValueError(f"Family must be one of {FAMILIES}, got {family!r}")
    fam = DeformFamily.split(n, d) if family == 'split' else DeformFamily.full(n, d)
    if family == 'auto' and fam.monomial_count(order) > MAX_SERIES_MONOMIALS:
        logger.warning(
            f"Full family has {fam.monomial_count(order)} monomials up to order {order}; "
            f"switching to the split family"
        )
        fam = DeformFamily.split(n, d)
    if fam.monomial_count(order) > MAX_SERIES_MONOMIALS:
        raise ResourceBudgetError(
            f"{fam} needs {fam.monomial_count(order)} monomials at order {order}, budget is {MAX_SERIES_MONOMIALS}"
        )
    return fam


@dataclass
class LocusProblem:
    z: CycleCombination
    fam: DeformFamily
    order: int
    forms: List[FormIndex] = field(default_factory=list)

    def __post_init__(self):
        if (self.z.n, self.z.d) != (self.fam.n, self.fam.d):
            raise ValueError(f"{self.z} and {self.fam} are not on the same Fermat variety")
        if self.order < 1:
            raise ValueError(f"Truncation order must be at least 1, got {self.order}")
        if not self.forms:
            self.forms = hodge_forms(self.z.n, self.z.d)

    @classmethod
    def build(cls, z: CycleCombination, order: int, family: str = 'auto', reverse_forms: bool = False) -> 'LocusProblem':
        fam = choose_family(z.n, z.d, order, family)
        forms = hodge_forms(z.n, z.d)
        if reverse_forms:
            forms.reverse()
        return cls(z, fam, order, forms)


@dataclass
class ReducednessReport:
    """
    Per-stage verdicts for stages 1..order

    stages[j-1] is 'solvable' while the locus is j-reduced and 'obstructed'
    from the first failing stage on.
    """

    order: int
    family: str
    solver: str
    basis_selection: List[Tuple[int, ...]]
    stages: List[str]
    obstruction_stage: Optional[int] = None
    obstruction_form: Optional[Tuple[int, ...]] = None

    @property
    def reduced_up_to(self) -> int:
        """Largest N for which the locus is N-reduced (within the computed order)."""
        return self.order if self.obstruction_stage is None else self.obstruction_stage - 1

    def is_reduced(self, N: int) -> bool:
        if N > self.order:
            raise ValueError(f"Stage {N} was not computed (order {self.order})")
        return N <= self.reduced_up_to

    def to_record(self) -> Dict:
        return {
            'order': str(self.order),
            'family': self.family,
            'solver': self.solver,
            'basis_selection': [list(beta) for beta in self.basis_selection],
            'stages': list(self.stages),
            'obstruction_stage': None if self.obstruction_stage is None else str(self.obstruction_stage),
            'obstruction_form': None if self.obstruction_form is None else list(self.obstruction_form),
        }


def _select_basis(series: Sequence[TruncSeries], ctx) -> Tuple[List[int], List[int]]:
    """Greedy choice of forms with independent linear parts, and their pivot parameters."""
    echelon = ExactEchelon(ctx)
    chosen = []
    for k, f in enumerate(series):
        if echelon.add(to_int_row(f.linear_part()), source=k):
            chosen.append(k)
    return chosen, list(echelon.pivots)


def _inverse(matrix: List[List[CycloNum]], ctx) -> List[List[CycloNum]]:
    size = len(matrix)
    augmented = []
    for r, row in enumerate(matrix):
        entries = {c: v for c, v in enumerate(row) if not v.is_zero()}
        entries[size + r] = ctx.one()
        augmented.append(entries)
    reduced, pivots = rref(augmented, ctx)
    if pivots != list(range(size)):
        raise ArithmeticError("Pivot block of the linear parts is singular")
    return [[row.get(size + c, ctx.zero()) for c in range(size)] for row in reduced]


def _graph_solve(fam: DeformFamily, order: int, basis: List[TruncSeries], pivots: List[int]) -> Dict[int, TruncSeries]:
    """
    Power series y = phi(z) for the pivot parameters with f_i(phi(z), z) = 0 up to the order

    Iterates y <- y - B^{-1} f(y, z); each round fixes one more degree.
    """
    ctx = cyclo_context(fam.d)
    B = [[f.linear_part().get(p, ctx.zero()) for p in pivots] for f in basis]
    B_inv = _inverse(B, ctx)
    phi = {p: TruncSeries.zero(fam, order) for p in pivots}
    for _ in range(order):
        residual = [f.substitute(phi) for f in basis]
        updated = {}
        for r, p in enumerate(pivots):
            correction = TruncSeries.zero(fam, order)
            for c, g in enumerate(residual):
                if not B_inv[r][c].is_zero():
                    correction = correction + g.scale(B_inv[r][c])
            updated[p] = phi[p] - correction
        phi = updated
    return phi


def _stacked_stage(f: TruncSeries, basis: List[TruncSeries], order: int) -> Optional[int]:
    """
    First degree j at which f = sum f_i g_i mod degree j+1 has no solution, None if all hold

    Unknowns are the coefficients of g_i at every monomial of degree < order;
    equations are added shell by shell so every stage is a prefix of the system.
    """
    ctx = cyclo_context(f.family.d)
    monomials = _all_monomials(len(f.family), order - 1)
    unknown = {(i, nu): col for col, (i, nu) in enumerate((i, nu) for i in range(len(basis)) for nu in monomials)}
    if len(unknown) > MAX_STACKED_UNKNOWNS:
        raise ResourceBudgetError(f"Stacked system needs {len(unknown)} unknowns, budget is {MAX_STACKED_UNKNOWNS}")
    rhs = len(unknown)
    rows: Dict[MultiIndex, Dict[int, CycloNum]] = {}
    for (i, nu), col in unknown.items():
        for key, value in basis[i].terms.items():
            if len(key) + len(nu) > order:
                continue
            mu = tuple(sorted(key + nu))
            row = rows.setdefault(mu, {})
            row[col] = row[col] + value if col in row else value
    for key, value in f.terms.items():
        rows.setdefault(key, {})[rhs] = value
    echelon = ExactEchelon(ctx)
    for degree in range(1, order + 1):
        for mu in sorted(k for k in rows if len(k) == degree):
            echelon.add(to_int_row(rows[mu]))
        if rhs in echelon.pivots:
            return degree
    return None


def _all_monomials(size: int, degree: int) -> List[MultiIndex]:
    out: List[MultiIndex] = [()]
    frontier: List[MultiIndex] = [()]
    for _ in range(degree):
        frontier = [key + (p,) for key in frontier for p in range(key[-1] if key else 0, size)]
        out.extend(frontier)
    return out


def check_n_reduced(problem: LocusProblem, solver: str = 'graph') -> ReducednessReport:
    """
    Decide j-reducedness of V_z for j = 1..order

    Raises:
        ValueError: unknown solver
        ResourceBudgetError: the stacked system exceeds its unknown budget
    """
    if solver not in SOLVERS:
        raise ValueError(f"Solver must be one of {SOLVERS}, got {solver!r}")
    fam, order = problem.fam, problem.order
    ctx = cyclo_context(fam.d)
    series = [taylor_combination(problem.z, beta, fam, order) for beta in problem.forms]
    chosen, pivots = _select_basis(series, ctx)
    basis = [series[k] for k in chosen]
    logger.info(f"{len(chosen)} of {len(series)} forms carry independent linear parts over {fam}")

    obstruction: Optional[Tuple[int, int]] = None
    rest = [k for k in range(len(series)) if k not in set(chosen)]
    if solver == 'graph':
        phi = _graph_solve(fam, order, basis, pivots) if basis and rest else {}
        for k in rest:
            lowest = series[k].substitute(phi).lowest_degree()
            if lowest is not None and (obstruction is None or lowest < obstruction[0]):
                obstruction = (lowest, k)
    else:
        for k in rest:
            stage = _stacked_stage(series[k], basis, order)
            if stage is not None and (obstruction is None or stage < obstruction[0]):
                obstruction = (stage, k)

    if obstruction is not None and obstruction[0] < 2:
        raise ArithmeticError(f"Form {problem.forms[obstruction[1]].beta} has a linear part outside the basis span")
    stages = ['solvable' if obstruction is None or j < obstruction[0] else 'obstructed' for j in range(1, order + 1)]
    report = ReducednessReport(
        order=order,
        family=fam.label,
        solver=solver,
        basis_selection=[problem.forms[k].beta for k in chosen],
        stages=stages,
        obstruction_stage=None if obstruction is None else obstruction[0],
        obstruction_form=None if obstruction is None else problem.forms[obstruction[1]].beta,
    )
    logger.info(f"{problem.z} is {report.reduced_up_to}-reduced up to order {order} ({fam.label}, {solver})")
    return report


def zariski_tangent_codim(problem: LocusProblem) -> int:
    """Codimension of the Zariski tangent space, rank [p_{i+j}(z)]."""
    return rank_exact(matrix_of(problem.z))
