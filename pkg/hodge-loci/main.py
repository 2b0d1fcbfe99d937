"""
Main entry point for the Hodge loci toolkit
Reproduces the Fermat tables and runs the cycle, rank and reducedness computations
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from config import LOG_LEVEL, MAX_EXACT_CELLS, MAX_ORDER
from dimension_formulas import CIType, cformula, ci_type, codim_table, cubic_bounds, hdim_scaled, kdim
from hodge_locus import FAMILIES, SOLVERS, LocusProblem, check_n_reduced, choose_family, zariski_tangent_codim
from indices import betti_middle, check_nd, hodge_table, index_set, moduli_dim
from linear_cycles import (
    CycleCombination,
    bicycles,
    enumerate_cycles,
    linear_cycle_count,
    m_count,
    pair_combination,
    standard_pair,
)
from period_matrix import ParamMatrix, constant_rank_scan, kernel_sweep, matrix_of, rank_certified
from periods import period_degree, period_vector
from reference_values import (
    CUBIC_HK_TABLE,
    CUBIC_MODULI,
    CUBIC_TENFOLD_CODIM,
    FIVE_TUPLES,
    HODGE_TABLES,
    SEXTIC_FOURFOLD_CODIM,
    SLOW_CUBIC_ROWS,
)
from reports import Report, RunConfig, Timer, cached, compare_golden, run_jobs, write_golden
from taylor_series import FormIndex, taylor_combination

logger = logging.getLogger(__name__)


def _source(config: RunConfig):
    """r P + r' P' for the standard pair when m is given, the single cycle P otherwise."""
    if config.m is None:
        first, _ = standard_pair(config.n, config.d, config.n // 2)
        return CycleCombination(config.n, config.d, [(config.r, first)])
    return pair_combination(config.n, config.d, config.m, config.r, config.r_check)


def _hk_cell(n: int, d: int, m: int) -> Tuple[int, int]:
    return hdim_scaled(n, d, m), kdim(n, d, m)


def _matrix_cells(n: int, d: int) -> int:
    return len(index_set(n, d, (n // 2) * d - n - 2)) * len(index_set(n, d, d))


def cmd_cycles(config: RunConfig, report: Report):
    """List every linear cycle and check the count against (n+1)!! d^{n/2+1}."""
    cycles = enumerate_cycles(config.n, config.d)
    for k, cycle in enumerate(cycles):
        report.add(f"{k:06d}", {'a': list(cycle.a), 'b': list(cycle.b), 'sign': cycle.sign})
    report.add('count', {'count': len(cycles)}, expected={'count': linear_cycle_count(config.n, config.d)})
    if not all(c.lies_on_fermat() for c in cycles):
        report.diagnostics.append("Some linear cycle does not lie on the Fermat variety")


def cmd_periods(config: RunConfig, report: Report):
    p = period_vector(_source(config), exact=True)
    for i in p.support():
        report.add(','.join(map(str, i)), {'value': str(p.get(i))})
    report.add('~support', {'size': len(p.support()), 'degree': period_degree(config.n, config.d)})


def cmd_rank(config: RunConfig, report: Report):
    M = matrix_of(_source(config))
    result = rank_certified(M, primes=config.primes or None, certify=config.certify, prime_count=config.prime_count)
    report.add('rank', {'rank': result.rank, 'rows': M.shape[0], 'cols': M.shape[1]}, provenance=result.provenance)


def cmd_hdim(config: RunConfig, report: Report):
    H = cached(f"hdim-{config.n}-{config.d}-{config.m}-{config.r}-{config.r_check}", hdim_scaled,
               config.n, config.d, config.m, config.r, config.r_check, enabled=config.cache)
    expected = FIVE_TUPLES.get((config.n, config.d, config.m))
    report.add(f"H({config.n},{config.d},{config.m})", {'H': H, 'K': kdim(config.n, config.d, config.m)},
               expected=None if expected is None else {'H': expected[0], 'K': expected[1]})


def cmd_kdim(config: RunConfig, report: Report):
    report.add(f"K({config.n},{config.d},{config.m})", {'K': kdim(config.n, config.d, config.m)})


def cmd_cformula(config: RunConfig, report: Report, degrees: Sequence[int], parts: Sequence[int]):
    if parts:
        t = CIType(config.n, config.d, tuple(parts))
    else:
        t = ci_type(config.n, config.d, degrees)
    report.add(t.label(), {'C': cformula(t)})


def cmd_table1(config: RunConfig, report: Report):
    """(H^3_n(m), K^3_n(m)) grid and the cubic Hodge-number table, diffed against the published values."""
    jobs = []
    for n, row in sorted(CUBIC_HK_TABLE.items()):
        key_prefix = f"n={n:02d}"
        too_big = n in SLOW_CUBIC_ROWS or _matrix_cells(n, 3) > MAX_EXACT_CELLS
        if too_big and not config.include_slow:
            for column in range(len(row)):
                report.skip(f"{key_prefix} m={n // 2 - column:+d}", 'resource budget; rerun with --include-slow')
            continue
        for column in range(len(row)):
            m = n // 2 - column
            jobs.append((f"{key_prefix} m={m:+d}", (n, 3, m)))
    for key, (H, K) in run_jobs(_hk_cell, jobs, config.jobs):
        n = int(key[2:4])
        m = int(key.split('m=')[1])
        want = CUBIC_HK_TABLE[n][n // 2 - m]
        report.add(key, {'H': H, 'K': K}, expected={'H': want[0], 'K': want[1]})
    for n, (moduli, bounds) in sorted(CUBIC_MODULI.items()):
        report.add(
            f"hodge n={n:02d}",
            {'moduli': moduli_dim(n, 3), 'range': cubic_bounds(n), 'hodge': hodge_table(n, 3)},
            expected={'moduli': moduli, 'range': bounds, 'hodge': HODGE_TABLES[(n, 3)]},
        )


def cmd_five_tuples(config: RunConfig, report: Report):
    jobs = [(f"({n},{d},{m:+d})", (n, d, m)) for (n, d, m) in sorted(FIVE_TUPLES)]
    expected = {f"({n},{d},{m:+d})": hk for (n, d, m), hk in FIVE_TUPLES.items()}
    for key, (H, K) in run_jobs(_hk_cell, jobs, config.jobs):
        report.add(key, {'H': H, 'K': K}, expected={'H': expected[key][0], 'K': expected[key][1]})


def cmd_codim_table(config: RunConfig, report: Report):
    for degrees, value in codim_table(config.n, config.d):
        expected = None
        if (config.n, config.d) == (4, 6):
            expected = {'codim': SEXTIC_FOURFOLD_CODIM[degrees]}
        elif (config.n, config.d, degrees) == CUBIC_TENFOLD_CODIM[0]:
            expected = {'codim': CUBIC_TENFOLD_CODIM[1]}
        report.add(','.join(map(str, degrees)), {'codim': value}, expected=expected)


def cmd_hodge_numbers(config: RunConfig, report: Report):
    expected = HODGE_TABLES.get((config.n, config.d))
    report.add(
        f"({config.n},{config.d})",
        {'hodge': hodge_table(config.n, config.d), 'betti': betti_middle(config.n, config.d)},
        expected=None if expected is None else {'hodge': expected},
    )


def cmd_taylor(config: RunConfig, report: Report, beta: Sequence[int]):
    fam = choose_family(config.n, config.d, config.order, config.family)
    series = taylor_combination(_source(config), FormIndex(tuple(beta), config.d), fam, config.order)
    for record in series.to_records():
        report.add(','.join(map(str, record['a'])) or 'const', {'coeff': record['coeff']})
    report.diagnostics.append(f"family {fam.label} with {len(fam)} parameters")


def cmd_nreduced(config: RunConfig, report: Report):
    if config.order > MAX_ORDER:
        raise ValueError(f"Order {config.order} exceeds the maximum {MAX_ORDER}")
    problem = LocusProblem.build(_source(config), config.order, config.family)
    result = check_n_reduced(problem, solver=config.solver)
    report.add('verdict', {**result.to_record(), 'reduced_up_to': result.reduced_up_to,
                           'tangent_codim': zariski_tangent_codim(problem)})


def cmd_sweep_kernels(config: RunConfig, report: Report):
    results = kernel_sweep(config.n, config.d, config.sample, config.seed)
    for k, (z1, z2, ranks) in enumerate(results):
        report.add(f"{k:05d}", {'rank_first': ranks.rank_first, 'rank_second': ranks.rank_second,
                                'rank_stacked': ranks.rank_stacked, 'strict': ranks.no_inclusion})
        if not ranks.no_inclusion:
            report.diagnostics.append(f"No strict inequality for {z1} and {z2}: {tuple(ranks)}")


def cmd_constant_rank(config: RunConfig, report: Report):
    A = ParamMatrix.standard(config.n, config.d, config.m)
    scan = constant_rank_scan(A, seed=config.seed)
    report.add(f"({config.n},{config.d},{config.m:+d})", scan.to_record())


def cmd_bicycles(config: RunConfig, report: Report):
    first, second = standard_pair(config.n, config.d, config.m)
    for k, bike in enumerate(bicycles(first, second)):
        report.add(f"{k:03d}", {'walk': list(bike.cycle), 'conductor': bike.conductor, 'new': bike.is_new})
    report.add('~m_count', {'m': m_count(first, second)}, expected={'m': config.m})


COMMANDS = {
    'cycles': cmd_cycles,
    'periods': cmd_periods,
    'rank': cmd_rank,
    'hdim': cmd_hdim,
    'kdim': cmd_kdim,
    'cformula': cmd_cformula,
    'table1': cmd_table1,
    'five-tuples': cmd_five_tuples,
    'codim-table': cmd_codim_table,
    'hodge-numbers': cmd_hodge_numbers,
    'taylor': cmd_taylor,
    'nreduced': cmd_nreduced,
    'sweep-kernels': cmd_sweep_kernels,
    'constant-rank': cmd_constant_rank,
    'bicycles': cmd_bicycles,
}

# commands taking positional (n, d) and whether --m is required
NEEDS_ND = {
    'cycles': False, 'periods': False, 'rank': False, 'hdim': True, 'kdim': True, 'cformula': False,
    'codim-table': False, 'hodge-numbers': False, 'taylor': False, 'nreduced': True,
    'sweep-kernels': False, 'constant-rank': True, 'bicycles': True,
}


def _int_list(text: str) -> List[int]:
    return [int(x) for x in text.split(',') if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='hodge-loci', description='Periods and Hodge loci of Fermat varieties')
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', dest='output_format', choices=['table', 'json'], default='table')
    common.add_argument('--golden', type=Path, help='YAML golden file to diff against')
    common.add_argument('--write-golden', action='store_true', help='write the run to the --golden path')
    common.add_argument('--jobs', type=int, default=1)
    common.add_argument('--seed', type=int, default=None)
    common.add_argument('--cache', action='store_true', help='reuse computed cells from the joblib cache')
    common.add_argument('-v', '--verbose', action='store_true')

    sub = parser.add_subparsers(dest='command', required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == 'codim-table':
            p.add_argument('n', type=int, nargs='?', default=4)
            p.add_argument('d', type=int, nargs='?', default=6)
        elif name in NEEDS_ND:
            p.add_argument('n', type=int)
            p.add_argument('d', type=int)
            p.add_argument('--m', type=int, required=NEEDS_ND[name])
            p.add_argument('--r', type=int, default=1)
            p.add_argument('--rcheck', type=int, default=1)
        if name == 'rank':
            p.add_argument('--primes', type=_int_list, default=[])
            p.add_argument('--no-certify', action='store_true')
        if name in ('taylor', 'nreduced'):
            p.add_argument('--order', type=int, default=None)
            p.add_argument('--family', choices=FAMILIES, default='auto')
        if name == 'nreduced':
            p.add_argument('--solver', choices=SOLVERS, default='graph')
        if name == 'taylor':
            p.add_argument('--beta', type=_int_list, required=True)
        if name == 'cformula':
            p.add_argument('--type', dest='degrees', type=_int_list, default=[],
                           help='degrees d_1..d_{n/2+1} of the complete intersection')
            p.add_argument('--parts', type=_int_list, default=[], help='raw sequence a_1..a_s')
        if name == 'sweep-kernels':
            p.add_argument('--sample', type=int, default=100)
        if name == 'table1':
            p.add_argument('--include-slow', action='store_true', help='also compute the n = 12 row')
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    values = {'command': args.command, 'output_format': args.output_format, 'jobs': args.jobs, 'cache': args.cache,
              'golden': args.golden, 'write_golden': args.write_golden}
    for name in ('n', 'd', 'm', 'order', 'family', 'solver', 'sample', 'include_slow', 'seed'):
        if getattr(args, name, None) is not None:
            values[name] = getattr(args, name)
    if hasattr(args, 'r'):
        values['r'], values['r_check'] = args.r, args.rcheck
    if getattr(args, 'primes', None):
        values['primes'] = tuple(args.primes)
    if getattr(args, 'no_certify', False):
        values['certify'] = False
    return RunConfig(**values)


def run(args: argparse.Namespace) -> Report:
    config = _config_from_args(args)
    if config.n is not None:
        check_nd(config.n, config.d)
    report = Report(args.command, config)
    handler = COMMANDS[args.command]
    with Timer(report):
        if args.command == 'cformula':
            handler(config, report, args.degrees, args.parts)
        elif args.command == 'taylor':
            handler(config, report, args.beta)
        else:
            handler(config, report)
    if config.golden is not None:
        if config.write_golden:
            write_golden(report, config.golden)
        else:
            compare_golden(report, config.golden)
    return report


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point"""
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else LOG_LEVEL,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )
    try:
        report = run(args)
    except ValueError as e:
        logger.error(f"Invalid input: {e}")
        print(f"{parser.prog}: error: {e}", file=sys.stderr)
        return 2
    except Exception as e:
        logger.error(f"Error during {args.command}: {e}", exc_info=True)
        return 1
    print(report.render())
    if report.failed:
        logger.error(f"{args.command}: {len(report.diagnostics)} mismatches")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
