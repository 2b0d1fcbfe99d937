"""
Configuration and constants for the Hodge loci toolkit
"""

import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

BASE_DIR = Path(__file__).parent

# Truncation
DEFAULT_ORDER = int(os.getenv('HODGE_DEFAULT_ORDER', 3))  # total degree kept in Taylor series
MAX_ORDER = int(os.getenv('HODGE_MAX_ORDER', 8))  # hard ceiling for N-reducedness checks

# Resource budgets
MAX_SERIES_MONOMIALS = int(os.getenv('HODGE_MAX_SERIES_MONOMIALS', 50_000))  # monomials of degree <= N
MAX_STACKED_UNKNOWNS = int(os.getenv('HODGE_MAX_STACKED_UNKNOWNS', 4_000))  # g-coefficients in one stacked solve
MAX_EXACT_CELLS = int(os.getenv('HODGE_MAX_EXACT_CELLS', 200_000))  # rows x cols for table cells computed exactly

# Modular fast path
PRIME_CEILING = 2 ** 31  # residues stay below 2^31 so products fit in int64
DEFAULT_PRIME_COUNT = int(os.getenv('HODGE_PRIME_COUNT', 2))  # agreeing primes needed to promote a modular rank

# Constant-rank scan
MINOR_PROBE_BUDGET = int(os.getenv('HODGE_MINOR_PROBE_BUDGET', 8))  # probe points tried by good_minor
MINOR_SAMPLE_COUNT = int(os.getenv('HODGE_MINOR_SAMPLE_COUNT', 8))  # minors whose determinants are scanned

# Sampling
DEFAULT_SEED = int(os.getenv('HODGE_SEED', 2017))
DEFAULT_COEFF_RANGE = (-5, 5)  # integer coefficients of random cycle combinations

# Parallelism
DEFAULT_JOBS = int(os.getenv('HODGE_JOBS', 1))  # joblib worker count

# Files
GOLDEN_DIR = Path(os.getenv('HODGE_GOLDEN_DIR', BASE_DIR / 'golden' / 'v1'))
CACHE_DIR = Path(os.getenv('HODGE_CACHE_DIR', BASE_DIR / '.cache'))

# Report schema version
REPORT_VERSION = '1.0'

# Logging
LOG_LEVEL = os.getenv('HODGE_LOG_LEVEL', 'INFO')
