"""
Reports - run configuration, job execution, golden-file diffs and report rendering
"""

import json
import logging
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import joblib
import jsonschema
import pandas as pd
import yaml

from config import (
    CACHE_DIR,
    DEFAULT_COEFF_RANGE,
    DEFAULT_JOBS,
    DEFAULT_ORDER,
    DEFAULT_PRIME_COUNT,
    DEFAULT_SEED,
    REPORT_VERSION,
)

logger = logging.getLogger(__name__)

STATUSES = ('computed', 'ok', 'mismatch', 'skipped')

REPORT_SCHEMA = {
    'type': 'object',
    'required': ['version', 'command', 'config', 'results', 'diagnostics'],
    'additionalProperties': False,
    'properties': {
        'version': {'type': 'string'},
        'command': {'type': 'string'},
        'config': {'type': 'object'},
        'results': {
            'type': 'array',
            'items': {
                'type': 'object',
                'required': ['key', 'values', 'status'],
                'additionalProperties': False,
                'properties': {
                    'key': {'type': 'string'},
                    'values': {'type': 'object'},
                    'expected': {'type': ['object', 'null']},
                    'status': {'enum': list(STATUSES)},
                    'provenance': {'type': 'string'},
                },
            },
        },
        'diagnostics': {'type': 'array', 'items': {'type': 'string'}},
    },
}


@dataclass
class RunConfig:
    """Parameters shared by every subcommand; unused ones stay at their defaults."""

    command: str
    n: Optional[int] = None
    d: Optional[int] = None
    m: Optional[int] = None
    r: int = 1
    r_check: int = 1
    coeff_range: Tuple[int, int] = DEFAULT_COEFF_RANGE
    family: str = 'auto'
    solver: str = 'graph'
    order: int = DEFAULT_ORDER
    primes: Tuple[int, ...] = ()
    prime_count: int = DEFAULT_PRIME_COUNT
    certify: bool = True
    jobs: int = DEFAULT_JOBS
    seed: int = DEFAULT_SEED
    sample: int = 0
    output_format: str = 'table'
    golden: Optional[Path] = None
    write_golden: bool = False
    cache: bool = False
    include_slow: bool = False

    def __post_init__(self):
        if self.jobs < 1:
            raise ValueError(f"Parallelism must be at least 1, got {self.jobs}")
        if self.coeff_range[0] > self.coeff_range[1]:
            raise ValueError(f"Empty coefficient range {self.coeff_range}")
        if self.sample < 0:
            raise ValueError(f"Sample size must be non-negative, got {self.sample}")
        if self.output_format not in ('table', 'json'):
            raise ValueError(f"Output format must be 'table' or 'json', got {self.output_format!r}")

    def echo(self) -> Dict[str, Any]:
        """Config as plain strings, without output plumbing."""
        record = asdict(self)
        for name in ('output_format', 'golden', 'write_golden', 'cache', 'jobs'):
            record.pop(name)
        return {k: _plain(v) for k, v in record.items() if v is not None}


def _plain(value):
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if value is None or isinstance(value, (bool, str)):
        return value
    return str(value)


@dataclass
class ResultItem:
    key: str
    values: Dict[str, Any]
    status: str = 'computed'
    expected: Optional[Dict[str, Any]] = None
    provenance: str = 'exact'

    def to_record(self) -> Dict[str, Any]:
        record = {'key': self.key, 'values': self.values, 'status': self.status, 'provenance': self.provenance}
        if self.expected is not None:
            record['expected'] = self.expected
        return record


@dataclass
class Report:
    command: str
    config: RunConfig
    results: List[ResultItem] = field(default_factory=list)
    diagnostics: List[str] = field(default_factory=list)
    elapsed: float = 0.0  # seconds, table output only

    def add(self, key: str, values: Dict[str, Any], expected: Optional[Dict[str, Any]] = None,
            provenance: str = 'exact') -> ResultItem:
        """Record one result, comparing against expected values when given."""
        values = {k: _plain(v) for k, v in values.items()}
        status = 'computed'
        if expected is not None:
            expected = {k: _plain(v) for k, v in expected.items()}
            status = 'ok' if all(values.get(k) == v for k, v in expected.items()) else 'mismatch'
            if status == 'mismatch':
                self.diagnostics.append(f"{key}: computed {values}, expected {expected}")
        item = ResultItem(key, values, status, expected, provenance)
        self.results.append(item)
        return item

    def skip(self, key: str, reason: str):
        self.results.append(ResultItem(key, {'reason': reason}, 'skipped', provenance='none'))

    @property
    def failed(self) -> bool:
        return any(item.status == 'mismatch' for item in self.results)

    def to_record(self) -> Dict[str, Any]:
        record = {
            'version': REPORT_VERSION,
            'command': self.command,
            'config': self.config.echo(),
            'results': [item.to_record() for item in sorted(self.results, key=lambda i: i.key)],
            'diagnostics': list(self.diagnostics),
        }
        jsonschema.validate(record, REPORT_SCHEMA)
        return record

    def to_json(self) -> str:
        return json.dumps(self.to_record(), indent=2, sort_keys=True)

    def to_table(self) -> str:
        rows = []
        for item in sorted(self.results, key=lambda i: i.key):
            row = {'key': item.key}
            row.update({k: _cell(v) for k, v in item.values.items()})
            if item.expected is not None:
                row.update({f"expected_{k}": _cell(v) for k, v in item.expected.items()})
            row['status'] = item.status
            rows.append(row)
        if not rows:
            text = f"{self.command}: no results"
        else:
            text = pd.DataFrame(rows).fillna('').to_string(index=False)
        if self.diagnostics:
            text += '\n' + '\n'.join(self.diagnostics)
        if self.elapsed:
            text += f"\n{self.command} took {self.elapsed:.2f}s"
        return text

    def render(self) -> str:
        return self.to_json() if self.config.output_format == 'json' else self.to_table()


def _cell(value) -> str:
    if isinstance(value, list):
        return ','.join(_cell(v) for v in value)
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True)
    return str(value)


def run_jobs(func: Callable, jobs: Sequence[Tuple[str, tuple]], n_jobs: int = DEFAULT_JOBS) -> List[Tuple[str, Any]]:
    """
    Run func(*args) for every (key, args) job on a bounded worker pool

    Returns:
        (key, result) pairs sorted by key, independent of completion order
    """
    if not jobs:
        return []
    logger.info(f"Running {len(jobs)} jobs on {n_jobs} workers")
    outputs = joblib.Parallel(n_jobs=n_jobs)(joblib.delayed(func)(*args) for _, args in jobs)
    return sorted(zip((key for key, _ in jobs), outputs), key=lambda pair: pair[0])


def cached(key: str, func: Callable, *args, enabled: bool = False, cache_dir: Path = CACHE_DIR):
    """func(*args), stored on disk under key with joblib when enabled."""
    if not enabled:
        return func(*args)
    path = Path(cache_dir) / f"{key}.joblib"
    if path.exists():
        logger.debug(f"Cache hit for {key}")
        return joblib.load(path)
    value = func(*args)
    path.parent.mkdir(parents=True, exist_ok=True)
    joblib.dump(value, path)
    return value


def load_golden(path: Path) -> Dict[str, Any]:
    """
    Read a golden file

    Raises:
        ValueError: the file has no results list or an unknown version
    """
    with open(path) as f:
        data = yaml.safe_load(f)
    if not isinstance(data, dict) or 'results' not in data:
        raise ValueError(f"Golden file {path} has no results")
    if str(data.get('version')) != REPORT_VERSION:
        raise ValueError(f"Golden file {path} has version {data.get('version')}, expected {REPORT_VERSION}")
    return data


def compare_golden(report: Report, path: Path) -> List[str]:
    """Diff report results against a golden file; mismatches are recorded on the report."""
    golden = load_golden(path)
    if golden.get('command') != report.command:
        raise ValueError(f"Golden file {path} belongs to '{golden.get('command')}', not '{report.command}'")
    computed = {item.key: item for item in report.results}
    diffs = []
    for entry in golden['results']:
        key = str(entry['key'])
        expected = {k: _plain(v) for k, v in entry['values'].items()}
        item = computed.get(key)
        if item is None:
            diffs.append(f"{key}: missing from the run")
            continue
        if item.status == 'skipped':
            continue
        changed = {k: (item.values.get(k), v) for k, v in expected.items() if item.values.get(k) != v}
        if changed:
            item.status = 'mismatch'
            diffs.append(f"{key}: " + ', '.join(f"{k} computed {got} expected {want}" for k, (got, want) in changed.items()))
        elif item.status == 'computed':
            item.status = 'ok'
    report.diagnostics.extend(diffs)
    logger.info(f"Golden comparison against {path}: {len(diffs)} differences")
    return diffs


def write_golden(report: Report, path: Path):
    record = {
        'version': REPORT_VERSION,
        'command': report.command,
        'config': report.config.echo(),
        'results': [
            {'key': item.key, 'values': item.values}
            for item in sorted(report.results, key=lambda i: i.key)
            if item.status != 'skipped'
        ],
    }
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w') as f:
        yaml.safe_dump(record, f, sort_keys=True)
    logger.info(f"Wrote golden file {path} with {len(record['results'])} results")


class Timer:
    """Context manager storing wall-clock seconds on a report."""

    def __init__(self, report: Report):
        self.report = report

    def __enter__(self):
        self.start = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.elapsed = time.perf_counter() - self.start
        logger.info(f"{self.report.command} finished in {self.report.elapsed:.2f}s")
        return False
