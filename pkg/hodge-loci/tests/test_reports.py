"""
Test cases for run configuration, golden files and report rendering
"""

import json

import pytest
import yaml

from reports import Report, RunConfig, Timer, cached, compare_golden, load_golden, run_jobs, write_golden


def _square(x):
    return x * x


class TestRunConfig:
    """Test suite for run configuration"""

    def test_defaults(self):
        """Test defaults come from config"""
        config = RunConfig('kdim', n=6, d=3, m=1)
        assert config.order == 3
        assert config.seed == 2017
        assert config.certify

    def test_validation(self):
        """Test invalid settings are rejected"""
        with pytest.raises(ValueError):
            RunConfig('kdim', jobs=0)
        with pytest.raises(ValueError):
            RunConfig('kdim', coeff_range=(3, 1))
        with pytest.raises(ValueError):
            RunConfig('kdim', output_format='xml')

    def test_echo(self):
        """Test the echoed config is plain strings without output plumbing"""
        echo = RunConfig('kdim', n=6, d=3, m=1).echo()
        assert echo['n'] == '6'
        assert echo['coeff_range'] == ['-5', '5']
        assert 'output_format' not in echo
        assert 'golden' not in echo


class TestReport:
    """Test suite for report assembly"""

    @pytest.fixture
    def report(self):
        """Fixture providing a report with one matching and one computed item"""
        report = Report('codim-table', RunConfig('codim-table', n=4, d=6))
        report.add('1,1,1', {'codim': 19}, expected={'codim': 19})
        report.add('1,1,2', {'codim': 32})
        return report

    def test_statuses(self, report):
        """Test expected values set ok or mismatch"""
        assert [item.status for item in report.results] == ['ok', 'computed']
        assert not report.failed
        report.add('3,3,3', {'codim': 140}, expected={'codim': 141})
        assert report.failed
        assert any('3,3,3' in line for line in report.diagnostics)

    def test_values_as_strings(self, report):
        """Test values are stored as exact strings"""
        assert report.results[0].values == {'codim': '19'}

    def test_json(self, report):
        """Test the JSON rendering validates and is sorted by key"""
        record = json.loads(report.to_json())
        assert record['version'] == '1.0'
        assert [r['key'] for r in record['results']] == ['1,1,1', '1,1,2']
        assert record['results'][0]['expected'] == {'codim': '19'}

    def test_table(self, report):
        """Test the table rendering lists keys and statuses"""
        text = report.to_table()
        assert '1,1,2' in text
        assert 'ok' in text
        assert 'expected_codim' in text

    def test_skip(self, report):
        """Test skipped items carry their reason"""
        report.skip('n=12 m=+6', 'resource budget')
        assert report.results[-1].status == 'skipped'
        assert not report.failed

    def test_timer(self, report):
        """Test the timer stores elapsed seconds"""
        with Timer(report):
            pass
        assert report.elapsed >= 0.0

    def test_elapsed_in_table_only(self, report):
        """Test elapsed time is shown in the table and left out of the JSON"""
        report.elapsed = 1.5
        assert report.to_table().splitlines()[-1] == 'codim-table took 1.50s'
        assert '1.5' not in report.to_json()


class TestGoldenFiles:
    """Test suite for golden file round trips"""

    @pytest.fixture
    def report(self):
        """Fixture providing a small report"""
        report = Report('kdim', RunConfig('kdim', n=6, d=3, m=1))
        report.add('K(6,3,1)', {'K': 8})
        return report

    def test_write_then_compare(self, report, tmp_path):
        """Test a written golden file matches its own run"""
        path = tmp_path / 'kdim.yaml'
        write_golden(report, path)
        assert compare_golden(report, path) == []
        assert report.results[0].status == 'ok'

    def test_detects_change(self, report, tmp_path):
        """Test a changed value is reported as a mismatch"""
        path = tmp_path / 'kdim.yaml'
        write_golden(report, path)
        data = yaml.safe_load(path.read_text())
        data['results'][0]['values']['K'] = '7'
        path.write_text(yaml.safe_dump(data))
        diffs = compare_golden(report, path)
        assert len(diffs) == 1
        assert report.failed

    def test_missing_key(self, report, tmp_path):
        """Test golden keys absent from the run are reported"""
        path = tmp_path / 'kdim.yaml'
        path.write_text(yaml.safe_dump({'version': '1.0', 'command': 'kdim',
                                        'results': [{'key': 'K(6,3,0)', 'values': {'K': 8}}]}))
        assert compare_golden(report, path) == ['K(6,3,0): missing from the run']

    def test_bad_golden(self, report, tmp_path):
        """Test wrong versions and commands are rejected"""
        path = tmp_path / 'bad.yaml'
        path.write_text(yaml.safe_dump({'version': '0.1', 'command': 'kdim', 'results': []}))
        with pytest.raises(ValueError):
            load_golden(path)
        path.write_text(yaml.safe_dump({'version': '1.0', 'command': 'hdim', 'results': []}))
        with pytest.raises(ValueError):
            compare_golden(report, path)


class TestJobs:
    """Test suite for parallel jobs and the disk cache"""

    def test_run_jobs_sorted(self):
        """Test results come back sorted by key"""
        jobs = [('b', (3,)), ('a', (2,)), ('c', (4,))]
        assert run_jobs(_square, jobs, 1) == [('a', 4), ('b', 9), ('c', 16)]
        assert run_jobs(_square, [], 2) == []

    def test_cached(self, tmp_path):
        """Test cached values are stored and reused"""
        assert cached('sq-3', _square, 3, enabled=True, cache_dir=tmp_path) == 9
        assert (tmp_path / 'sq-3.joblib').exists()
        assert cached('sq-3', _square, 4, enabled=True, cache_dir=tmp_path) == 9
        assert cached('sq-3', _square, 4, enabled=False, cache_dir=tmp_path) == 16
