"""
Command-Line Test Suite
Dispatch, exit codes and deterministic JSON reports
"""

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import json

import pytest

from app import cli_dispatch
from config import Config
from services import builders
from services.parser import format_line, format_point, format_x_file, parse_line

FERMAT_CUBIC = "session 3 3 1\nX0^3 + X1^3 + X2^3 + X3^3\n"

FERMAT_PAIR = (
    "session 3 3 6\n"
    "triple: plane X0 - (1-z)*X1; vertex 1:z:0:0; cone X2^3 + X3^3\n"
    "triple: plane X0 + X1; vertex 1:-1:0:0; cone X2^3 + X3^3\n"
)


@pytest.fixture
def cubic_file(tmp_path):
    path = tmp_path / "fermat.x"
    path.write_text(FERMAT_CUBIC, encoding='utf-8')
    return str(path)


@pytest.fixture
def pair_file(tmp_path):
    path = tmp_path / "pair.cfg"
    path.write_text(FERMAT_PAIR, encoding='utf-8')
    return str(path)


def run_json(*argv):
    code, report, output = cli_dispatch(['--json', *argv])
    assert code == 0, output
    return json.loads(output)


# =============================================================================
# Successful commands
# =============================================================================

def test_fermat_command():
    code, report, output = cli_dispatch(['fermat', '3', '3'])
    assert code == 0
    assert report.verdicts['count'] == 18
    assert report.verdicts['expected'] == 18
    assert output


def test_components_report_is_deterministic():
    first = cli_dispatch(['--json', 'components', '3', '3'])
    second = cli_dispatch(['--json', 'components', '3', '3'])
    assert first[2] == second[2]
    data = json.loads(first[2])
    assert data['verdicts']['count'] == 4
    assert data['timing'] is None
    assert data['seed'] == 42
    assert data['schema'] == 1
    assert data['command'] == 'components 3 3'


def test_timing_flag_records_seconds():
    data = run_json('--timing', 'components', '3', '3')
    assert data['timing'] is not None
    assert data['command'] == 'components 3 3'


def test_star_check(cubic_file):
    data = run_json('star', 'check', cubic_file, '3:4:5:-6')
    assert data['verdicts']['is_star'] is False
    data = run_json('star', 'check', cubic_file, '1:-1:0:0')
    assert data['verdicts']['is_star'] is True


def test_star_line(cubic_file):
    data = run_json('star', 'line', cubic_file, '1:0:0:0;0:1:0:0')
    assert data['verdicts']['star_count'] == 3


def test_polar_check_agrees(cubic_file):
    data = run_json('star', 'polar-check', cubic_file, '1:-1:0:0')
    assert data['verdicts']['agree'] is True


def test_classify_two_from_file(pair_file):
    data = run_json('classify2', pair_file)
    assert data['verdicts']['label']['kind'] == 'TwoGeneral'
    assert 'normal_form' in data['verdicts']
    assert data['witnesses']


def test_config_dim_from_file(pair_file):
    data = run_json('config', 'dim', pair_file)
    assert data['verdicts']['dim']['projective_dim'] == 4


def test_build_case1():
    data = run_json('build', 'case1', '3', '3')
    assert data['verdicts']['label']['kind'] == 'Vt'
    assert data['verdicts']['label']['order'] == 2


def test_star_forced_reports_its_line(tmp_path):
    line, points, planes, cone = builders.collinear_fixture(3)
    surface = builders.build_collinear(3, 3, line, points, planes, cone, seed=42)
    path = tmp_path / "collinear.x"
    path.write_text(format_x_file(surface), encoding='utf-8')
    known = [format_point(p) for p in points[:-1]]
    data = run_json('star', 'forced', str(path), format_line(line), *known)
    assert parse_line(data['verdicts']['line'], size=4) == line
    assert data['verdicts']['forced'] == str(points[-1])
    assert data['verdicts']['verdict']['is_star'] is True


def test_flags_after_the_subcommand():
    code, report, _ = cli_dispatch(['components', '3', '3', '--seed', '7'])
    assert code == 0
    assert report.seed == 7


# =============================================================================
# Errors
# =============================================================================

def test_point_off_the_surface(cubic_file):
    code, report, output = cli_dispatch(['star', 'check', cubic_file, '1:0:0:0'])
    assert code == 2
    assert report is None
    assert 'NotOnHypersurface' in output


def test_missing_file():
    code, _, _ = cli_dispatch(['star', 'check', '/nonexistent/x.txt', '1:-1:0:0'])
    assert code == 2


def test_bad_arguments():
    assert cli_dispatch(['no-such-command'])[0] == 2
    assert cli_dispatch(['--seed', '-1', 'components', '3', '3'])[0] == 2


def test_case1_with_wrong_order():
    code, _, output = cli_dispatch(['build', 'case1', '3', '3', '--order', '5'])
    assert code == 2
    assert 'NotRootOfUnity' in output


# =============================================================================
# Configuration
# =============================================================================

def test_default_configuration_is_valid():
    Config.validate()
    assert Config.validate_seed('7') == 7


def test_session_header_ranges():
    assert Config.validate_session(3, 3, 1)
    with pytest.raises(ValueError):
        Config.validate_session(1, 3, 1)
    with pytest.raises(ValueError):
        Config.validate_session(3, 2, 1)
    with pytest.raises(ValueError):
        Config.validate_session(3, 3, 0)


# =============================================================================
# Selftest
# =============================================================================

def test_selftest_passes():
    code, report, _ = cli_dispatch(['selftest'])
    assert code == 0
    assert report.verdicts['passed']


def test_selftest_json_is_byte_identical():
    first = cli_dispatch(['selftest', '--seed', '42', '--json'])
    second = cli_dispatch(['selftest', '--seed', '42', '--json'])
    assert first[0] == 0
    assert first[2] == second[2]
    data = json.loads(first[2])
    assert data['verdicts']['passed'] is True
    assert data['seed'] == 42


if __name__ == '__main__':
    sys.exit(pytest.main([__file__, '-v']))
