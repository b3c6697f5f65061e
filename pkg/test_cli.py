"""
Session files and the tstd command line.
"""

import json
import os

import pytest

from conftest import FIXTURES
from tstd.cli.main import EXIT_FALSE, EXIT_MATH, EXIT_OK, EXIT_USAGE, main
from tstd.cli.session import Session, load_session, parse_session
from tstd.config import current_config
from tstd.errors import ContextError, ParseError

SESSION = os.path.join(FIXTURES, 'session.json')


def _session_text(ideals, tvars=('t',), xvars=('x', 'y'), order='lex', denom=1):
    return json.dumps({
        'ring': {'field': 'QQ', 'tvars': list(tvars), 'xvars': list(xvars), 'rank': 1, 'denom': denom},
        'order': order,
        'ideals': ideals,
    }, indent=2) + '\n'


@pytest.fixture
def session_file(tmp_path):
    def write(ideals, **ring):
        path = tmp_path / 'session.json'
        path.write_text(_session_text(ideals, **ring), encoding='utf-8')
        return str(path)
    return write


@pytest.fixture
def run(capsys):
    def call(*argv):
        code = main(list(argv))
        out, err = capsys.readouterr()
        return code, out, err
    return call


def _line_containing(text, needle):
    return next(i for i, line in enumerate(text.splitlines(), start=1) if needle in line)


# Session files

def test_fixture_session_round_trips():
    with open(SESSION, encoding='utf-8') as handle:
        text = handle.read()
    session = load_session(SESSION)
    assert session.to_text() == text
    assert parse_session(session.to_text()).to_text() == text
    assert list(session.ideals) == ['I', 'P']


def test_session_generators():
    session = load_session(SESSION)
    assert [g.to_text() for g in session.generators()] == ['x*y', 'x^2 - t*y']
    assert len(session.generators('P')) == 2
    with pytest.raises(ContextError, match="no ideal named"):
        session.generators('Q')


def test_session_with_order():
    session = load_session(SESSION).with_order('tw(-1, 1, 1 ; degrevlex)')
    assert session.to_dict()['order'] == 'tw(-1, 1, 1 ; degrevlex)'
    assert session.ideals['P'][0].to_text() == 'x - t'


def test_unknown_key_is_reported_with_its_line():
    text = _session_text({'I': ['x']}).replace('"order"', '"ordre"')
    with pytest.raises(ParseError, match="unknown key 'ordre'") as info:
        parse_session(text, path='s.json')
    assert info.value.line == _line_containing(text, '"ordre"')
    assert info.value.path == 's.json'


def test_weight_vector_of_wrong_length_is_reported_at_the_order():
    text = _session_text({'I': ['x']}, order='ws(-1, 1) lex')
    with pytest.raises(ParseError, match="length") as info:
        parse_session(text)
    assert info.value.line == _line_containing(text, '"order"')


def test_non_local_order_is_rejected():
    with pytest.raises(ParseError, match="not t-local"):
        parse_session(_session_text({'I': ['x']}, order='ws(1, 0, 0) lex'))


def test_duplicate_variable_is_rejected():
    with pytest.raises(ParseError, match="duplicate"):
        parse_session(_session_text({'I': ['x']}, xvars=('x', 'x')))


def test_bad_generator_is_reported_at_its_line():
    text = _session_text({'I': ['x', 'x + w']})
    with pytest.raises(ParseError, match="unknown variable") as info:
        parse_session(text)
    assert info.value.line == _line_containing(text, '"x + w"')


def test_json_syntax_error_has_a_position():
    with pytest.raises(ParseError) as info:
        parse_session('{\n  "ring": }\n', path='broken.json')
    assert info.value.line == 2
    assert str(info.value).startswith('broken.json:2:')


@pytest.mark.parametrize('data', [
    [],
    {'ring': {}, 'order': 'lex'},
    {'ring': {'field': 'QQ', 'tvars': ['t'], 'xvars': ['x'], 'colour': 1}, 'order': 'lex', 'ideals': {'I': []}},
    {'ring': {'field': 'QQ', 'tvars': ['t'], 'xvars': ['x']}, 'order': 'lex', 'ideals': {}},
    {'ring': {'field': 'QQ', 'tvars': ['t'], 'xvars': ['x']}, 'order': 'lex', 'ideals': {'I': 'x'}},
    {'ring': {'field': 'RR', 'tvars': ['t'], 'xvars': ['x']}, 'order': 'lex', 'ideals': {'I': []}},
])
def test_invalid_sessions(data):
    with pytest.raises(ParseError):
        Session.from_dict(data)


# Subcommands

def test_std_matches_golden_output(run):
    code, out, _ = run('std', SESSION)
    assert code == EXIT_OK
    with open(os.path.join(FIXTURES, 'std_I.golden'), encoding='utf-8') as handle:
        assert out == handle.read()


def test_output_is_deterministic(run):
    first = run('std', SESSION, '--reduce')
    second = run('std', SESSION, '--reduce')
    assert first == second
    assert first[1] == 'x*y\nx^2 - t*y\nt*y^2\n'


def test_check_reports_booleans_by_exit_code(run):
    assert run('check', SESSION)[:2] == (EXIT_FALSE, 'false\n')
    assert run('check', SESSION, '--ideal', 'P')[:2] == (EXIT_OK, 'true\n')


def test_member(run, session_file):
    path = session_file({'I': ['x - t*x']}, xvars=('x',))
    assert run('member', path, '--poly', 'x')[:2] == (EXIT_OK, 'true\n')
    assert run('member', path, '--poly', 't')[:2] == (EXIT_FALSE, 'false\n')


def test_nf(run, session_file):
    path = session_file({'I': ['t - t^2']}, xvars=('x',))
    code, out, _ = run('nf', path, '--poly', 't')
    assert code == EXIT_OK
    assert out == 'u = 1 - t\nq = [1]\nr = 0\n'


def test_nf_strong_mode(run, tmp_path):
    path = tmp_path / 'module.json'
    path.write_text(json.dumps({
        'ring': {'field': 'QQ', 'tvars': ['t'], 'xvars': ['x', 'y'], 'rank': 2, 'denom': 1},
        'order': 'module(c, lex)',
        'ideals': {'M': ['x*gen(2)']},
    }), encoding='utf-8')
    _, weak, _ = run('nf', str(path), '--poly', 'y*gen(1) + x*gen(2)')
    _, strong, _ = run('nf', str(path), '--poly', 'y*gen(1) + x*gen(2)', '--mode', 'strong')
    assert weak.splitlines()[-1] == 'r = y*gen(1) + x*gen(2)'
    assert strong.splitlines()[-1] == 'r = y*gen(1)'


def test_hddwr(run, session_file):
    path = session_file({'I': ['x - t*y']})
    assert run('hddwr', path, '--poly', 'x^2')[:2] == (EXIT_OK, 'q = [x + t*y]\nr = t^2*y^2\n')


def test_hddwr_truncated(run, session_file):
    path = session_file({'I': ['x - t*x']}, xvars=('x',))
    code, out, _ = run('hddwr', path, '--poly', 'x', '--prec', '2')
    assert code == EXIT_OK
    assert out == 'q = [1 + t]\nr = 0\nresidual = t^2*x\n'


def test_hddwr_without_truncation_is_a_math_error(run, session_file, monkeypatch):
    monkeypatch.setattr(current_config, 'HDDWR_MAX_STEPS', 30)
    path = session_file({'I': ['x - t*x']}, xvars=('x',))
    code, out, err = run('hddwr', path, '--poly', 'x')
    assert code == EXIT_MATH
    assert out == ''
    assert 'error: ' in err


def test_syz(run, session_file):
    assert run('syz', session_file({'I': ['x', 'y']}))[:2] == (EXIT_OK, '[y, -x]\n')
    assert run('syz', session_file({'I': ['x']}))[:2] == (EXIT_OK, '0\n')


def test_eliminate(run):
    assert run('eliminate', SESSION, '--ideal', 'P', '--vars', 'x')[:2] == (EXIT_OK, 'y - t\n')
    code, _, err = run('eliminate', SESSION, '--vars', 't')
    assert code == EXIT_USAGE
    assert 'cannot eliminate local variables' in err


def test_intersect(run, session_file):
    path = session_file({'A': ['x'], 'B': ['t']}, xvars=('x',))
    assert run('intersect', path, '--other', 'B')[:2] == (EXIT_OK, 't*x\n')


def test_quotient_and_saturate(run, session_file):
    path = session_file({'I': ['t*x']}, xvars=('x',))
    assert run('quotient', path, '--by', 'x')[:2] == (EXIT_OK, 't\n')
    assert run('saturate', path, '--by', 't')[:2] == (EXIT_OK, 'x\n')
    assert run('quotient', path, '--by', '0')[0] == EXIT_MATH


def test_saturation_cap_from_environment(run, session_file, monkeypatch):
    monkeypatch.setenv('TSTD_MAX_ITER', '1')
    path = session_file({'I': ['t*x']}, xvars=('x',))
    code, _, err = run('saturate', path, '--by', 't')
    assert code == EXIT_MATH
    assert 'did not stabilise' in err


def test_tinitial(run):
    assert run('tinitial', SESSION, '--ideal', 'P', '--w=-1,0,0')[:2] == (EXIT_OK, 'x\ny\n')
    assert run('tinitial', SESSION, '--ideal', 'P', '--w=0,1,1')[0] == EXIT_USAGE


def test_tinitial_over_a_finer_denominator(run, session_file):
    path = session_file({'I': ['x^2 - t']}, xvars=('x',))
    assert run('tinitial', path, '--w=-1,-1/2', '--denom', '3')[:2] == (EXIT_OK, 'x^2 - 1\n')
    assert run('tinitial', path, '--w=-1,-1/2', '--denom', '0')[0] == EXIT_USAGE


@pytest.mark.parametrize('argv', [
    ('std', SESSION, '--ideal', 'Q'),
    ('std', SESSION, '--order', 'ws(1, 0, 0) lex'),
    ('std', os.path.join(FIXTURES, 'missing.json')),
    ('member', SESSION, '--poly', 'x + w'),
])
def test_usage_errors(run, argv):
    code, out, err = run(*argv)
    assert code == EXIT_USAGE
    assert out == ''
    assert 'error: ' in err


def test_bad_session_file_reports_its_position(run, tmp_path):
    path = tmp_path / 'broken.json'
    path.write_text('{\n  "ring": }\n', encoding='utf-8')
    code, _, err = run('std', str(path))
    assert code == EXIT_USAGE
    assert f'{path}:2:' in err


def test_argparse_usage_exit_code():
    with pytest.raises(SystemExit) as info:
        main(['std'])
    assert info.value.code == EXIT_USAGE


# Golden outputs, each run twice

LINE = os.path.join(FIXTURES, 'line.json')
PLANE = os.path.join(FIXTURES, 'plane.json')
MODULE = os.path.join(FIXTURES, 'module.json')


@pytest.mark.parametrize('golden, argv', [
    ('std_I', ('std', SESSION)),
    ('check_I', ('check', SESSION)),
    ('nf_U', ('nf', LINE, '--ideal', 'U', '--poly', 't')),
    ('nf_weak_M', ('nf', MODULE, '--poly', 'y*gen(1) + x*gen(2)')),
    ('nf_strong_M', ('nf', MODULE, '--poly', 'y*gen(1) + x*gen(2)', '--mode', 'strong')),
    ('hddwr_folded_H', ('hddwr', PLANE, '--ideal', 'H', '--poly', 'x^2')),
    ('hddwr_truncated_M', ('hddwr', LINE, '--ideal', 'M', '--poly', 'x', '--prec', '2')),
    ('member_M', ('member', LINE, '--ideal', 'M', '--poly', 'x')),
    ('syz_S', ('syz', PLANE, '--ideal', 'S')),
    ('eliminate_P', ('eliminate', SESSION, '--ideal', 'P', '--vars', 'x')),
    ('intersect_A_B', ('intersect', LINE, '--ideal', 'A', '--other', 'B')),
    ('quotient_T', ('quotient', LINE, '--ideal', 'T', '--by', 'x')),
    ('saturate_T', ('saturate', LINE, '--ideal', 'T', '--by', 't')),
    ('tinitial_P', ('tinitial', SESSION, '--ideal', 'P', '--w=-1,0,0')),
    ('tinitial_W', ('tinitial', LINE, '--ideal', 'W', '--w=-1,-1/2', '--denom', '3')),
])
def test_subcommands_match_golden_output_on_repeat(run, golden, argv):
    first = run(*argv)
    second = run(*argv)
    assert first == second
    with open(os.path.join(FIXTURES, f'{golden}.golden'), encoding='utf-8') as handle:
        assert first[1] == handle.read()


# Zero ideals and module sessions

def test_zero_ideal_commands_print_zero(run, session_file):
    path = session_file({'I': [], 'A': ['x']})
    assert run('eliminate', path, '--vars', 'x')[:2] == (EXIT_OK, '0\n')
    assert run('intersect', path, '--other', 'A')[:2] == (EXIT_OK, '0\n')
    assert run('intersect', path, '--ideal', 'A', '--other', 'I')[:2] == (EXIT_OK, '0\n')
    assert run('quotient', path, '--by', 'x')[:2] == (EXIT_OK, '0\n')
    assert run('saturate', path, '--by', 't')[:2] == (EXIT_OK, '0\n')


def _module_session(tmp_path, order):
    path = tmp_path / 'module.json'
    path.write_text(json.dumps({
        'ring': {'field': 'QQ', 'tvars': ['t'], 'xvars': ['x', 'y'], 'rank': 2, 'denom': 1},
        'order': order,
        'ideals': {'M': ['x*gen(1)', 'y*gen(2)']},
    }), encoding='utf-8')
    return str(path)


def test_eliminate_in_a_module_session(run, tmp_path):
    path = _module_session(tmp_path, 'module(lex, c)')
    assert run('eliminate', path, '--vars', 'x')[:2] == (EXIT_OK, 'y*gen(2)\n')


def test_eliminate_rejects_component_first_module_orderings(run, tmp_path):
    code, out, err = run('eliminate', _module_session(tmp_path, 'module(c, lex)'), '--vars', 'x')
    assert code == EXIT_USAGE
    assert out == ''
    assert 'component-first' in err
