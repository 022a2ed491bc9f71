"""Tests for the command line, state files and reports."""
import csv
import io
import json
import math

import numpy as np
import pytest

from main import run
from src.cli import dumps_state, emit, load_meta, load_state, loads_state, run_suite, save_state
from src.config import DEFAULT_TOLERANCES, get_config, reset_config
from src.core import DensityMatrix, PureState, hs_density
from src.errors import InvariantViolation, ParseError
from src.storage import Database


def invoke(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def invoke_json(*argv):
    code, text = invoke(*argv)
    assert code == 0, text
    return json.loads(text)


# --- state files ---

def test_state_file_round_trip_is_exact(tmp_path):
    rho = hs_density((2, 3), 3, seed=1)
    path = save_state(rho, tmp_path / 'rho.json', {'generator': 'test'})
    loaded = load_state(path)
    np.testing.assert_array_equal(loaded.matrix, rho.matrix)
    assert loaded.dims == (2, 3)
    assert load_meta(path) == {'generator': 'test'}


def test_state_file_writes_one_pair_per_line():
    text = dumps_state(PureState(np.array([1, 0, 0, 1]) / np.sqrt(2), (2, 2)))
    lines = [line.strip() for line in text.splitlines() if line.strip().startswith('[')]
    assert len(lines) == 4
    assert lines[1] == '[0.0, 0.0],'


def test_parse_error_reports_line():
    text = '{\n  "kind": "mixed",\n  "dims": [2],\n  "data": [[1, 0], [0, 0]]\n}\n'
    with pytest.raises(ParseError) as excinfo:
        loads_state(text, 'state.json')
    assert excinfo.value.line == 2
    assert 'state.json:2' in str(excinfo.value)


def test_parse_error_for_bad_json():
    with pytest.raises(ParseError) as excinfo:
        loads_state('{\n  "kind": "pure",\n  "dims": [2]\n  "data": []\n}')
    assert excinfo.value.line == 4


def test_parse_error_for_wrong_entry_count():
    with pytest.raises(ParseError):
        loads_state('{"kind": "pure", "dims": [2, 2], "data": [[1, 0]]}')


@pytest.mark.parametrize('doc, invariant', [
    ({'kind': 'pure', 'dims': [2], 'data': [[1, 0], [1, 0]]}, 'norm'),
    ({'kind': 'density', 'dims': [2], 'data': [[0.5, 0], [0.2, 0], [0, 0], [0.5, 0]]}, 'hermitian'),
    ({'kind': 'density', 'dims': [2], 'data': [[0.7, 0], [0, 0], [0, 0], [0.7, 0]]}, 'trace'),
    ({'kind': 'density', 'dims': [2], 'data': [[1.5, 0], [0, 0], [0, 0], [-0.5, 0]]}, 'psd'),
])
def test_invariant_violations(doc, invariant):
    with pytest.raises(InvariantViolation) as excinfo:
        loads_state(json.dumps(doc))
    assert excinfo.value.invariant == invariant


# --- reports ---

def test_json_report_encodes_infinity():
    out = io.StringIO()
    emit('monogamy', [{'gamma': math.inf, 'x1': 1.0}], 'json', out)
    payload = json.loads(out.getvalue())
    assert payload['report'] == 'monogamy'
    assert payload['results'][0]['gamma'] == 'inf'


def test_csv_report_uses_fixed_columns():
    out = io.StringIO()
    emit('gen', [{'generator': 'ghz', 'path': 'x.json', 'kind': 'pure', 'dims': [2, 2, 2], 'extra': 1}], 'csv', out)
    rows = list(csv.reader(io.StringIO(out.getvalue())))
    assert rows[0] == ['generator', 'path', 'kind', 'dims']
    assert rows[1] == ['ghz', 'x.json', 'pure', '2,2,2']


# --- commands ---

def test_gen_and_measure_ghz(tmp_path):
    path = tmp_path / 'ghz.json'
    gen = invoke_json('gen', 'ghz', '--out', str(path))
    assert gen['results'][0]['kind'] == 'pure'
    assert load_meta(path)['generator'] == 'ghz'

    report = invoke_json('measure', '--state', str(path), '--cut', '0|1,2', '--measure', 'concurrence', '--measure', 'entropy')
    values = {row['measure']: row['value'] for row in report['results']}
    assert values['concurrence'] == pytest.approx(1.0)
    assert values['entropy'] == pytest.approx(1.0)


def test_measure_two_qubit_density_adds_eof(tmp_path):
    path = tmp_path / 'rho.json'
    invoke_json('gen', 'random', '--kind', 'hs_density', '--dims', '2,2', '--rank', '2', '--seed', '4', '--out', str(path))
    report = invoke_json('measure', '--state', str(path), '--measure', 'concurrence')
    row = report['results'][0]
    assert row['kind'] == 'density'
    assert 0.0 <= row['eof'] <= 1.0


def test_measure_csv_output(tmp_path):
    path = tmp_path / 'bell.json'
    save_state(PureState(np.array([1, 0, 0, 1]) / np.sqrt(2), (2, 2)), path)
    code, text = invoke('measure', '--state', str(path), '--measure', 'tangle', '--output', 'csv')
    assert code == 0
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ['measure', 'cut', 'kind', 'value', 'eof']
    assert rows[1][0] == 'tangle' and float(rows[1][3]) == pytest.approx(1.0)


def test_roof_command(tmp_path):
    path = tmp_path / 'mix.json'
    save_state(DensityMatrix(np.diag([0.5, 0.0, 0.0, 0.5]), (2, 2)), path)
    report = invoke_json('roof', '--state', str(path), '--measure', 'concurrence', '--mode', 'max', '--restarts', '2')
    row = report['results'][0]
    assert row['mode'] == 'max'
    assert row['value'] == pytest.approx(1.0, abs=1e-6)
    assert row['reconstruction_error'] < 1e-9


def test_monogamy_command_on_w_state(tmp_path):
    path = tmp_path / 'w.json'
    invoke_json('gen', 'wclass', '--out', str(path))
    report = invoke_json('monogamy', '--state', str(path), '--measure', 'concurrence', '--alpha', '2')
    row = report['results'][0]
    assert row['gamma'] == pytest.approx(2.0, abs=1e-6)
    assert row['disentangling_satisfied'] is False
    assert row['deficit'] == pytest.approx(0.0, abs=1e-9)


def test_exponent_command_writes_maximizer(tmp_path):
    out = tmp_path / 'worst.json'
    report = invoke_json('exponent', '--dims', '2,2,2', '--samples', '3', '--seed', '1', '--out', str(out))
    assert report['results'][0]['worst_label'] == 'w'
    assert load_meta(out)['label'] == 'w'
    assert report['maximizer']['kind'] == 'pure'


def test_gen_gmono_and_markov(tmp_path):
    gmono = tmp_path / 'gmono.json'
    markov = tmp_path / 'markov.json'
    invoke_json('gen', 'gmono', '--d', '3', '--r', '2', '--seed', '5', '--out', str(gmono))
    invoke_json('gen', 'markov', '--blocks', '2', '--seed', '5', '--out', str(markov))
    assert load_state(gmono).dims == (3, 3)
    assert load_state(markov).dims == (2, 8, 2)
    assert load_meta(markov)['seed'] == '5'


def test_same_seed_gives_same_file(tmp_path):
    a, b = tmp_path / 'a.json', tmp_path / 'b.json'
    invoke_json('gen', 'random', '--dims', '2,3', '--seed', '11', '--out', str(a))
    invoke_json('gen', 'random', '--dims', '2,3', '--seed', '11', '--out', str(b))
    assert a.read_text() == b.read_text()


def test_verify_records_history(tmp_path):
    report = invoke_json('verify', 'zero-g-tail', '--scale', '0.05', '--seed', '3')
    assert report['passed'] is True
    assert {row['check'] for row in report['results']} == {'reconstruction', 'tail_determinants'}

    history = invoke_json('history')
    assert history['results'][0]['suite'] == 'zero-g-tail'
    assert history['results'][0]['status'] == 'passed'
    assert history['results'][0]['seed'] == 3


def test_history_clear_needs_confirmation(tmp_path):
    db = Database(tmp_path / 'verify_history.db')
    run_id = db.start_run('markov', 1)
    db.complete_run(run_id, 'passed', checks_total=5)

    code, text = invoke('history', '--clear')
    assert code == 0 and '--confirm' in text
    assert len(db.get_history()) == 1

    code, _ = invoke('history', '--clear', '--confirm')
    assert code == 0
    assert db.get_history() == []


def test_database_keeps_64_bit_seeds(tmp_path):
    db = Database(tmp_path / 'history.db')
    run_id = db.start_run('ckw', 2 ** 64 - 1)
    db.complete_run(run_id, 'failed', checks_total=6, checks_failed=1)
    assert db.get_last_passed('ckw') is None
    entry = db.get_history(suite='ckw')[0]
    assert entry['seed'] == 2 ** 64 - 1
    assert entry['checks_failed'] == 1
    assert entry['completed_at'] is not None


def test_run_suite_is_deterministic():
    first = run_suite('wclass', seed=9, scale=0.05)
    second = run_suite('wclass', seed=9, scale=0.05)
    assert first.passed
    assert first.rows() == second.rows()


@pytest.mark.parametrize('argv', [
    [],
    ['gen'],
    ['measure', '--bogus'],
    ['measure', '--state', 'missing.json', '--measure', 'concurrence'],
    ['verify', 'no-such-suite'],
])
def test_usage_errors_exit_2(argv):
    code, _ = invoke(*argv)
    assert code == 2


def test_bad_cut_and_bad_state_exit_2(tmp_path):
    path = tmp_path / 'ghz.json'
    invoke_json('gen', 'ghz', '--out', str(path))
    assert invoke('measure', '--state', str(path), '--cut', '0|0', '--measure', 'concurrence')[0] == 2
    assert invoke('measure', '--state', str(path), '--measure', 'concurrence')[0] == 2

    broken = tmp_path / 'broken.json'
    broken.write_text('{"kind": "pure", "dims": [2], "data": [[1, 0], [1, 0]]}')
    assert invoke('measure', '--state', str(broken), '--measure', 'concurrence')[0] == 2


def test_config_file_overrides(tmp_path):
    config = tmp_path / 'run.json'
    config.write_text(json.dumps({'output': 'csv', 'roof': {'restarts': 2}}))
    path = tmp_path / 'ghz.json'
    invoke_json('gen', 'ghz', '--out', str(path))
    code, text = invoke('measure', '--state', str(path), '--cut', '0', '--measure', 'concurrence', '--config', str(config))
    assert code == 0
    assert text.startswith('measure,cut,kind,value,eof')

    config.write_text(json.dumps({'samples': 0}))
    assert invoke('measure', '--state', str(path), '--cut', '0', '--measure', 'concurrence', '--config', str(config))[0] == 2
    config.write_text(json.dumps({'colour': 'blue'}))
    assert invoke('measure', '--state', str(path), '--cut', '0', '--measure', 'concurrence', '--config', str(config))[0] == 2


def test_threads_environment_override(tmp_path, monkeypatch):
    monkeypatch.setenv('QMONO_THREADS', 'many')
    path = tmp_path / 'ghz.json'
    assert invoke('gen', 'ghz', '--out', str(path))[0] == 2


def test_trace_tolerance_comes_from_environment(tmp_path, monkeypatch):
    path = tmp_path / 'short.json'
    save_state(DensityMatrix(np.diag([0.497, 0.0, 0.0, 0.5]), (2, 2), check=False), path)
    assert invoke('measure', '--state', str(path), '--measure', 'concurrence')[0] == 2

    monkeypatch.setenv('QMONO_TAU_TR', '1e-2')
    reset_config()
    report = invoke_json('measure', '--state', str(path), '--measure', 'concurrence')
    assert report['results'][0]['value'] == pytest.approx(0.0, abs=1e-9)
    roof = invoke_json('roof', '--state', str(path), '--measure', 'concurrence', '--restarts', '1')
    assert roof['results'][0]['value'] == pytest.approx(0.0, abs=1e-9)


def test_run_config_carries_environment_tolerances(monkeypatch):
    monkeypatch.setenv('QMONO_TAU_PSD', '1e-6')
    config = get_config()
    assert config.run_config().tolerances.psd == 1e-6
    assert config.run_config().tolerances.tr == DEFAULT_TOLERANCES.tr
