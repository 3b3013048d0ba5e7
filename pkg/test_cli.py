import json
from pathlib import Path

import jsonschema
import pytest

from zappatic.cli import main
from zappatic.models.degeneration import Degeneration
from zappatic.models.presentation import Presentation, Word
from zappatic.utils.relators import relations_from_lines

ROOT = Path(__file__).parent


def _schema(name):
    return json.loads((ROOT / 'schemas' / name).read_text())


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for key in ('ZV_N', 'ZV_MODE', 'ZV_MAX_COSETS', 'ZV_STRATEGY', 'ZV_OUTPUT', 'ZV_OUT',
                'ZV_JOBS', 'ZV_EMIT', 'ZV_COMMUTATORS', 'ZV_TIMING', 'ZV_LOG_DIR'):
        monkeypatch.delenv(key, raising=False)


def test_gen_degeneration(tmp_path):
    assert main(['gen', '--n', '3', '--emit', 'degeneration', '--out', str(tmp_path)]) == 0
    d = Degeneration.from_json((tmp_path / 'degeneration_n3.json').read_text())
    assert len(d.lines) == 10
    assert len(d.planes) == 8


def test_gen_presentation_matches_golden(tmp_path):
    assert main(['gen', '--n', '3', '--emit', 'presentation', '--out', str(tmp_path)]) == 0
    presentation = Presentation.from_text((tmp_path / 'presentation_n3_simplified.txt').read_text())
    golden = relations_from_lines((ROOT / 'fixtures' / 'r4_union_n3.txt').read_text().splitlines())
    expected = {rel.relator(True).normal_form(True) for rel in golden}
    expected.discard(Word())
    assert set(presentation.normalized_relators()) == expected


def test_gen_is_deterministic(capsys):
    assert main(['gen', '--n', '3']) == 0
    first = capsys.readouterr().out
    assert main(['gen', '--n', '3']) == 0
    assert capsys.readouterr().out == first
    assert 'G := F / [' in first


@pytest.mark.parametrize('argv', [
    ['gen', '--n', '2'],
    ['invariants', '--n', '1'],
    ['verify', '--n', '5', '--mode', 'raw'],
    ['verify', '--n', 'three'],
    ['verify', '--n', '3', '--strategy', 'random'],
    ['verify', '--frobnicate'],
    [],
])
def test_input_errors_exit_3(argv):
    assert main(argv) == 3


def test_invariants_text(capsys):
    assert main(['invariants', '--n', '3']) == 0
    assert '-174720' in capsys.readouterr().out


def test_invariants_json_range(capsys):
    assert main(['invariants', '--n', '3..8', '--json']) == 0
    records = json.loads(capsys.readouterr().out)
    jsonschema.validate(records, _schema('invariants_report.schema.json'))
    assert [r['n'] for r in records] == ['3', '4', '5', '6', '7', '8']
    assert all(r['tau_negative'] for r in records)


def test_verify_small_bound(capsys):
    assert main(['verify', '--n', '6', '--max-cosets', '2', '--json', '--no-timing']) == 2
    records = json.loads(capsys.readouterr().out)
    jsonschema.validate(records, _schema('verify_report.schema.json'))
    assert records[0]['verdict'] == 'inconclusive'
    assert records[0]['order'] is None
    assert 'wall_time_ms' not in records[0]


def test_verify_output_is_byte_identical(tmp_path):
    first, second = tmp_path / 'a.json', tmp_path / 'b.json'
    argv = ['verify', '--n', '6', '--max-cosets', '2', '--json', '--no-timing']
    main(argv + ['--out', str(first)])
    main(argv + ['--out', str(second)])
    assert first.read_bytes() == second.read_bytes()


def test_verify_jobs_keep_order(capsys):
    assert main(['verify', '--n', '6..7', '--max-cosets', '2', '--jobs', '2', '--json']) == 2
    records = json.loads(capsys.readouterr().out)
    assert [r['n'] for r in records] == [6, 7]


def test_env_overrides(monkeypatch, capsys):
    monkeypatch.setenv('ZV_N', '6')
    monkeypatch.setenv('ZV_MAX_COSETS', '2')
    monkeypatch.setenv('ZV_TIMING', 'false')
    assert main(['verify', '--json']) == 2
    assert json.loads(capsys.readouterr().out)[0]['n'] == 6


def test_report_merges_records(capsys):
    assert main(['report', '--n', '6', '--max-cosets', '2', '--json', '--no-timing']) == 2
    record = json.loads(capsys.readouterr().out)[0]
    assert record['n'] == '6'
    assert record['verdict'] == 'inconclusive'
    assert record['tau_negative'] is True


def test_log_dir_history(tmp_path):
    log_dir = tmp_path / 'logs'
    main(['verify', '--n', '6', '--max-cosets', '2', '--log-dir', str(log_dir)])
    history = json.loads((log_dir / 'verdict_history.json').read_text())
    assert history[-1]['verdict'] == 'inconclusive'
    main(['invariants', '--n', '0', '--log-dir', str(log_dir)])
    assert 'ConfigError' in (log_dir / 'errors.log').read_text()


@pytest.mark.slow
def test_verify_n3_exit_0(capsys):
    assert main(['verify', '--n', '3', '--json']) == 0
    record = json.loads(capsys.readouterr().out)[0]
    assert record['order'] == 40320
    assert record['image_full_symmetric'] is True
