import csv
import io
import json

from pytest import fixture, raises

from ..cli import EXIT_ERROR, EXIT_OK, EXIT_REJECTED, EXIT_VIOLATIONS, main
from ..documents import dump_dfa, load_spec
from ..model import Kind
from ..wellformed import check_all
from .models import ends_in_one_dfa, partial_dfa


@fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ('QPA_TOLERANCE', 'QPA_OUTPUT', 'QPA_WORKERS'):
        monkeypatch.delenv(name, raising=False)


def run_json(capsys, *argv):
    status = main(list(argv) + ['--json'])
    return status, json.loads(capsys.readouterr().out)


def test_should_check_well_formed_zoo_entry(capsys):
    assert main(['check', 'zoo:l2']) == EXIT_OK
    assert 'well-formed' in capsys.readouterr().out


def test_should_check_report_violations(capsys):
    assert main(['check', 'zoo:nonunitary']) == EXIT_VIOLATIONS
    out = capsys.readouterr().out
    assert 'RVN' in out
    assert 'NOT well-formed' in out


def test_should_check_emit_json(capsys):
    status, payload = run_json(capsys, 'check', 'zoo:l2-printed')
    assert status == EXIT_VIOLATIONS
    summary = payload['check']['summary']
    assert summary['suite'] == 'simplified'
    assert not summary['passed']
    failing = [result for result in summary['results'] if not result['passed']]
    assert failing[0]['reports'][0]['witness']


def test_should_check_simplified_suite_need_directions(capsys):
    assert main(['check', 'zoo:nonunitary', '--simplified']) == EXIT_ERROR
    assert 'direction' in capsys.readouterr().err


def test_should_check_structure_error(tmp_path, capsys):
    path = tmp_path / 'broken.json'
    document = json.loads(_export(tmp_path, capsys, 'l2'))
    next(item for item in document['transitions'] if item['stack_top'] == 'Z0')['push'] = ''
    path.write_text(json.dumps(document), encoding='utf-8')
    assert main(['check', str(path)]) == EXIT_ERROR
    assert 'structural violation' in capsys.readouterr().out


def test_should_missing_file_be_an_error(tmp_path, capsys):
    assert main(['check', str(tmp_path / 'missing.json')]) == EXIT_ERROR
    assert 'qpa: error' in capsys.readouterr().err


def test_should_run_accept_and_reject(capsys):
    assert main(['run', 'zoo:l2', 'ab']) == EXIT_OK
    assert 'accepted' in capsys.readouterr().out
    assert main(['run', 'zoo:l2', 'aab']) == EXIT_REJECTED
    assert main(['run', 'zoo:l2']) == EXIT_OK


def test_should_run_apply_threshold(capsys):
    assert main(['run', 'zoo:l3', 'abc']) == EXIT_OK
    assert main(['run', 'zoo:l3', 'abc', '--threshold', '0.9']) == EXIT_VIOLATIONS
    assert main(['run', 'zoo:l3', 'ab']) == EXIT_REJECTED


def test_should_run_emit_trace_as_json(capsys):
    status, payload = run_json(capsys, 'run', 'zoo:l1', '1', '--trace')
    assert status == EXIT_OK
    result = payload['run']['result']
    assert result['decision'] == 'accepted'
    assert result['steps'] == 3
    steps = payload['run']['trace']
    assert [step['step'] for step in steps] == [1, 2, 3]
    assert steps[0]['configurations'][0]['configuration'] == {'state': 'q0', 'head': 1, 'stack': ['Z0']}


def test_should_run_refuse_non_well_formed(capsys):
    assert main(['run', 'zoo:nonunitary', '1']) == EXIT_ERROR
    assert 'not well-formed' in capsys.readouterr().err
    assert main(['run', 'zoo:nonunitary', '1', '--force']) == EXIT_ERROR
    assert 'right end-marker' in capsys.readouterr().err


def test_should_run_reject_illegal_word(capsys):
    assert main(['run', 'zoo:l2', 'abc']) == EXIT_ERROR


def test_should_run_respect_step_limit(capsys):
    status, payload = run_json(capsys, 'run', 'zoo:l2', 'ab', '--max-steps', '2')
    assert status == EXIT_VIOLATIONS
    assert payload['run']['result']['halted'] is False


def test_should_batch_write_csv(tmp_path, capsys):
    words = tmp_path / 'words.txt'
    words.write_text('ab\naab\n\nba\n', encoding='utf-8')
    out = tmp_path / 'out.csv'
    assert main(['batch', 'zoo:l2', str(words), '--csv-out', str(out), '--workers', '2']) == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out.read_text(encoding='utf-8'))))
    assert [row['word'] for row in rows] == ['ab', 'aab', '', 'ba']
    assert [row['decision'] for row in rows] == ['accepted', 'rejected', 'accepted', 'accepted']
    assert list(rows[0]) == ['word', 'p_accept', 'p_reject', 'p_nonhalt', 'steps', 'halted', 'decision']
    assert rows[1]['halted'] == 'true'


def test_should_batch_print_csv_mode(tmp_path, capsys, monkeypatch):
    words = tmp_path / 'words.txt'
    words.write_text('1\n0\n', encoding='utf-8')
    monkeypatch.setenv('QPA_OUTPUT', 'csv')
    assert main(['batch', 'zoo:l1', str(words)]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == 'word,p_accept,p_reject,p_nonhalt,steps,halted,decision'
    assert lines[1].endswith(',accepted')
    assert lines[2].endswith(',rejected')


def test_should_batch_emit_json(tmp_path, capsys):
    words = tmp_path / 'words.txt'
    words.write_text('abc\naab\n', encoding='utf-8')
    status, payload = run_json(capsys, 'batch', 'zoo:l5', str(words))
    assert status == EXIT_OK
    rows = payload['batch']['rows']
    assert [row['decision'] for row in rows] == ['rejected', 'rejected']
    assert abs(rows[0]['p_accept'] - 3 / 7) < 1e-9


def test_should_compile_dfa(tmp_path, capsys):
    source = tmp_path / 'dfa.json'
    source.write_text(dump_dfa(ends_in_one_dfa()), encoding='utf-8')
    target = tmp_path / 'rpa.json'
    assert main(['compile-dfa', str(source), str(target)]) == EXIT_OK
    spec = load_spec(str(target))
    assert spec.kind is Kind.REVERSIBLE
    assert check_all(spec).passed
    capsys.readouterr()
    assert main(['run', str(target), '0101']) == EXIT_OK
    assert main(['run', str(target), '10']) == EXIT_REJECTED


def test_should_compile_partial_dfa_fail(tmp_path, capsys):
    source = tmp_path / 'dfa.json'
    source.write_text(dump_dfa(partial_dfa()), encoding='utf-8')
    target = tmp_path / 'rpa.json'
    assert main(['compile-dfa', str(source), str(target)]) == EXIT_ERROR
    assert not target.exists()


def test_should_matrix_verify_window(capsys):
    assert main(['matrix', 'zoo:l2', '--word', 'ab', '--radius', '3', '--verify']) == EXIT_OK
    assert 'unitary on interior indices' in capsys.readouterr().out
    assert main(['matrix', 'zoo:nonunitary', '--word', '1', '--radius', '2', '--verify']) == EXIT_VIOLATIONS


def test_should_matrix_emit_json_dump(capsys):
    status, payload = run_json(capsys, 'matrix', 'zoo:nonunitary', '--word', '1', '--radius', '2',
                               '--verify', '--dump')
    assert status == EXIT_VIOLATIONS
    matrix = payload['matrix']
    assert matrix['window_size'] == 6
    assert matrix['unitarity']['row_deviation'] == 1.0
    assert matrix['dump']['dim'] == 6
    assert len(matrix['dump']['triplets']) == 3


def test_should_matrix_write_dump_file(tmp_path, capsys):
    target = tmp_path / 'matrix.json'
    assert main(['matrix', 'zoo:l1', '--word', '1', '--radius', '1', '--dump', str(target)]) == EXIT_OK
    dump = json.loads(target.read_text(encoding='utf-8'))
    assert dump['dim'] > 0


def test_should_matrix_cap_be_an_error(capsys):
    assert main(['matrix', 'zoo:nonunitary', '--word', '111111', '--radius', '6', '--cap', '20']) == EXIT_ERROR


def test_should_zoo_list(capsys):
    assert main(['zoo', 'list']) == EXIT_OK
    out = capsys.readouterr().out
    assert 'recognizers:' in out
    assert 'l2-printed' in out


def test_should_zoo_list_json(capsys):
    status, payload = run_json(capsys, 'zoo', 'list')
    assert status == EXIT_OK
    entries = {entry['name']: entry for entry in payload['zoo']}
    assert entries['l5']['kind'] == 'recognizer'
    assert entries['nonunitary']['kind'] == 'exhibit'
    assert entries['l2']['automaton']['initial'] == 'q0'
    assert entries['l3']['states'] == len(entries['l3']['automaton']['states'])


def _export(tmp_path, capsys, name):
    target = tmp_path / f'{name}.json'
    assert main(['zoo', 'export', name, '--out', str(target)]) == EXIT_OK
    capsys.readouterr()
    return target.read_text(encoding='utf-8')


def test_should_zoo_export_round_trip(tmp_path, capsys):
    _export(tmp_path, capsys, 'l3')
    assert main(['check', str(tmp_path / 'l3.json')]) == EXIT_OK


def test_should_zoo_export_unknown_name_fail(capsys):
    assert main(['zoo', 'export', 'l4']) == EXIT_ERROR


def test_should_print_schema(capsys):
    assert main(['schema']) == EXIT_OK
    out = capsys.readouterr().out
    assert 'type Query' in out
    assert 'p_nonhalt' in out


def test_should_tolerance_come_from_environment(monkeypatch, capsys):
    monkeypatch.setenv('QPA_TOLERANCE', '2')
    assert main(['check', 'zoo:nonunitary']) == EXIT_OK
    monkeypatch.setenv('QPA_TOLERANCE', 'loose')
    assert main(['check', 'zoo:l2']) == EXIT_ERROR


def test_should_bad_threshold_flag_exit(capsys):
    assert main(['run', 'zoo:l2', 'ab', '--threshold', '0.2']) == EXIT_ERROR


def test_should_require_subcommand():
    with raises(SystemExit):
        main([])
