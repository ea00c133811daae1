import json

from pytest import raises

from ..documents import (
    dfa_to_json, dump_dfa, dump_spec, load_dfa, load_spec, parse_dfa, parse_spec, spec_to_json,
)
from ..errors import SpecFormatError, StructureError
from ..model import Direction, Kind, TransitionKey
from ..zoo import exhibits, get_entry, recognizers
from .models import Z, ends_in_one_dfa, ends_in_one_dfa_document, two_state_document


def test_should_parse_interchange_document():
    spec = parse_spec(two_state_document())
    assert spec.kind is Kind.REVERSIBLE
    assert spec.states == ('q0', 'q1')
    assert spec.alphabets.sigma == ('a',)
    assert spec.accepting == {'q1'}
    assert spec.direction_of('q1') is Direction.STAY
    assert len(spec.delta) == 12
    assert spec.delta[TransitionKey('q0', '$', Z, 'q1', Direction.STAY, (Z,))].value == 1


def test_should_dump_follow_document_field_order():
    text = dump_spec(parse_spec(two_state_document()))
    assert list(json.loads(text)) == [
        'kind', 'states', 'input_alphabet', 'stack_alphabet', 'initial',
        'accepting', 'rejecting', 'direction', 'transitions',
    ]
    transition = json.loads(text)['transitions'][0]
    assert list(transition) == ['from', 'input', 'stack_top', 'to', 'dir', 'push', 'amp']


def test_should_zoo_automata_round_trip():
    for entry in recognizers() + exhibits():
        text = dump_spec(entry.spec)
        assert dump_spec(parse_spec(json.loads(text))) == text, entry.name


def test_should_keep_amplitude_literals():
    document = two_state_document()
    document['kind'] = 'simplified'
    document['transitions'][0]['amp'] = 'sqrt(1/1)'
    document['transitions'][1]['amp'] = 1
    amps = {
        (item['from'], item['input'], item['stack_top']): item['amp']
        for item in spec_to_json(parse_spec(document))['transitions']
    }
    assert amps[('q0', '#', Z)] == 'sqrt(1/1)'
    assert amps[('q0', 'a', Z)] == '1'


def test_should_general_document_omit_direction():
    payload = spec_to_json(get_entry('nonunitary').spec)
    assert 'direction' not in payload
    assert payload['kind'] == 'general'


def test_should_push_words_tokenize_longest_symbol():
    payload = spec_to_json(get_entry('l1').spec)
    pushes = {transition['push'] for transition in payload['transitions']}
    assert 'Z00' in pushes
    spec = parse_spec(payload)
    assert TransitionKey('q0', '0', Z, 'q0', Direction.ADVANCE, (Z, '0')) in spec.delta


def test_should_unknown_field_raise_exception():
    document = two_state_document()
    document['comment'] = 'not part of the format'
    with raises(SpecFormatError) as excinfo:
        parse_spec(document)
    assert 'comment' in str(excinfo.value)


def test_should_unknown_transition_field_raise_exception():
    document = two_state_document()
    document['transitions'][0]['weight'] = 1
    with raises(SpecFormatError):
        parse_spec(document)


def test_should_invalid_direction_raise_exception():
    document = two_state_document()
    document['transitions'][0]['dir'] = 'left'
    with raises(SpecFormatError):
        parse_spec(document)


def test_should_invalid_kind_raise_exception():
    document = two_state_document()
    document['kind'] = 'quantum'
    with raises(SpecFormatError):
        parse_spec(document)


def test_should_missing_required_field_raise_exception():
    document = two_state_document()
    del document['initial']
    with raises(SpecFormatError):
        parse_spec(document)


def test_should_non_object_raise_exception():
    with raises(SpecFormatError):
        parse_spec([1, 2, 3])


def test_should_simplified_without_direction_raise_exception():
    document = two_state_document()
    del document['direction']
    with raises(SpecFormatError):
        parse_spec(document)


def test_should_duplicate_transition_raise_exception():
    document = two_state_document()
    document['transitions'].append(dict(document['transitions'][0]))
    with raises(SpecFormatError):
        parse_spec(document)


def test_should_untokenizable_push_raise_exception():
    document = two_state_document()
    document['transitions'][0]['push'] = 'Z0x'
    with raises(SpecFormatError):
        parse_spec(document)


def test_should_structure_violations_raise_when_strict():
    document = two_state_document()
    document['transitions'][0]['push'] = ''
    with raises(StructureError) as excinfo:
        parse_spec(document)
    assert excinfo.value.violations[0].restriction == 'restriction-3'
    spec = parse_spec(document, strict=False)
    assert len(spec.delta) == 12


def test_should_load_and_dump_files(tmp_path):
    path = tmp_path / 'automaton.json'
    path.write_text(dump_spec(get_entry('l2').spec), encoding='utf-8')
    assert dump_spec(load_spec(str(path))) == path.read_text(encoding='utf-8')


def test_should_invalid_json_raise_exception(tmp_path):
    path = tmp_path / 'broken.json'
    path.write_text('{"kind": ', encoding='utf-8')
    with raises(SpecFormatError):
        load_spec(str(path))


def test_should_parse_dfa_document():
    dfa = parse_dfa(ends_in_one_dfa_document())
    assert dfa.states == ('q0', 'q1')
    assert dfa.finals == {'q1'}
    assert dfa.trans[('q0', '1')] == 'q1'
    assert dfa.missing_transitions() == []


def test_should_dfa_round_trip(tmp_path):
    assert dfa_to_json(ends_in_one_dfa()) == ends_in_one_dfa_document()
    path = tmp_path / 'dfa.json'
    path.write_text(dump_dfa(ends_in_one_dfa()), encoding='utf-8')
    assert dfa_to_json(load_dfa(str(path))) == ends_in_one_dfa_document()


def test_should_duplicate_dfa_transition_raise_exception():
    document = ends_in_one_dfa_document()
    document['transitions'].append({'from': 'q0', 'input': '0', 'to': 'q1'})
    with raises(SpecFormatError):
        parse_dfa(document)


def test_should_partial_dfa_parse():
    document = ends_in_one_dfa_document()
    document['transitions'].pop()
    assert parse_dfa(document).missing_transitions() == [('q1', '1')]
