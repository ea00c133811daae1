import json

from graphene import List, String
from graphene.types.generic import GenericScalar
from mongoengine.fields import StringField
from pytest import raises

from ..documents import QpaDocument, TransitionDocument
from ..evolve import recognize, trace
from ..schema import convert_document_field, document_type, execute, render, sdl
from ..wellformed import check_all
from ..zoo import get_entry, recognizers

DESCRIPTION_TEXT = 'Custom Help Text'


def test_should_none_raise_exception():
    with raises(Exception) as excinfo:
        convert_document_field(None)
    assert "Don't know how to convert" in str(excinfo.value)


def test_should_string_convert_string():
    graphene_type = convert_document_field(StringField(description=DESCRIPTION_TEXT, required=True))
    assert isinstance(graphene_type, String)
    assert graphene_type.Field().description == DESCRIPTION_TEXT


def test_should_document_fields_convert_in_declaration_order():
    object_type = document_type(QpaDocument)
    fields = object_type._meta.fields
    assert list(fields) == list(QpaDocument._fields_ordered)
    assert fields['direction'].type is GenericScalar
    assert isinstance(fields['states'].type, List)
    assert fields['transitions'].type.of_type is document_type(TransitionDocument)
    assert document_type(QpaDocument) is object_type


def test_should_schema_publish_every_output():
    text = sdl()
    for name in ('check', 'run', 'batch', 'matrix', 'compile', 'zoo'):
        assert f'{name}:' in text


def test_should_execute_check_query():
    summary = check_all(get_entry('nonunitary').spec, cap=2)
    data = execute('check', {'file': 'zoo:nonunitary', 'structure_violations': [], 'summary': summary})
    results = {result['condition_id']: result for result in data['check']['summary']['results']}
    assert results['RVN']['passed'] is False
    assert len(results['RVN']['reports']) == 2
    assert results['RVN']['violations'] > 2
    assert results['LPC']['reports'] == []


def test_should_execute_run_query():
    spec = get_entry('l2').spec
    outcome = recognize(spec, 'ab')
    row = dict(outcome.__dict__, decision='accepted')
    data = execute('run', {'result': row, 'trace': trace(spec, 'ab')})
    assert data['run']['result']['word'] == 'ab'
    assert data['run']['trace'][-1]['accepted'] == 1.0


def test_should_render_zoo_entries_as_json():
    payload = json.loads(render('zoo', recognizers()))
    assert [entry['name'] for entry in payload['zoo']] == ['l1', 'l2', 'l3', 'l5']
    assert payload['zoo'][3]['claimed_probability'] == 4 / 7


def test_should_mismatched_payload_raise_exception():
    with raises(Exception):
        execute('run', {'result': {'word': None}, 'trace': None})
