""" MongoEngine document schemas for the JSON interchange files, and the
load/dump functions that translate them to and from the automaton model.
The documents are never saved; MongoEngine is used for declaration and validation """

import json
import logging

from mongoengine import EmbeddedDocument, ValidationError
from mongoengine.fields import (
    DynamicField,
    EmbeddedDocumentListField,
    ListField,
    MapField,
    StringField,
)

from .converter import amplitude_to_literal, convert_amplitude
from .errors import SpecFormatError, StructureError
from .model import (
    Alphabets, Direction, DfaSpec, Kind, QpaSpec, TransitionKey,
    validate_structure,
)
from .utils import dumps, get_db_field_map, get_document_fields, render_word, tokenize_word

logger = logging.getLogger(__name__)

# pylint: disable=W0622

DIRECTIONS = tuple(direction.value for direction in Direction)
KINDS = tuple(kind.value for kind in Kind)


class TransitionDocument(EmbeddedDocument):

    source = StringField(db_field='from', required=True, description='Source state q1')
    input = StringField(required=True, description='Tape symbol under the head')
    stack_top = StringField(required=True, description='Popped stack symbol')
    to = StringField(required=True, description='Target state q')
    dir = StringField(required=True, choices=DIRECTIONS, description='Head direction')
    push = StringField(required=True, description='Push word, "" for the empty word')
    amp = DynamicField(required=True, description='Amplitude literal')


class QpaDocument(EmbeddedDocument):
    """ Interchange document of a quantum pushdown automaton """

    kind = StringField(required=True, choices=KINDS, description='general, simplified or reversible')
    states = ListField(StringField(), required=True, description='State names')
    input_alphabet = ListField(StringField(), description='Input symbols, one character each')
    stack_alphabet = ListField(StringField(), description='Stack symbols, Z0 excluded')
    initial = StringField(required=True, description='Initial state')
    accepting = ListField(StringField(), description='Accepting states')
    rejecting = ListField(StringField(), description='Rejecting states')
    direction = MapField(StringField(choices=DIRECTIONS), description='State -> stay|advance')
    transitions = EmbeddedDocumentListField(TransitionDocument, description='Nonzero transition amplitudes')


class DfaTransitionDocument(EmbeddedDocument):

    source = StringField(db_field='from', required=True)
    input = StringField(required=True)
    to = StringField(required=True)


class DfaDocument(EmbeddedDocument):
    """ Interchange document of a total deterministic finite automaton """

    states = ListField(StringField(), required=True, description='State names, in index order')
    alphabet = ListField(StringField(), required=True, description='Input symbols')
    initial = StringField(required=True)
    finals = ListField(StringField())
    transitions = EmbeddedDocumentListField(DfaTransitionDocument)


def document_from_json(document, data):
    """ Builds a document from parsed JSON, rejecting fields it does not declare """
    if not isinstance(data, dict):
        raise SpecFormatError(f'{document.__name__} expects a JSON object, received {type(data).__name__}')

    field_map = get_db_field_map(document)
    unknown = sorted(set(data) - set(field_map))
    if unknown:
        raise SpecFormatError(f'Unknown field(s) {unknown} in {document.__name__}')

    fields = get_document_fields(document)
    values = {}
    for db_name, value in data.items():
        name = field_map[db_name]
        field = fields[name]
        if isinstance(field, EmbeddedDocumentListField):
            if not isinstance(value, list):
                raise SpecFormatError(f'{db_name} must be a list')
            value = [document_from_json(field.field.document_type, item) for item in value]
        values[name] = value

    instance = document(**values)
    try:
        instance.validate()
    except ValidationError as error:
        raise SpecFormatError(f'Invalid {document.__name__}: {error}') from error
    return instance


def _to_spec(doc):
    kind = Kind(doc.kind)
    alphabets = Alphabets(sigma=tuple(doc.input_alphabet or ()), t=tuple(doc.stack_alphabet or ()))
    symbols = alphabets.delta_alpha

    if kind is not Kind.GENERAL and not doc.direction:
        raise SpecFormatError(f'A {kind.value} automaton requires the direction map')
    directions = None
    if doc.direction:
        directions = {state: Direction(value) for state, value in doc.direction.items()}

    delta = {}
    for item in doc.transitions or ():
        try:
            omega = tokenize_word(item.push, symbols)
        except ValueError as error:
            raise SpecFormatError(str(error)) from error
        key = TransitionKey(item.source, item.input, item.stack_top, item.to, Direction(item.dir), omega)
        if key in delta:
            raise SpecFormatError(f'Duplicate transition {key}')
        delta[key] = convert_amplitude(item.amp)

    return QpaSpec(
        alphabets=alphabets,
        states=tuple(doc.states),
        initial=doc.initial,
        accepting=frozenset(doc.accepting or ()),
        rejecting=frozenset(doc.rejecting or ()),
        delta=delta,
        kind=kind,
        directions=directions,
    )


def parse_spec(data, strict=True):
    """ Converts a parsed JSON object to a :QpaSpec:. With strict, structural
    violations raise :StructureError: """
    spec = _to_spec(document_from_json(QpaDocument, data))
    if strict:
        violations = validate_structure(spec)
        if violations:
            raise StructureError(violations)
    return spec


def load_spec(path, strict=True):
    logger.debug('loading automaton from %s', path)
    return parse_spec(_read_json(path), strict=strict)


def spec_to_document(spec):
    symbols = spec.alphabets.delta_alpha
    return QpaDocument(
        kind=spec.kind.value,
        states=list(spec.states),
        input_alphabet=list(spec.alphabets.sigma),
        stack_alphabet=list(spec.alphabets.t),
        initial=spec.initial,
        accepting=sorted(spec.accepting),
        rejecting=sorted(spec.rejecting),
        direction={state: spec.directions[state].value for state in spec.states if state in spec.directions}
        if spec.directions is not None else None,
        transitions=[
            TransitionDocument(
                source=key.q1, input=key.sigma, stack_top=key.tau, to=key.q,
                dir=key.d.value, push=render_word(key.omega, symbols), amp=amplitude_to_literal(amp),
            )
            for key, amp in spec.delta.items()
        ],
    )


def spec_to_json(spec):
    """ Interchange object of a spec, in the document's field order """
    return _document_to_json(spec_to_document(spec))


def dump_spec(spec):
    return dumps(spec_to_json(spec))


def _document_to_json(doc):
    payload = {}
    fields = get_document_fields(type(doc))
    for name in type(doc)._fields_ordered:
        field = fields[name]
        value = getattr(doc, name)
        if value is None:
            continue
        if isinstance(field, EmbeddedDocumentListField):
            value = [_document_to_json(item) for item in value]
        elif isinstance(field, ListField):
            value = list(value)
        elif isinstance(field, MapField):
            if not value:
                continue
            value = dict(value)
        payload[field.db_field] = value
    return payload


def parse_dfa(data):
    doc = document_from_json(DfaDocument, data)
    trans = {}
    for item in doc.transitions or ():
        if (item.source, item.input) in trans:
            raise SpecFormatError(f'Duplicate DFA transition from {item.source!r} on {item.input!r}')
        trans[(item.source, item.input)] = item.to
    return DfaSpec(
        states=tuple(doc.states),
        sigma=tuple(doc.alphabet),
        initial=doc.initial,
        finals=frozenset(doc.finals or ()),
        trans=trans,
    )


def load_dfa(path):
    return parse_dfa(_read_json(path))


def dfa_to_json(dfa):
    doc = DfaDocument(
        states=list(dfa.states),
        alphabet=list(dfa.sigma),
        initial=dfa.initial,
        finals=sorted(dfa.finals),
        transitions=[
            DfaTransitionDocument(source=state, input=symbol, to=dfa.trans[(state, symbol)])
            for state in dfa.states
            for symbol in dfa.sigma
            if (state, symbol) in dfa.trans
        ],
    )
    return _document_to_json(doc)


def dump_dfa(dfa):
    return dumps(dfa_to_json(dfa))


def _read_json(path):
    try:
        with open(path, encoding='utf-8') as handle:
            return json.load(handle)
    except json.JSONDecodeError as error:
        raise SpecFormatError(f'{path}: not valid JSON ({error})') from error
