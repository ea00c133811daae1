""" GraphQL schema of the JSON documents the command line prints.

Every JSON output is produced by executing one of the fixed queries below
against :schema: with the computed result as root value, so the printed
document always conforms to the published schema (``qpa schema``).
Object types for the interchange documents are derived from their
MongoEngine declarations.
"""

from functools import lru_cache

from graphene import Boolean, Field, Float, Int, List, ObjectType, Schema, String
from graphene.types.generic import GenericScalar
from mongoengine.fields import DynamicField, EmbeddedDocumentListField, ListField, MapField, StringField
from singledispatch import singledispatch

from .documents import QpaDocument, spec_to_document
from .registry import get_global_registry
from .utils import dumps, get_document_fields, get_field_description

# pylint: disable=W0613,C0103


def convert_document_field(field):
    """ Wrapper method for :convert_document_type: """
    return convert_document_type(field)


@singledispatch
def convert_document_type(field):
    """ Generic MongoEngine field to Graphene type converter """
    raise Exception(f"Don't know how to convert the MongoEngine field {field} ({type(field)})")


@convert_document_type.register(StringField)
@convert_document_type.register(DynamicField)
def convert_field_to_string(field):
    return String(description=get_field_description(field), required=field.required)


@convert_document_type.register(ListField)
def convert_field_to_list(field):
    return List(String, description=get_field_description(field))


@convert_document_type.register(MapField)
def convert_field_to_generic(field):
    return GenericScalar(description=get_field_description(field))


@convert_document_type.register(EmbeddedDocumentListField)
def convert_field_to_object_list(field):
    return List(document_type(field.field.document_type), description=get_field_description(field))


@lru_cache(maxsize=None)
def document_type(document):
    """ Graphene object type mirroring a MongoEngine document, one field per
    document field, in declaration order """
    fields = get_document_fields(document)
    attrs = {name: convert_document_field(fields[name]) for name in document._fields_ordered}
    attrs['__doc__'] = document.__doc__
    return type(f'{document.__name__}Type', (ObjectType,), attrs)


class ConditionReportType(ObjectType):
    condition_id = String(required=True)
    witness = List(String, description='Quantifier instantiation that violates the condition')
    residual = Float(required=True)


class ConditionResultType(ObjectType):
    condition_id = String(required=True)
    passed = Boolean(required=True)
    violations = Int(required=True, description='Violations found, including those beyond the report cap')
    worst_residual = Float(required=True)
    reports = List(ConditionReportType)


class ConditionSummaryType(ObjectType):
    suite = String(required=True, description='general or simplified')
    tolerance = Float(required=True)
    passed = Boolean(required=True)
    total_violations = Int(required=True)
    worst_residual = Float(required=True)
    results = List(ConditionResultType)


class StructureViolationType(ObjectType):
    transition = String()
    restriction = String(required=True)
    message = String(required=True)

    def resolve_transition(root, info):
        return str(root.key) if root.key is not None else None


class CheckOutputType(ObjectType):
    file = String()
    structure_violations = List(StructureViolationType)
    summary = Field(ConditionSummaryType)


class RecognitionType(ObjectType):
    word = String(required=True)
    p_accept = Float(required=True)
    p_reject = Float(required=True)
    p_nonhalt = Float(required=True)
    steps = Int(required=True)
    halted = Boolean(required=True)
    decision = String(description='accepted, rejected or inconclusive')


class ConfigurationType(ObjectType):
    state = String(required=True)
    head = Int(required=True)
    stack = List(String)


class AmplitudeEntryType(ObjectType):
    configuration = Field(ConfigurationType)
    re = Float(required=True)
    im = Float(required=True)

    def resolve_configuration(root, info):
        return root[0]

    def resolve_re(root, info):
        return root[1].real

    def resolve_im(root, info):
        return root[1].imag


class TraceStepType(ObjectType):
    step = Int(required=True)
    accept_increment = Float(required=True)
    reject_increment = Float(required=True)
    accepted = Float(required=True)
    rejected = Float(required=True)
    residual = Float(required=True, description='Squared norm of the non-halting part')
    configurations = List(AmplitudeEntryType, description='Superposition before the observation')


class RunOutputType(ObjectType):
    result = Field(RecognitionType)
    trace = List(TraceStepType)


class BatchOutputType(ObjectType):
    rows = List(RecognitionType)


class UnitarityReportType(ObjectType):
    column_deviation = Float(required=True)
    row_deviation = Float(required=True)
    tolerance = Float(required=True)
    interior_columns = Int(required=True)
    interior_rows = Int(required=True)
    passed = Boolean(required=True)


class MatrixDumpType(ObjectType):
    dim = Int(required=True)
    triplets = GenericScalar(description='[row, column, re, im] for every nonzero entry')


class MatrixOutputType(ObjectType):
    word = String(required=True)
    radius = Int(required=True)
    seeds = String(required=True)
    window_size = Int(required=True)
    unitarity = Field(UnitarityReportType)
    dump = Field(MatrixDumpType)


class CompileOutputType(ObjectType):
    output = String()
    states = Int(required=True)
    transitions = Int(required=True)
    summary = Field(ConditionSummaryType)


class ZooEntryType(ObjectType):
    name = String(required=True)
    kind = String(required=True, description='recognizer or exhibit')
    states = Int(required=True)
    claimed_probability = Float()
    description = String()
    automaton = Field(document_type(QpaDocument))

    def resolve_kind(root, info):
        return get_global_registry().kind_of(root.name)

    def resolve_states(root, info):
        return len(root.spec.states)

    def resolve_automaton(root, info):
        return spec_to_document(root.spec)


class Query(ObjectType):
    check = Field(CheckOutputType)
    run = Field(RunOutputType)
    batch = Field(BatchOutputType)
    matrix = Field(MatrixOutputType)
    compile = Field(CompileOutputType)
    zoo = List(ZooEntryType)


schema = Schema(query=Query, auto_camelcase=False)

_SUMMARY = '''
fragment Summary on ConditionSummaryType {
  suite tolerance passed total_violations worst_residual
  results { condition_id passed violations worst_residual reports { condition_id witness residual } }
}
'''

_RECOGNITION = '''
fragment Recognition on RecognitionType { word p_accept p_reject p_nonhalt steps halted decision }
'''

QUERIES = {
    'check': _SUMMARY + '''
{ check { file structure_violations { transition restriction message } summary { ...Summary } } }
''',
    'run': _RECOGNITION + '''
{ run {
  result { ...Recognition }
  trace {
    step accept_increment reject_increment accepted rejected residual
    configurations { configuration { state head stack } re im }
  }
} }
''',
    'batch': _RECOGNITION + '''
{ batch { rows { ...Recognition } } }
''',
    'matrix': '''
{ matrix {
  word radius seeds window_size
  unitarity { column_deviation row_deviation tolerance interior_columns interior_rows passed }
  dump { dim triplets }
} }
''',
    'compile': _SUMMARY + '''
{ compile { output states transitions summary { ...Summary } } }
''',
    'zoo': '''
{ zoo {
  name kind states claimed_probability description
  automaton { kind states initial accepting rejecting }
} }
''',
}


def execute(command, payload):
    """ Runs the fixed query of ``command`` with ``payload`` as its root field """
    result = schema.execute(QUERIES[command], root_value={command: payload})
    if result.errors:
        raise Exception(f'{command} output does not match the schema: {result.errors[0]}')
    return result.data


def render(command, payload):
    return dumps(execute(command, payload))


def sdl():
    return str(schema)
