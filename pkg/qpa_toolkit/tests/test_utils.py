from pytest import raises

from ..documents import QpaDocument, TransitionDocument
from ..utils import canonical_literal, get_db_field_map, get_field_description, render_word, tokenize_word


def test_should_tokenize_longest_symbol_first():
    assert tokenize_word('Z01', ('1', 'Z0')) == ('Z0', '1')
    assert tokenize_word('', ('1', 'Z0')) == ()


def test_should_tokenize_on_whitespace():
    assert tokenize_word('Z0 10', ('1', '10', 'Z0')) == ('Z0', '10')


def test_should_tokenize_reject_unknown_text():
    with raises(ValueError):
        tokenize_word('Z0x', ('1', 'Z0'))


def test_should_render_ambiguous_words_with_spaces():
    symbols = ('1', '11', 'Z0')
    assert render_word(('Z0', '1'), symbols) == 'Z01'
    assert render_word(('1', '1'), symbols) == '1 1'


def test_should_canonical_literal_use_repr():
    assert canonical_literal(0.5) == '0.5'
    assert canonical_literal(complex(0.6, -0.8)) == '(0.6,-0.8)'


def test_should_map_serialized_field_names():
    assert get_db_field_map(TransitionDocument)['from'] == 'source'
    assert get_db_field_map(QpaDocument)['kind'] == 'kind'


def test_should_read_field_description():
    assert get_field_description(QpaDocument._fields['initial']) == 'Initial state'
