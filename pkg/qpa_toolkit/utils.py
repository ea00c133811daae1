""" Ordering, rendering and document helpers shared across the toolkit """

import json


def canonical_literal(value):
    """ Text form of a computed amplitude that parses back to the same value """
    value = complex(value)
    if value.imag == 0:
        return repr(value.real)
    return f'({value.real!r},{value.imag!r})'


def word_order(word):
    """ Sort key for stack words: shorter first, then lexicographic """
    return (len(word), tuple(word))


def key_order(key):
    """ Sort key for transition keys: state, symbols, direction, then push word """
    return (key.q1, key.sigma, key.tau, key.q, key.d.value, word_order(key.omega))


def config_order(config):
    """ Sort key for configurations """
    return (config.state, config.head, word_order(config.stack))


def tokenize_word(text, symbols):
    """ Splits a stack word written as text into symbols. Whitespace-separated
    text is split on whitespace; otherwise the longest declared symbol wins """
    if any(ch.isspace() for ch in text):
        return tuple(text.split())
    by_length = sorted(symbols, key=len, reverse=True)
    tokens = []
    position = 0
    while position < len(text):
        for symbol in by_length:
            if symbol and text.startswith(symbol, position):
                tokens.append(symbol)
                position += len(symbol)
                break
        else:
            raise ValueError(f'Cannot split {text!r} into symbols at position {position}')
    return tuple(tokens)


def render_word(word, symbols):
    """ Inverse of :tokenize_word: """
    joined = ''.join(word)
    try:
        if tokenize_word(joined, symbols) == tuple(word):
            return joined
    except ValueError:
        pass
    return ' '.join(word)


def get_document_fields(document):
    """ Returns a dict with a :Document: fields,
    which keys are the Fields name as defined in the Document """
    return getattr(document, '_fields', {})


def get_db_field_map(document):
    """ Maps the serialized (db_field) name of every field to its attribute name """
    return {field.db_field: name for name, field in get_document_fields(document).items()}


def get_field_description(field, description_keyword='description'):
    """ Gets field description if available, using the description_keyword"""
    return getattr(field, description_keyword, '')


def dumps(payload):
    """ Deterministic JSON text used for every file the toolkit writes """
    return json.dumps(payload, indent=2, ensure_ascii=False) + '\n'
