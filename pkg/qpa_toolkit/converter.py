""" Contains conversion logic from interchange amplitude literals to :Amplitude: """

import math
import re
from numbers import Integral, Real

from singledispatch import singledispatch

from .errors import SpecFormatError
from .model import Amplitude

# pylint: disable=W0613

_NUMBER = r'(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][-+]?\d+)?'

_SQRT_RE = re.compile(rf'^(?P<sign>[-+]?)\s*sqrt\(\s*(?P<num>{_NUMBER})\s*(?:/\s*(?P<den>{_NUMBER})\s*)?\)$')
_RATIO_RE = re.compile(rf'^(?P<sign>[-+]?)\s*(?P<num>{_NUMBER})\s*(?:/\s*(?P<den>{_NUMBER}))?$')
_PAIR_RE = re.compile(r'^\(\s*(?P<re>[^,()]+(?:\([^()]*\))?)\s*,\s*(?P<im>[^,()]+(?:\([^()]*\))?)\s*\)$')


def _ratio(match):
    numerator = float(match.group('num'))
    denominator = float(match.group('den')) if match.group('den') else 1.0
    if denominator == 0:
        raise SpecFormatError(f'Zero denominator in amplitude literal {match.group(0)!r}')
    return numerator / denominator


def parse_real(text):
    """ Evaluates a real literal: decimal, p/q, sqrt(p/q), each optionally negated """
    text = text.strip()
    match = _SQRT_RE.match(text)
    if match:
        value = math.sqrt(_ratio(match))
    else:
        match = _RATIO_RE.match(text)
        if not match:
            raise SpecFormatError(f"Don't know how to read the amplitude literal {text!r}")
        value = _ratio(match)
    return -value if match.group('sign') == '-' else value


def convert_amplitude(literal):
    """ Wrapper method for :convert_amplitude_literal: """
    return convert_amplitude_literal(literal)


@singledispatch
def convert_amplitude_literal(literal):
    """ Generic amplitude literal converter """
    raise SpecFormatError(
        f"Don't know how to convert the amplitude literal {literal!r} ({type(literal).__name__})")


@convert_amplitude_literal.register(str)
def convert_text_to_amplitude(literal):
    """ Converts `p/q`, `sqrt(p/q)`, `-sqrt(p/q)`, decimals and `(re,im)` pairs """
    text = literal.strip()
    match = _PAIR_RE.match(text)
    if match:
        value = complex(parse_real(match.group('re')), parse_real(match.group('im')))
    else:
        value = complex(parse_real(text), 0.0)
    return Amplitude(value, text)


@convert_amplitude_literal.register(bool)
def convert_bool_to_amplitude(literal):
    """ Booleans are rejected even though they are integers """
    raise SpecFormatError(f'Boolean {literal!r} is not an amplitude literal')


@convert_amplitude_literal.register(Integral)
@convert_amplitude_literal.register(Real)
def convert_number_to_amplitude(literal):
    """ Converts JSON numbers """
    return Amplitude(complex(float(literal), 0.0), repr(literal))


@convert_amplitude_literal.register(complex)
def convert_complex_to_amplitude(literal):
    return Amplitude(literal)


@convert_amplitude_literal.register(list)
@convert_amplitude_literal.register(tuple)
def convert_pair_to_amplitude(literal):
    """ Converts [re, im] pairs whose parts are numbers or real literals """
    if len(literal) != 2:
        raise SpecFormatError(f'Amplitude pair must have two parts, received {literal!r}')
    parts = [
        parse_real(part) if isinstance(part, str) else float(part)
        for part in literal
    ]
    return Amplitude(complex(*parts), f'({literal[0]},{literal[1]})')


@convert_amplitude_literal.register(Amplitude)
def convert_amplitude_to_amplitude(literal):
    return literal


def amplitude_to_literal(amplitude):
    """ Serialized form of an amplitude: its source text """
    return amplitude.literal
