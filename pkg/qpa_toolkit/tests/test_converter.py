import math

from pytest import approx, raises

from ..converter import amplitude_to_literal, convert_amplitude, parse_real
from ..errors import SpecFormatError
from ..model import Amplitude


def assert_amplitude_conversion(literal, value, text=None):
    amplitude = convert_amplitude(literal)
    assert isinstance(amplitude, Amplitude)
    assert amplitude.value == approx(value)
    if text is not None:
        assert amplitude.literal == text
    return amplitude


def test_should_none_raise_exception():
    with raises(SpecFormatError) as excinfo:
        convert_amplitude(None)
    assert "Don't know how to convert" in str(excinfo.value)


def test_should_bool_raise_exception():
    with raises(SpecFormatError):
        convert_amplitude(True)


def test_should_unknown_text_raise_exception():
    with raises(SpecFormatError):
        convert_amplitude('one half')


def test_should_zero_denominator_raise_exception():
    with raises(SpecFormatError):
        convert_amplitude('sqrt(1/0)')


def test_should_ratio_convert_amplitude():
    assert_amplitude_conversion('1/3', 1 / 3, '1/3')


def test_should_sqrt_convert_amplitude():
    assert_amplitude_conversion('sqrt(1/2)', math.sqrt(0.5), 'sqrt(1/2)')
    assert_amplitude_conversion('sqrt(3/7)', math.sqrt(3 / 7))


def test_should_negative_sqrt_convert_amplitude():
    amplitude = assert_amplitude_conversion('-sqrt(2/7)', -math.sqrt(2 / 7), '-sqrt(2/7)')
    assert amplitude.modulus == approx(math.sqrt(2 / 7))


def test_should_decimal_convert_amplitude():
    assert_amplitude_conversion('0.5', 0.5)
    assert_amplitude_conversion('-1e-1', -0.1)


def test_should_pair_convert_amplitude():
    amplitude = assert_amplitude_conversion('(0.6,0.8)', complex(0.6, 0.8), '(0.6,0.8)')
    assert amplitude.re == approx(0.6)
    assert amplitude.im == approx(0.8)
    assert amplitude.modulus == approx(1.0)


def test_should_pair_of_sqrt_convert_amplitude():
    assert_amplitude_conversion('(sqrt(1/2), -sqrt(1/2))', complex(math.sqrt(0.5), -math.sqrt(0.5)))


def test_should_int_convert_amplitude():
    assert_amplitude_conversion(1, 1.0, '1')


def test_should_float_convert_amplitude():
    assert_amplitude_conversion(0.25, 0.25, '0.25')


def test_should_complex_convert_amplitude():
    assert_amplitude_conversion(0.6j, 0.6j)


def test_should_list_convert_amplitude():
    assert_amplitude_conversion([0.6, 'sqrt(0.64)'], complex(0.6, 0.8))


def test_should_wrong_sized_list_raise_exception():
    with raises(SpecFormatError):
        convert_amplitude([1, 0, 0])


def test_should_amplitude_convert_to_itself():
    amplitude = Amplitude(0.5, '1/2')
    assert convert_amplitude(amplitude) is amplitude


def test_should_literal_survive_conversion():
    assert amplitude_to_literal(convert_amplitude('-sqrt(2/7)')) == '-sqrt(2/7)'


def test_should_computed_amplitude_get_parseable_literal():
    amplitude = Amplitude(-math.sqrt(2 / 7))
    assert convert_amplitude(amplitude.literal).value == amplitude.value
    pair = Amplitude(complex(0.6, -0.8))
    assert convert_amplitude(pair.literal).value == pair.value


def test_should_parse_real_reject_pairs():
    with raises(SpecFormatError):
        parse_real('(1,0)')
