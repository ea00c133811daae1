""" Quantum pushdown automata: well-formedness checking, measure-many
simulation, truncated evolution matrices and DFA compilation """

from .model import (
    Alphabets,
    Amplitude,
    Direction,
    DfaSpec,
    Kind,
    QpaSpec,
    TransitionKey,
    validate_structure,
)

from .documents import (
    dump_dfa,
    dump_spec,
    load_dfa,
    load_spec,
)

from .wellformed import (
    check_all,
    check_simplified,
)

from .evolve import (
    decide,
    recognize,
    recognize_many,
    trace,
)

from .dfa2rpa import (
    compile_dfa,
    simulate_dfa,
)

__version__ = '1.0.0'

__all__ = (
    '__version__',
    'Alphabets',
    'Amplitude',
    'Direction',
    'DfaSpec',
    'Kind',
    'QpaSpec',
    'TransitionKey',
    'validate_structure',
    'dump_dfa',
    'dump_spec',
    'load_dfa',
    'load_spec',
    'check_all',
    'check_simplified',
    'decide',
    'recognize',
    'recognize_many',
    'trace',
    'compile_dfa',
    'simulate_dfa',
)
