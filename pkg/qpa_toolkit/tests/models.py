""" Small automata and interchange documents shared by the tests """

from itertools import product

from ..converter import convert_amplitude
from ..model import (
    LEFT_MARKER, ONE, RIGHT_MARKER, STACK_BASE,
    Alphabets, Direction, DfaSpec, Kind, QpaSpec, TransitionKey,
)

ADVANCE = Direction.ADVANCE
STAY = Direction.STAY
Z = STACK_BASE


def words(alphabet, max_length):
    """ Every word over ``alphabet`` of length at most ``max_length``, shortest first """
    for length in range(max_length + 1):
        for letters in product(alphabet, repeat=length):
            yield ''.join(letters)


def general_spec(delta, states=('p', 'r'), sigma=('a',), t=('1',), accepting=(), rejecting=()):
    return QpaSpec(
        alphabets=Alphabets(sigma=sigma, t=t),
        states=states,
        initial=states[0],
        accepting=frozenset(accepting),
        rejecting=frozenset(rejecting),
        delta=delta,
        kind=Kind.GENERAL,
    )


def empty_spec():
    """ One state, no transitions at all """
    return general_spec({}, states=('q',))


def half_amplitude_spec():
    """ A single transition of amplitude 1/√2 and nothing else """
    key = TransitionKey('q', 'a', Z, 'q', ADVANCE, (Z,))
    return general_spec({key: convert_amplitude('sqrt(1/2)')}, states=('q',))


def identity_advance_spec():
    """ Single state that advances on every symbol and leaves the stack as it is """
    alphabets = Alphabets(sigma=('a',), t=('1',))
    delta = {
        TransitionKey('q', sigma, tau, 'q', ADVANCE, (tau,)): ONE
        for sigma in alphabets.gamma
        for tau in alphabets.delta_alpha
    }
    return general_spec(delta, states=('q',))


def collision_spec():
    """ Two triples mapping onto the same target with amplitude 1 """
    return general_spec({
        TransitionKey('p', 'a', Z, 'r', STAY, (Z,)): ONE,
        TransitionKey('r', 'a', Z, 'r', STAY, (Z,)): ONE,
    })


def pop_against_push_spec():
    """ One triple pops to ε, another pushes Z0 back, both into (r, advance) """
    return general_spec({
        TransitionKey('p', 'a', '1', 'r', ADVANCE, ()): ONE,
        TransitionKey('p', 'a', Z, 'r', ADVANCE, (Z,)): ONE,
    })


def ends_in_one_dfa():
    """ (0,1)*1 """
    return DfaSpec(
        states=('q0', 'q1'),
        sigma=('0', '1'),
        initial='q0',
        finals={'q1'},
        trans={('q0', '0'): 'q0', ('q0', '1'): 'q1', ('q1', '0'): 'q0', ('q1', '1'): 'q1'},
    )


def accept_all_dfa():
    return DfaSpec(states=('s',), sigma=('a', 'b'), initial='s', finals={'s'},
                   trans={('s', 'a'): 's', ('s', 'b'): 's'})


def partial_dfa():
    return DfaSpec(states=('s', 't'), sigma=('a',), initial='s', finals={'t'}, trans={('s', 'a'): 't'})


def two_state_document():
    """ Interchange document of a small reversible automaton over {a}: q0
    reads the word and hands over to the accepting q1 on `$` """
    transitions = []
    for tau in (Z, '1'):
        for sigma, source, target, direction in (
            (LEFT_MARKER, 'q0', 'q0', 'advance'),
            ('a', 'q0', 'q0', 'advance'),
            (RIGHT_MARKER, 'q0', 'q1', 'stay'),
            (LEFT_MARKER, 'q1', 'q1', 'stay'),
            ('a', 'q1', 'q1', 'stay'),
            (RIGHT_MARKER, 'q1', 'q0', 'advance'),
        ):
            transitions.append({
                'from': source, 'input': sigma, 'stack_top': tau, 'to': target,
                'dir': direction, 'push': tau, 'amp': '1',
            })
    return {
        'kind': 'reversible',
        'states': ['q0', 'q1'],
        'input_alphabet': ['a'],
        'stack_alphabet': ['1'],
        'initial': 'q0',
        'accepting': ['q1'],
        'rejecting': [],
        'direction': {'q0': 'advance', 'q1': 'stay'},
        'transitions': transitions,
    }


def ends_in_one_dfa_document():
    return {
        'states': ['q0', 'q1'],
        'alphabet': ['0', '1'],
        'initial': 'q0',
        'finals': ['q1'],
        'transitions': [
            {'from': 'q0', 'input': '0', 'to': 'q0'},
            {'from': 'q0', 'input': '1', 'to': 'q1'},
            {'from': 'q1', 'input': '0', 'to': 'q0'},
            {'from': 'q1', 'input': '1', 'to': 'q1'},
        ],
    }
