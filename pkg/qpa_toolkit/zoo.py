""" Concrete automata shipped as validated fixtures: recognizers for
(0,1)*1, |w|a = |w|b, |w|a = |w|b = |w|c and |w|a = |w|b xor |w|a = |w|c,
plus exhibits that are deliberately not well-formed.

L3 and L5 branch on reading `#`: a start state ``s`` and two unreachable
auxiliaries ``u1``, ``u2`` are mapped onto the branch heads by a real
orthogonal 3×3 block whose first column holds the branch amplitudes.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, NamedTuple, Optional, Tuple

import numpy as np
from scipy.linalg import null_space

from .converter import convert_amplitude
from .model import (
    LEFT_MARKER, ONE, RIGHT_MARKER, STACK_BASE,
    Alphabets, Amplitude, Direction, Kind, QpaSpec, TransitionKey,
)
from .registry import EXHIBIT, RECOGNIZER, get_global_registry

logger = logging.getLogger(__name__)

# pylint: disable=C0103

Z = STACK_BASE
EXCESS_X = '1'
EXCESS_Y = '2'
COUNTER_SYMBOLS = (EXCESS_X, EXCESS_Y)

registry = get_global_registry()


@dataclass(frozen=True, eq=False)
class ZooEntry:
    name: str
    spec: QpaSpec
    language_oracle: Optional[Callable[[str], bool]]
    claimed_probability: Optional[float]
    description: str = ''

    @property
    def alphabet(self):
        return self.spec.alphabets.sigma


class Gadget(NamedTuple):
    """ Partial transition table over the comparator's own input symbols """
    states: Tuple[str, str, str, str]
    directions: Dict[str, Direction]
    delta: Dict[TransitionKey, Amplitude]


class _Table:

    def __init__(self, directions):
        self.directions = dict(directions)
        self.delta = {}

    def add(self, q1, sigma, tau, q, omega, amp=ONE):
        key = TransitionKey(q1, sigma, tau, q, self.directions[q], tuple(omega))
        assert key not in self.delta, f'{key} emitted twice'
        self.delta[key] = amp

    def update(self, delta):
        for key, amp in delta.items():
            assert key not in self.delta, f'{key} emitted twice'
            self.delta[key] = amp

    def identity(self, states, symbols, taus):
        for state in states:
            for sigma in symbols:
                for tau in taus:
                    self.add(state, sigma, tau, state, (tau,))

    def spec(self, sigma, initial, accepting, rejecting, kind):
        return QpaSpec(
            alphabets=Alphabets(sigma=tuple(sigma), t=COUNTER_SYMBOLS),
            states=tuple(self.directions),
            initial=initial,
            accepting=frozenset(accepting),
            rejecting=frozenset(rejecting),
            delta=self.delta,
            kind=kind,
            directions=self.directions,
        )


# (source, top, target, push) for the symbol counted by EXCESS_X; pushes and
# pops mirror for the other symbol with the counter symbols swapped
_COUNT_SLICE = (
    (0, Z, 0, (Z, EXCESS_X)),
    (0, EXCESS_X, 0, (EXCESS_X, EXCESS_X)),
    (0, EXCESS_Y, 1, ()),
    (1, Z, 0, (Z,)),
    (1, EXCESS_X, 3, (EXCESS_X, EXCESS_Y)),
    (1, EXCESS_Y, 0, (EXCESS_Y,)),
    (2, Z, 3, (Z, EXCESS_Y)),
    (2, EXCESS_X, 2, ()),
    (2, EXCESS_Y, 0, (EXCESS_Y, EXCESS_X)),
    (3, Z, 3, (Z,)),
    (3, EXCESS_X, 3, (EXCESS_X,)),
    (3, EXCESS_Y, 3, (EXCESS_Y, EXCESS_Y)),
)

_MIRROR = {EXCESS_X: EXCESS_Y, EXCESS_Y: EXCESS_X, Z: Z}

# `$` slice of the counting machine: 0 accepts on an empty counter, rejects otherwise
_END_SLICE = (
    (0, Z, 2), (0, EXCESS_X, 3), (0, EXCESS_Y, 3),
    (1, Z, 1), (1, EXCESS_X, 1), (1, EXCESS_Y, 1),
    (2, Z, 0), (2, EXCESS_X, 0), (2, EXCESS_Y, 0),
    (3, Z, 3), (3, EXCESS_X, 2), (3, EXCESS_Y, 2),
)


def _comparator_states(prefix):
    return tuple(f'{prefix}{i}' for i in range(4))


def comparator_directions(prefix):
    states = _comparator_states(prefix)
    return {state: Direction.ADVANCE if i == 0 else Direction.STAY for i, state in enumerate(states)}


def comparator_gadget(x, y, ignore=(), prefix='q'):
    """ Reversible sub-table on four states that tracks |w|x − |w|y on the
    stack (1s for an x excess, 2s for a y excess). Symbols in ``ignore``
    leave every state and the stack unchanged """
    ignore = tuple(ignore)
    if x == y:
        raise ValueError(f'A comparator needs two distinct symbols, received {x!r} twice')
    if set(ignore) & {x, y}:
        raise ValueError(f'Ignored symbols {sorted(set(ignore) & {x, y})} overlap the compared pair')

    states = _comparator_states(prefix)
    table = _Table(comparator_directions(prefix))
    for symbol, swap in ((x, False), (y, True)):
        for source, top, target, push in _COUNT_SLICE:
            if swap:
                top, push = _MIRROR[top], tuple(_MIRROR[item] for item in push)
            table.add(states[source], symbol, top, states[target], push)
    table.identity(states, ignore, (Z,) + COUNTER_SYMBOLS)
    return Gadget(states, table.directions, table.delta)


def _add_end_slice(table, states):
    for source, top, target in _END_SLICE:
        table.add(states[source], RIGHT_MARKER, top, states[target], (top,))


def comparator_machine(x, y, ignore=()):
    """ Runnable reversible automaton accepting exactly the words with
    |w|x = |w|y; state q2 accepts and q3 rejects """
    gadget = comparator_gadget(x, y, ignore)
    table = _Table(gadget.directions)
    table.update(gadget.delta)
    table.identity(gadget.states, (LEFT_MARKER,), (Z,) + COUNTER_SYMBOLS)
    _add_end_slice(table, gadget.states)
    return table.spec(
        sigma=sorted((x, y) + tuple(ignore)),
        initial=gadget.states[0],
        accepting=(gadget.states[2],),
        rejecting=(gadget.states[3],),
        kind=Kind.REVERSIBLE,
    )


def orthogonal_completion(first_column):
    """ Real orthogonal matrix whose first column is the given unit vector """
    column = np.array([amp.re for amp in first_column])
    return np.column_stack([column, null_space(column[np.newaxis, :])])


def _add_split(table, sources, targets, first_column):
    """ `#` slice sending ``sources`` onto ``targets`` through the orthogonal
    completion of ``first_column`` and ``targets`` back onto ``sources`` """
    block = orthogonal_completion(first_column)
    for tau in (Z,) + COUNTER_SYMBOLS:
        for row, target in enumerate(targets):
            table.add(sources[0], LEFT_MARKER, tau, target, (tau,), first_column[row])
            for col in range(1, len(sources)):
                value = block[row, col]
                if abs(value) > 1e-15:
                    table.add(sources[col], LEFT_MARKER, tau, target, (tau,), Amplitude(value))
        for target, source in zip(targets, sources):
            table.add(target, LEFT_MARKER, tau, source, (tau,))


def _counts(word):
    return word.count('a'), word.count('b'), word.count('c')


@registry.register('l1')
def l1_rpa():
    """ Reversible automaton for (0,1)*1 """
    directions = {'q0': Direction.ADVANCE, 'q1': Direction.ADVANCE}
    directions.update({state: Direction.STAY for state in ('q2', 'q3', 'q4', 'q5')})
    table = _Table(directions)
    taus = (Z, '0', '1')
    sigma = ('0', '1')
    table.identity(directions, (LEFT_MARKER,), taus)
    for tau in taus:
        table.add('q0', '0', tau, 'q0', (tau, '0'))
        table.add('q1', '0', tau, 'q0', (tau, '1'))
        table.add('q0', '1', tau, 'q1', (tau, '0'))
        table.add('q1', '1', tau, 'q1', (tau, '1'))
        table.add('q0', RIGHT_MARKER, tau, 'q4', (tau,))
        table.add('q1', RIGHT_MARKER, tau, 'q5', (tau,))
        table.add('q2', '1', tau, 'q0', (tau,))
        table.add('q3', '0', tau, 'q1', (tau,))
        table.add('q2', RIGHT_MARKER, tau, 'q2', (tau,))
        table.add('q3', RIGHT_MARKER, tau, 'q3', (tau,))
        table.add('q4', RIGHT_MARKER, tau, 'q0', (tau,))
        table.add('q5', RIGHT_MARKER, tau, 'q1', (tau,))
    table.identity(('q4', 'q5'), sigma, taus)
    table.add('q2', '0', Z, 'q0', (Z,))
    table.add('q3', '1', Z, 'q1', (Z,))
    table.add('q2', '0', '0', 'q2', ())
    table.add('q2', '0', '1', 'q3', ())
    table.add('q3', '1', '0', 'q2', ())
    table.add('q3', '1', '1', 'q3', ())

    spec = QpaSpec(
        alphabets=Alphabets(sigma=sigma, t=('0', '1')),
        states=tuple(directions),
        initial='q0',
        accepting=frozenset({'q5'}),
        rejecting=frozenset({'q4'}),
        delta=table.delta,
        kind=Kind.REVERSIBLE,
        directions=directions,
    )
    return ZooEntry('l1', spec, lambda word: word.endswith('1'), 1.0,
                    'words over {0,1} ending in 1, reversible, probability 1')


@registry.register('l2')
def l2_rpa():
    """ Reversible automaton for |w|a = |w|b """
    spec = comparator_machine('a', 'b')
    return ZooEntry('l2', spec, lambda word: word.count('a') == word.count('b'), 1.0,
                    'words over {a,b} with as many a as b, reversible, probability 1')


@registry.register('l3')
def l3_qpa():
    """ Three equiprobable branches: a against b, b against c, reject """
    directions = {'s': Direction.STAY, 'u1': Direction.STAY, 'u2': Direction.STAY}
    gadget_a = comparator_gadget('a', 'b', ('c',), prefix='A')
    gadget_b = comparator_gadget('b', 'c', ('a',), prefix='B')
    directions.update(gadget_a.directions)
    directions.update(gadget_b.directions)
    directions['rej'] = Direction.STAY

    table = _Table(directions)
    third = convert_amplitude('sqrt(1/3)')
    _add_split(table, ('s', 'u1', 'u2'), ('A0', 'B0', 'rej'), (third, third, third))
    counters = (Z,) + COUNTER_SYMBOLS
    table.identity(gadget_a.states[1:] + gadget_b.states[1:], (LEFT_MARKER,), counters)
    table.update(gadget_a.delta)
    table.update(gadget_b.delta)
    table.identity(('s', 'u1', 'u2', 'rej'), ('a', 'b', 'c', RIGHT_MARKER), counters)
    _add_end_slice(table, gadget_a.states)
    _add_end_slice(table, gadget_b.states)

    spec = table.spec(sigma=('a', 'b', 'c'), initial='s', accepting=('A2', 'B2'),
                      rejecting=('A3', 'B3', 'rej'), kind=Kind.SIMPLIFIED)

    def oracle(word):
        a, b, c = _counts(word)
        return a == b == c

    return ZooEntry('l3', spec, oracle, 2 / 3, 'words over {a,b,c} with equal counts, probability 2/3')


@registry.register('l5')
def l5_qpa():
    """ Branches a against b with amplitude √(2/7), a against c with −√(2/7)
    and unconditional acceptance with √(3/7). At `$` the two comparators'
    success configurations are recombined so that their acceptance
    amplitudes cancel when both succeed """
    directions = {'s': Direction.STAY, 'u1': Direction.STAY, 'u2': Direction.STAY}
    gadget_a = comparator_gadget('a', 'b', ('c',), prefix='A')
    gadget_b = comparator_gadget('a', 'c', ('b',), prefix='B')
    directions.update(gadget_a.directions)
    directions.update(gadget_b.directions)
    directions.update({'C0': Direction.ADVANCE, 'acc': Direction.STAY, 'rj': Direction.STAY, 'ok': Direction.STAY})

    table = _Table(directions)
    split = tuple(convert_amplitude(literal) for literal in ('sqrt(2/7)', '-sqrt(2/7)', 'sqrt(3/7)'))
    _add_split(table, ('s', 'u1', 'u2'), ('A0', 'B0', 'C0'), split)
    counters = (Z,) + COUNTER_SYMBOLS
    table.identity(gadget_a.states[1:] + gadget_b.states[1:] + ('acc', 'rj', 'ok'), (LEFT_MARKER,), counters)
    table.update(gadget_a.delta)
    table.update(gadget_b.delta)
    table.identity(('s', 'u1', 'u2', 'C0', 'acc', 'rj', 'ok'), ('a', 'b', 'c'), counters)

    half = convert_amplitude('sqrt(1/2)')
    minus_half = convert_amplitude('-sqrt(1/2)')
    table.add('A0', RIGHT_MARKER, Z, 'acc', (Z,), half)
    table.add('A0', RIGHT_MARKER, Z, 'rj', (Z,), half)
    table.add('B0', RIGHT_MARKER, Z, 'acc', (Z,), half)
    table.add('B0', RIGHT_MARKER, Z, 'rj', (Z,), minus_half)
    table.add('acc', RIGHT_MARKER, Z, 'A0', (Z,))
    table.add('rj', RIGHT_MARKER, Z, 'B0', (Z,))
    table.identity(('A1', 'A2', 'A3', 'B1', 'B2', 'B3'), (RIGHT_MARKER,), (Z,))
    for tau in COUNTER_SYMBOLS:
        for prefix in 'AB':
            table.add(f'{prefix}0', RIGHT_MARKER, tau, f'{prefix}3', (tau,))
            table.add(f'{prefix}3', RIGHT_MARKER, tau, f'{prefix}2', (tau,))
            table.add(f'{prefix}2', RIGHT_MARKER, tau, f'{prefix}0', (tau,))
        table.identity(('A1', 'B1', 'acc', 'rj'), (RIGHT_MARKER,), (tau,))
    for tau in counters:
        table.add('C0', RIGHT_MARKER, tau, 'ok', (tau,))
        table.add('ok', RIGHT_MARKER, tau, 'C0', (tau,))
    table.identity(('s', 'u1', 'u2'), (RIGHT_MARKER,), counters)

    spec = table.spec(sigma=('a', 'b', 'c'), initial='s', accepting=('acc', 'ok'),
                      rejecting=('A3', 'B3', 'rj'), kind=Kind.SIMPLIFIED)

    def oracle(word):
        a, b, c = _counts(word)
        return (a == b) != (a == c)

    return ZooEntry('l5', spec, oracle, 4 / 7,
                    'words over {a,b,c} with |w|a = |w|b xor |w|a = |w|c, probability 4/7')


@registry.register('nonunitary', kind=EXHIBIT)
def nonunitary_example():
    """ Single-state automaton that always advances and pushes: its columns
    are orthonormal but rows over a bare stack base have norm 0 """
    delta = {}
    for sigma in (LEFT_MARKER, '1', RIGHT_MARKER):
        delta[TransitionKey('q', sigma, Z, 'q', Direction.ADVANCE, (Z, '1'))] = ONE
        delta[TransitionKey('q', sigma, '1', 'q', Direction.ADVANCE, ('1', '1'))] = ONE
    spec = QpaSpec(
        alphabets=Alphabets(sigma=('1',), t=('1',)),
        states=('q',),
        initial='q',
        accepting=frozenset(),
        rejecting=frozenset(),
        delta=delta,
        kind=Kind.GENERAL,
    )
    return ZooEntry('nonunitary', spec, None, None, 'isometric but not unitary; fails the row norm condition')


@registry.register('l2-printed', kind=EXHIBIT)
def l2_printed():
    """ The |w|a = |w|b automaton with q0 pushing 1 on `$` over an empty
    counter; that entry collides with q3's move on `$` over 1 """
    base = l2_rpa().spec
    delta = dict(base.delta)
    del delta[TransitionKey('q0', RIGHT_MARKER, Z, 'q2', Direction.STAY, (Z,))]
    delta[TransitionKey('q0', RIGHT_MARKER, Z, 'q2', Direction.STAY, (Z, EXCESS_X))] = ONE
    spec = QpaSpec(
        alphabets=base.alphabets,
        states=base.states,
        initial=base.initial,
        accepting=base.accepting,
        rejecting=base.rejecting,
        delta=delta,
        kind=base.kind,
        directions=base.directions,
    )
    return ZooEntry('l2-printed', spec, None, None, 'not well-formed: column collision at $ over Z0')


def get_entry(name):
    return registry.get(name)


def recognizers():
    return [registry.get(name) for name in registry.names(RECOGNIZER)]


def exhibits():
    return [registry.get(name) for name in registry.names(EXHIBIT)]
