""" Compiles a total DFA into a reversible pushdown automaton with twice as
many states, using DFA state indices as stack symbols """

import logging
import random
from dataclasses import dataclass
from typing import FrozenSet, Mapping, Tuple

from .errors import IllegalWordError, IncompleteDfaError
from .model import (
    LEFT_MARKER, ONE, RIGHT_MARKER, STACK_BASE,
    Alphabets, Direction, DfaSpec, Kind, QpaSpec, TransitionKey,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CompilationMap:
    """ ``primed`` maps each DFA state to its fresh twin, ``index`` to its
    stack symbol. ``r_set`` holds the (q'_j, σ, i) with δ(q_i, σ) = q_j and
    ``r_bar_set`` the remaining triples of Q' × Σ × T """

    primed: Mapping[str, str]
    index: Mapping[str, str]
    r_set: FrozenSet[Tuple[str, str, str]]
    r_bar_set: FrozenSet[Tuple[str, str, str]]


def require_total(dfa):
    if not dfa.states:
        raise IncompleteDfaError('DFA has no states')
    if dfa.initial not in dfa.states:
        raise IncompleteDfaError(f'Initial state {dfa.initial!r} is not declared')
    undeclared = sorted(dfa.finals - set(dfa.states))
    if undeclared:
        raise IncompleteDfaError(f'Final state(s) {undeclared} are not declared')
    missing = dfa.missing_transitions()
    if missing:
        raise IncompleteDfaError(f'DFA is partial: no transition for {missing[0]} and {len(missing) - 1} more')
    for (state, symbol), target in dfa.trans.items():
        if state not in dfa.states or symbol not in dfa.sigma or target not in dfa.states:
            raise IncompleteDfaError(f'Transition {state!r} --{symbol}--> {target!r} uses undeclared names')


def _fresh_names(states):
    taken = set(states)
    primed = {}
    for state in states:
        name = f"{state}'"
        while name in taken:
            name += "'"
        taken.add(name)
        primed[state] = name
    return primed


def compilation_map(dfa):
    require_total(dfa)
    primed = _fresh_names(dfa.states)
    index = {state: str(position) for position, state in enumerate(dfa.states)}
    r_set, r_bar_set = set(), set()
    for source in dfa.states:
        for symbol in dfa.sigma:
            for target in dfa.states:
                triple = (primed[target], symbol, index[source])
                (r_set if dfa.trans[(source, symbol)] == target else r_bar_set).add(triple)
    return CompilationMap(primed, index, frozenset(r_set), frozenset(r_bar_set))


def compile_dfa(dfa):
    """ Reversible simulation of ``dfa``: unprimed states read the word left
    to right pushing the index of the state they leave; the right end-marker
    sends q_i to its primed twin, which accepts iff q_i is final """
    cmap = compilation_map(dfa)
    primed, index = cmap.primed, cmap.index
    unprimed = {twin: state for state, twin in primed.items()}
    directions = {state: Direction.ADVANCE for state in dfa.states}
    directions.update({twin: Direction.STAY for twin in primed.values()})
    stack_symbols = tuple(index[state] for state in dfa.states)
    delta_alpha = (STACK_BASE,) + stack_symbols
    delta = {}

    def emit(q1, sigma, tau, q, omega):
        delta[TransitionKey(q1, sigma, tau, q, directions[q], omega)] = ONE

    for state in dfa.states:
        for symbol in dfa.sigma:
            for tau in delta_alpha:
                emit(state, symbol, tau, dfa.trans[(state, symbol)], (tau, index[state]))
    for twin, symbol, tau in cmap.r_set:
        emit(twin, symbol, tau, primed[dfa.states[int(tau)]], ())
    for twin, symbol, tau in cmap.r_bar_set:
        emit(twin, symbol, tau, unprimed[twin], (tau,))
    for twin in primed.values():
        for symbol in dfa.sigma:
            emit(twin, symbol, STACK_BASE, unprimed[twin], (STACK_BASE,))
    for state in tuple(dfa.states) + tuple(primed.values()):
        for tau in delta_alpha:
            emit(state, LEFT_MARKER, tau, state, (tau,))
    for state in dfa.states:
        for tau in delta_alpha:
            emit(state, RIGHT_MARKER, tau, primed[state], (tau,))
            emit(primed[state], RIGHT_MARKER, tau, state, (tau,))

    spec = QpaSpec(
        alphabets=Alphabets(sigma=tuple(dfa.sigma), t=stack_symbols),
        states=tuple(dfa.states) + tuple(primed[state] for state in dfa.states),
        initial=dfa.initial,
        accepting=frozenset(primed[state] for state in dfa.finals),
        rejecting=frozenset(primed[state] for state in dfa.states if state not in dfa.finals),
        delta=delta,
        kind=Kind.REVERSIBLE,
        directions=directions,
    )
    logger.debug('compiled %d-state DFA into %d transitions', len(dfa.states), len(delta))
    return spec


def simulate_dfa(dfa, word):
    require_total(dfa)
    state = dfa.initial
    for symbol in word:
        if symbol not in dfa.sigma:
            raise IllegalWordError(f'Symbol {symbol!r} of {word!r} is not in the DFA alphabet')
        state = dfa.trans[(state, symbol)]
    return state in dfa.finals


def random_dfa(n, alphabet, rng=None):
    """ Total DFA on states q0..q{n-1}, each state final with probability 1/2 """
    rng = rng or random.Random()
    states = tuple(f'q{i}' for i in range(n))
    return DfaSpec(
        states=states,
        sigma=tuple(alphabet),
        initial=states[0],
        finals=frozenset(state for state in states if rng.random() < 0.5),
        trans={(state, symbol): rng.choice(states) for state in states for symbol in alphabet},
    )
