""" Automaton data model: alphabets, transition keys, QPA and DFA specs,
and the structural restrictions every transition table must obey """

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from types import MappingProxyType
from typing import Dict, FrozenSet, Mapping, NamedTuple, Optional, Tuple

from .errors import UnknownSymbolError
from .utils import canonical_literal, key_order, word_order

logger = logging.getLogger(__name__)

LEFT_MARKER = '#'
RIGHT_MARKER = '$'
STACK_BASE = 'Z0'
RESERVED_SYMBOLS = (LEFT_MARKER, RIGHT_MARKER, STACK_BASE)

DEFAULT_TOLERANCE = 1e-9

# pylint: disable=C0103


class Direction(Enum):
    """ Input head move: stay leaves the head in place, advance moves it one cell right """
    STAY = 'stay'
    ADVANCE = 'advance'


class Kind(Enum):
    GENERAL = 'general'
    SIMPLIFIED = 'simplified'
    REVERSIBLE = 'reversible'


@dataclass(frozen=True)
class Amplitude:
    """ A transition weight. ``literal`` is the text it was written as,
    so that serialization reproduces the source document exactly """

    value: complex
    literal: str = ''

    def __post_init__(self):
        object.__setattr__(self, 'value', complex(self.value))
        if not self.literal:
            object.__setattr__(self, 'literal', canonical_literal(self.value))

    @property
    def re(self):
        return self.value.real

    @property
    def im(self):
        return self.value.imag

    @property
    def modulus(self):
        return abs(self.value)

    def __str__(self):
        return self.literal


ONE = Amplitude(1, '1')


@dataclass(frozen=True)
class Alphabets:
    """ Input alphabet Σ and stack alphabet T; Γ and Δ are derived by adding
    the reserved end-markers and the stack base """

    sigma: Tuple[str, ...]
    t: Tuple[str, ...]

    @cached_property
    def gamma(self):
        return tuple(sorted(set(self.sigma) | {LEFT_MARKER, RIGHT_MARKER}))

    @cached_property
    def delta_alpha(self):
        return tuple(sorted(set(self.t) | {STACK_BASE}))

    def violations(self):
        """ Yields messages for every broken alphabet invariant """
        for name, symbols in (('input', self.sigma), ('stack', self.t)):
            if len(set(symbols)) != len(symbols):
                yield f'duplicate symbol in {name} alphabet'
            for symbol in symbols:
                if symbol in RESERVED_SYMBOLS:
                    yield f'reserved symbol {symbol!r} declared in {name} alphabet'
                if not symbol:
                    yield f'empty symbol in {name} alphabet'
        for symbol in self.sigma:
            if len(symbol) != 1:
                yield f'input symbol {symbol!r} is not a single character'
        for symbol in self.t:
            if any(char.isspace() for char in symbol):
                yield f'stack symbol {symbol!r} contains whitespace'


class TransitionKey(NamedTuple):
    q1: str
    sigma: str
    tau: str
    q: str
    d: Direction
    omega: Tuple[str, ...]

    @property
    def source(self):
        return (self.q1, self.sigma, self.tau)

    def __str__(self):
        push = ''.join(self.omega) or 'ε'
        return f'δ({self.q1},{self.sigma},{self.tau},{self.q},{self.d.value},{push})'


class StructureViolation(NamedTuple):
    key: Optional[TransitionKey]
    restriction: str
    message: str

    def __str__(self):
        where = f'{self.key}: ' if self.key is not None else ''
        return f'{where}{self.message} [{self.restriction}]'


@dataclass(frozen=True, eq=False)
class QpaSpec:
    """ A quantum pushdown automaton. Immutable after construction; derived
    indexes are computed lazily and cached on the instance """

    alphabets: Alphabets
    states: Tuple[str, ...]
    initial: str
    accepting: FrozenSet[str]
    rejecting: FrozenSet[str]
    delta: Mapping[TransitionKey, Amplitude]
    kind: Kind = Kind.GENERAL
    directions: Optional[Mapping[str, Direction]] = None

    def __post_init__(self):
        ordered = {key: self.delta[key] for key in sorted(self.delta, key=key_order)}
        object.__setattr__(self, 'delta', MappingProxyType(ordered))
        object.__setattr__(self, 'accepting', frozenset(self.accepting))
        object.__setattr__(self, 'rejecting', frozenset(self.rejecting))
        object.__setattr__(self, 'states', tuple(self.states))
        if self.directions is not None:
            object.__setattr__(self, 'directions', MappingProxyType(dict(self.directions)))

    @property
    def is_simplified(self):
        return self.kind is not Kind.GENERAL

    @cached_property
    def sorted_states(self):
        return tuple(sorted(self.states))

    @cached_property
    def triples(self):
        """ Every (q1, σ, τ) in Q×Γ×Δ in deterministic order """
        return tuple(
            (q1, sigma, tau)
            for q1 in self.sorted_states
            for sigma in self.alphabets.gamma
            for tau in self.alphabets.delta_alpha
        )

    @cached_property
    def live_entries(self):
        """ Stored keys with a nonzero amplitude, as (key, complex) pairs """
        return tuple((key, amp.value) for key, amp in self.delta.items() if amp.value != 0)

    @cached_property
    def columns(self):
        """ (q1, σ, τ) -> tuple of (q, d, ω, complex) """
        columns: Dict[tuple, list] = {}
        for key, value in self.live_entries:
            columns.setdefault(key.source, []).append((key.q, key.d, key.omega, value))
        return MappingProxyType({src: tuple(entries) for src, entries in columns.items()})

    @cached_property
    def incoming(self):
        """ (σ, q, d, ω) -> tuple of (q1, τ, complex); the inverse index of δ """
        incoming: Dict[tuple, list] = {}
        for key, value in self.live_entries:
            incoming.setdefault((key.sigma, key.q, key.d, key.omega), []).append((key.q1, key.tau, value))
        return MappingProxyType({target: tuple(entries) for target, entries in incoming.items()})

    @cached_property
    def advance_targets(self):
        """ States entered by at least one advancing transition """
        return frozenset(key.q for key, _ in self.live_entries if key.d is Direction.ADVANCE)

    def direction_of(self, state):
        if self.directions is None:
            raise UnknownSymbolError(f'{self.kind.value} automaton has no direction function')
        try:
            return self.directions[state]
        except KeyError:
            raise UnknownSymbolError(f'No direction declared for state {state!r}') from None

    def require_state(self, state):
        if state not in self.states:
            raise UnknownSymbolError(f'Unknown state {state!r}')

    def require_input_symbol(self, symbol):
        if symbol not in self.alphabets.gamma:
            raise UnknownSymbolError(f'Unknown tape symbol {symbol!r}')

    def require_stack_symbol(self, symbol):
        if symbol not in self.alphabets.delta_alpha:
            raise UnknownSymbolError(f'Unknown stack symbol {symbol!r}')


@dataclass(frozen=True, eq=False)
class DfaSpec:
    states: Tuple[str, ...]
    sigma: Tuple[str, ...]
    initial: str
    finals: FrozenSet[str]
    trans: Mapping[Tuple[str, str], str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, 'states', tuple(self.states))
        object.__setattr__(self, 'sigma', tuple(self.sigma))
        object.__setattr__(self, 'finals', frozenset(self.finals))
        object.__setattr__(self, 'trans', MappingProxyType(dict(self.trans)))

    def missing_transitions(self):
        return [
            (state, symbol)
            for state in self.states
            for symbol in self.sigma
            if (state, symbol) not in self.trans
        ]


def enumerate_push_words(tau, alphabets):
    """ Every push word ω the structural restrictions allow after popping τ,
    sorted by length and then lexicographically """
    if tau not in alphabets.delta_alpha:
        raise UnknownSymbolError(f'Unknown stack symbol {tau!r}')
    stack_symbols = sorted(alphabets.t)
    if tau == STACK_BASE:
        words = [(STACK_BASE,)] + [(STACK_BASE, t) for t in stack_symbols]
    else:
        words = [()] + [(t,) for t in stack_symbols] + [(tau, t) for t in stack_symbols]
    return sorted(words, key=word_order)


def transitions_from(spec, q1, sigma, tau):
    """ Nonzero entries of the column (q1, σ, τ) as (q, d, ω, Amplitude) """
    spec.require_state(q1)
    spec.require_input_symbol(sigma)
    spec.require_stack_symbol(tau)
    return [
        (key.q, key.d, key.omega, amp)
        for key, amp in spec.delta.items()
        if key.source == (q1, sigma, tau) and amp.value != 0
    ]


def _key_violations(spec, key, amp, tolerance):
    alphabets = spec.alphabets
    declared = True
    for state in (key.q1, key.q):
        if state not in spec.states:
            declared = False
            yield StructureViolation(key, 'declared', f'undeclared state {state!r}')
    if key.sigma not in alphabets.gamma:
        declared = False
        yield StructureViolation(key, 'declared', f'undeclared tape symbol {key.sigma!r}')
    for symbol in (key.tau,) + tuple(key.omega):
        if symbol not in alphabets.delta_alpha:
            declared = False
            yield StructureViolation(key, 'declared', f'undeclared stack symbol {symbol!r}')
    if amp.modulus > 1 + tolerance:
        yield StructureViolation(key, 'modulus', f'|amplitude| = {amp.modulus:.6g} exceeds 1')
    if spec.kind is Kind.REVERSIBLE and amp.value != 1:
        yield StructureViolation(key, 'reversible', 'reversible amplitude is not exactly 1')
    if not declared or amp.value == 0:
        return

    omega = key.omega
    if len(omega) > 2:
        yield StructureViolation(key, 'restriction-1', '|ω| > 2')
    if len(omega) == 2 and omega[0] != key.tau:
        yield StructureViolation(key, 'restriction-2', 'ω₁ ≠ β')
    if key.tau == STACK_BASE:
        if not omega:
            yield StructureViolation(key, 'restriction-3', 'Z0 pop removes base')
        elif omega[0] != STACK_BASE or STACK_BASE in omega[1:]:
            yield StructureViolation(key, 'restriction-3', 'push word after Z0 is not in Z0·T*')
    elif STACK_BASE in omega:
        yield StructureViolation(key, 'restriction-4', 'Z0 pushed above the stack base')

    if spec.is_simplified and spec.directions is not None and key.q in spec.directions:
        if spec.directions[key.q] is not key.d:
            yield StructureViolation(key, 'direction', f'direction differs from D({key.q})')


def validate_structure(spec, tolerance=DEFAULT_TOLERANCE):
    """ Checks the structural restrictions on the automaton and its transition
    table. Violations are returned, not raised """

    violations = [StructureViolation(None, 'alphabet', msg) for msg in spec.alphabets.violations()]

    if spec.initial not in spec.states:
        violations.append(StructureViolation(None, 'states', f'initial state {spec.initial!r} undeclared'))
    if len(set(spec.states)) != len(spec.states):
        violations.append(StructureViolation(None, 'states', 'duplicate state names'))
    for name, group in (('accepting', spec.accepting), ('rejecting', spec.rejecting)):
        for state in sorted(group - set(spec.states)):
            violations.append(StructureViolation(None, 'states', f'{name} state {state!r} undeclared'))
    for state in sorted(spec.accepting & spec.rejecting):
        violations.append(StructureViolation(None, 'states', f'state {state!r} both accepting and rejecting'))

    if spec.is_simplified:
        if spec.directions is None:
            violations.append(StructureViolation(None, 'direction', 'direction function missing'))
        else:
            for state in spec.sorted_states:
                if state not in spec.directions:
                    violations.append(StructureViolation(None, 'direction', f'no direction for {state!r}'))

    for key, amp in spec.delta.items():
        violations.extend(_key_violations(spec, key, amp, tolerance))

    if spec.kind is Kind.REVERSIBLE:
        for source, entries in spec.columns.items():
            if len(entries) != 1:
                violations.append(StructureViolation(
                    None, 'reversible', f'{len(entries)} transitions stored for {source}'))

    logger.debug('structure check: %d violation(s)', len(violations))
    return violations


def expand_to_general(spec):
    """ The same transition table read as a general QPA """
    return QpaSpec(
        alphabets=spec.alphabets,
        states=spec.states,
        initial=spec.initial,
        accepting=spec.accepting,
        rejecting=spec.rejecting,
        delta=dict(spec.delta),
        kind=Kind.GENERAL,
        directions=None,
    )
