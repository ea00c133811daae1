""" Configuration-space simulation: one step of the evolution operator on a
sparse superposition, the measure-many observation and the recognition loop """

import logging
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from functools import partial
from typing import NamedTuple, Optional, Tuple

from .errors import IllegalWordError, NotWellFormedError, StructureError, TapeOverrunError
from .model import DEFAULT_TOLERANCE, LEFT_MARKER, RIGHT_MARKER, STACK_BASE, Direction
from .utils import config_order
from .wellformed import cached_check_all, cached_validate_structure

logger = logging.getLogger(__name__)

PRUNE_EPS = 1e-15
HALT_EPS = 1e-12


class Configuration(NamedTuple):
    state: str
    head: int
    stack: Tuple[str, ...]

    def __str__(self):
        return f'|{self.state}, {self.head}, {"".join(self.stack)}⟩'


@dataclass(frozen=True)
class TapeContext:
    """ The framed input `# x $`; head positions index into it from 0 """

    framed_word: Tuple[str, ...]

    @classmethod
    def for_word(cls, spec, word):
        illegal = sorted({symbol for symbol in word if symbol not in spec.alphabets.sigma})
        if illegal:
            raise IllegalWordError(f'Word {word!r} uses symbol(s) {illegal} outside the input alphabet')
        return cls((LEFT_MARKER,) + tuple(word) + (RIGHT_MARKER,))

    @property
    def word(self):
        return ''.join(self.framed_word[1:-1])

    @property
    def last(self):
        return len(self.framed_word) - 1

    def __len__(self):
        return len(self.framed_word)

    def __getitem__(self, head):
        return self.framed_word[head]


class Superposition:
    """ Sparse map from configurations to complex amplitudes. Entries smaller
    than ``prune_eps`` in modulus are dropped on construction """

    __slots__ = ('_amplitudes',)

    def __init__(self, amplitudes=None, prune_eps=PRUNE_EPS):
        self._amplitudes = {
            config: complex(alpha)
            for config, alpha in (amplitudes or {}).items()
            if abs(alpha) >= prune_eps
        }

    @classmethod
    def basis(cls, config):
        return cls({config: 1})

    def amplitude(self, config):
        return self._amplitudes.get(config, 0j)

    def items(self):
        return self._amplitudes.items()

    def configurations(self):
        return self._amplitudes.keys()

    def sorted_items(self):
        return sorted(self._amplitudes.items(), key=lambda item: config_order(item[0]))

    def norm_squared(self):
        return sum(abs(alpha) ** 2 for alpha in self._amplitudes.values())

    def restrict(self, predicate):
        return Superposition({c: a for c, a in self._amplitudes.items() if predicate(c)})

    def __len__(self):
        return len(self._amplitudes)

    def __bool__(self):
        return bool(self._amplitudes)

    def __iter__(self):
        return iter(self._amplitudes)

    def __add__(self, other):
        total = defaultdict(complex, self._amplitudes)
        for config, alpha in other.items():
            total[config] += alpha
        return Superposition(total)

    def __mul__(self, scalar):
        return Superposition({c: a * scalar for c, a in self._amplitudes.items()})

    __rmul__ = __mul__

    def distance(self, other):
        """ Largest entrywise difference """
        configs = set(self._amplitudes) | set(other.configurations())
        return max((abs(self.amplitude(c) - other.amplitude(c)) for c in configs), default=0.0)

    def __repr__(self):
        inner = ', '.join(f'{config}: {alpha:.6g}' for config, alpha in self.sorted_items())
        return f'Superposition({{{inner}}})'


class Decision(Enum):
    ACCEPTED = 'accepted'
    REJECTED = 'rejected'
    INCONCLUSIVE = 'inconclusive'


@dataclass(frozen=True)
class RecognitionResult:
    p_accept: float
    p_reject: float
    p_nonhalt: float
    steps: int
    halted: bool
    word: str = ''


class TraceStep(NamedTuple):
    """ Snapshot of one computation step; ``configurations`` is the superposition
    before the observation, sorted by state, head and stack """
    step: int
    configurations: Tuple[Tuple[Configuration, complex], ...]
    accept_increment: float
    reject_increment: float
    accepted: float
    rejected: float
    residual: float

    @property
    def total(self):
        return self.accepted + self.rejected + self.residual


def initial_superposition(spec, word):
    TapeContext.for_word(spec, word)
    return Superposition.basis(Configuration(spec.initial, 0, (STACK_BASE,)))


def _check_stack_base(config):
    assert config.stack and config.stack[0] == STACK_BASE and STACK_BASE not in config.stack[1:], (
        f'Configuration {config} lost its stack base')


def apply_evolution(spec, tape, psi):
    """ One application of the evolution operator, extended linearly """
    evolved = defaultdict(complex)
    for config, alpha in psi.items():
        _check_stack_base(config)
        sigma = tape[config.head]
        kept = config.stack[:-1]
        for q, d, omega, value in spec.columns.get((config.state, sigma, config.stack[-1]), ()):
            head = config.head
            if d is Direction.ADVANCE:
                if head == tape.last:
                    raise TapeOverrunError(
                        f'{config} advances past the right end-marker to state {q!r} on {tape.word!r}')
                head += 1
            evolved[Configuration(q, head, kept + omega)] += alpha * value
    return Superposition(evolved)


def measure(psi, accepting, rejecting):
    """ Projects onto the accepting, rejecting and non-halting subspaces.
    The residual is not renormalized """
    p_accept = sum(abs(a) ** 2 for c, a in psi.items() if c.state in accepting)
    p_reject = sum(abs(a) ** 2 for c, a in psi.items() if c.state in rejecting)
    residual = psi.restrict(lambda c: c.state not in accepting and c.state not in rejecting)
    return p_accept, p_reject, residual


def default_max_steps(word):
    return 20 * (len(word) + 2)


def require_well_formed(spec, force=False, tolerance=DEFAULT_TOLERANCE):
    """ Refuses automata that break a structural restriction or a
    well-formedness condition unless ``force`` is set """
    violations = cached_validate_structure(spec, tolerance)
    if violations:
        if not force:
            raise StructureError(violations)
        logger.warning('running a structurally invalid automaton (%d violation(s))', len(violations))
    summary = cached_check_all(spec, tolerance)
    if summary.passed:
        return summary
    if not force:
        raise NotWellFormedError(summary)
    logger.warning('running a non-well-formed automaton (%s failing)', ', '.join(summary.failed))
    return summary


def _steps(spec, word, max_steps, halt_eps):
    tape = TapeContext.for_word(spec, word)
    psi = Superposition.basis(Configuration(spec.initial, 0, (STACK_BASE,)))
    accepted = rejected = 0.0
    for step in range(1, max_steps + 1):
        evolved = apply_evolution(spec, tape, psi)
        accept_increment, reject_increment, psi = measure(evolved, spec.accepting, spec.rejecting)
        accepted += accept_increment
        rejected += reject_increment
        residual = psi.norm_squared()
        yield TraceStep(step, tuple(evolved.sorted_items()), accept_increment, reject_increment,
                        accepted, rejected, residual)
        if residual < halt_eps:
            return


def _recognize(spec, word, max_steps, halt_eps, tolerance):
    if max_steps is None:
        max_steps = default_max_steps(word)
    last = None
    for last in _steps(spec, word, max_steps, halt_eps):
        pass
    if last is None:
        TapeContext.for_word(spec, word)
        return RecognitionResult(0.0, 0.0, 1.0, 0, False, word)

    if abs(last.total - 1.0) > tolerance:
        logger.warning('probability not conserved on %r: total %.12g', word, last.total)
    halted = last.residual < halt_eps
    if not halted:
        logger.debug('%r still has residual %.3g after %d steps', word, last.residual, last.step)
    return RecognitionResult(last.accepted, last.rejected, last.residual, last.step, halted, word)


def recognize(spec, word, max_steps=None, halt_eps=HALT_EPS, force=False, tolerance=DEFAULT_TOLERANCE):
    """ Runs the measure-many recognition loop until the residual vanishes
    or ``max_steps`` (default 20·(|w| + 2)) is reached """
    require_well_formed(spec, force, tolerance)
    return _recognize(spec, word, max_steps, halt_eps, tolerance)


def recognize_many(spec, words, max_steps=None, halt_eps=HALT_EPS, force=False,
                   tolerance=DEFAULT_TOLERANCE, workers=None):
    """ Recognizes every word independently; results keep the input order """
    require_well_formed(spec, force, tolerance)
    run = partial(_recognize, spec, max_steps=max_steps, halt_eps=halt_eps, tolerance=tolerance)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(run, words))


def trace(spec, word, max_steps=None, halt_eps=HALT_EPS, force=False, tolerance=DEFAULT_TOLERANCE):
    require_well_formed(spec, force, tolerance)
    if max_steps is None:
        max_steps = default_max_steps(word)
    return list(_steps(spec, word, max_steps, halt_eps))


def decide(result, threshold=None):
    """ Without a threshold a strict majority decides; an explicit threshold
    must lie in (1/2, 1] and is compared with >= """
    if threshold is None:
        if result.p_accept > 0.5:
            return Decision.ACCEPTED
        if result.p_reject > 0.5:
            return Decision.REJECTED
        return Decision.INCONCLUSIVE
    if not 0.5 < threshold <= 1:
        raise ValueError(f'Threshold must lie in (1/2, 1], received {threshold}')
    if result.p_accept >= threshold:
        return Decision.ACCEPTED
    if result.p_reject >= threshold:
        return Decision.REJECTED
    return Decision.INCONCLUSIVE
