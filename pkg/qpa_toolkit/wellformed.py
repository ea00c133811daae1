""" Well-formedness conditions of a QPA transition function, evaluated as
exhaustive finite sums with one report per violated quantifier instance.

General suite: LPC, OCV, RVN, SEP1a, SEP1b, SEP2, SEP3a, SEP3b.
Simplified suite (over φ(q1,σ,τ,q,ω) = δ(q1,σ,τ,q,D(q),ω)): LPC2, OCV2, RVN2, SEP_a, SEP_b.
"""

import logging
import weakref
from collections import defaultdict
from dataclasses import dataclass, field
from typing import List, NamedTuple, Tuple

from .errors import PreconditionError
from .model import DEFAULT_TOLERANCE, Direction, Kind, enumerate_push_words, validate_structure

logger = logging.getLogger(__name__)

DEFAULT_REPORT_CAP = 100

GENERAL_CONDITIONS = ('LPC', 'OCV', 'RVN', 'SEP1a', 'SEP1b', 'SEP2', 'SEP3a', 'SEP3b')
SIMPLIFIED_CONDITIONS = ('LPC2', 'OCV2', 'RVN2', 'SEP_a', 'SEP_b')

# pylint: disable=C0103


class ConditionReport(NamedTuple):
    condition_id: str
    witness: Tuple[str, ...]
    residual: float

    def __str__(self):
        return f'{self.condition_id}({", ".join(self.witness)}) residual={self.residual:.3g}'


@dataclass
class ConditionResult:
    condition_id: str
    violations: int
    worst_residual: float
    reports: List[ConditionReport] = field(default_factory=list)

    @property
    def passed(self):
        return self.violations == 0


@dataclass
class ConditionSummary:
    suite: str
    tolerance: float
    results: List[ConditionResult]

    @property
    def passed(self):
        return all(result.passed for result in self.results)

    @property
    def total_violations(self):
        return sum(result.violations for result in self.results)

    @property
    def worst_residual(self):
        return max((result.worst_residual for result in self.results), default=0.0)

    @property
    def failed(self):
        return [result.condition_id for result in self.results if not result.passed]

    def result(self, condition_id):
        for result in self.results:
            if result.condition_id == condition_id:
                return result
        raise KeyError(condition_id)


class _View:
    """ Nonzero entries of a spec restricted to legal push words, indexed the
    ways the condition sums need them """

    def __init__(self, spec, simplified=False):
        self.spec = spec
        legal = {tau: set(enumerate_push_words(tau, spec.alphabets)) for tau in spec.alphabets.delta_alpha}
        self.entries = [
            (key, value) for key, value in spec.live_entries
            if key.tau in legal and key.omega in legal[key.tau]
            and (not simplified or spec.directions.get(key.q) is key.d)
        ]
        self.weights = defaultdict(float)
        self.by_target = defaultdict(list)
        for key, value in self.entries:
            self.weights[(key.sigma, key.q, key.d, key.omega)] += abs(value) ** 2
            self.by_target[(key.sigma, key.q, key.d, key.omega)].append((key.source, value))


def _sorted_capped(reports, cap):
    reports = sorted(reports, key=lambda report: report.witness)
    return reports if cap is None else reports[:cap]


def _local_probability(view, condition_id, tolerance):
    sums = defaultdict(float)
    for key, value in view.entries:
        sums[key.source] += abs(value) ** 2
    reports = []
    for triple in view.spec.triples:
        residual = abs(sums.get(triple, 0.0) - 1.0)
        if residual > tolerance:
            reports.append(ConditionReport(condition_id, triple, residual))
    return reports


def _column_orthogonality(view, condition_id, tolerance):
    products = defaultdict(complex)
    for group in view.by_target.values():
        for source_a, a in group:
            for source_b, b in group:
                if source_a < source_b:
                    products[(source_a, source_b)] += a.conjugate() * b
    reports = []
    for (source_a, source_b), product in products.items():
        if abs(product) > tolerance:
            q1, sigma, tau1 = source_a
            q2, _, tau2 = source_b
            reports.append(ConditionReport(condition_id, (q1, sigma, tau1, q2, tau2), abs(product)))
    return reports


def _row_norm(view, tolerance):
    spec = view.spec
    gamma = spec.alphabets.gamma
    delta_alpha = spec.alphabets.delta_alpha
    weights = view.weights
    reports = []
    for q1 in spec.sorted_states:
        for sigma1 in gamma:
            for sigma2 in gamma:
                for tau1 in delta_alpha:
                    for tau2 in delta_alpha:
                        total = sum(
                            weights.get((sigma1, q1, Direction.ADVANCE, omega), 0.0)
                            + weights.get((sigma2, q1, Direction.STAY, omega), 0.0)
                            for omega in ((), (tau2,), (tau1, tau2))
                        )
                        residual = abs(total - 1.0)
                        if residual > tolerance:
                            reports.append(ConditionReport('RVN', (q1, sigma1, sigma2, tau1, tau2), residual))
    return reports


def _row_norm_simplified(view, tolerance):
    spec = view.spec
    weights = view.weights
    reports = []
    for q1 in spec.sorted_states:
        d = spec.direction_of(q1)
        for sigma1 in spec.alphabets.gamma:
            for tau1 in spec.alphabets.delta_alpha:
                for tau2 in spec.alphabets.delta_alpha:
                    total = sum(
                        weights.get((sigma1, q1, d, omega), 0.0)
                        for omega in ((), (tau2,), (tau1, tau2))
                    )
                    residual = abs(total - 1.0)
                    if residual > tolerance:
                        reports.append(ConditionReport('RVN2', (q1, sigma1, tau1, tau2), residual))
    return reports


def _separability_sums(view):
    """ Accumulates the a) and b) separability sums for every pair of source
    triples, keyed by (A, B, τ3, dA, dB) """
    long_by_last = defaultdict(list)
    single = defaultdict(list)
    long_by_target = defaultdict(list)
    for key, value in view.entries:
        if len(key.omega) == 2:
            long_by_last[(key.q, key.d, key.omega[1])].append((key.source, key.omega[0], value))
            long_by_target[(key.q, key.d)].append((key.source, key.omega[1], value))
        elif len(key.omega) == 1:
            single[(key.q, key.d)].append((key.source, key.omega[0], value))

    sums_a = defaultdict(complex)
    sums_b = defaultdict(complex)
    for key, a in view.entries:
        if len(key.omega) == 1:
            partners = long_by_last.get((key.q, key.d, key.omega[0]), ())
            for source_b, tau3, b in partners:
                sums_a[(key.source, source_b, tau3, key.d)] += a.conjugate() * b
        elif not key.omega:
            for source_b, tau3, b in single.get((key.q, key.d), ()):
                sums_a[(key.source, source_b, tau3, key.d)] += a.conjugate() * b
            for source_b, tau3, b in long_by_target.get((key.q, key.d), ()):
                sums_b[(key.source, source_b, tau3, key.d)] += a.conjugate() * b
    return sums_a, sums_b


def _separability_same_symbol(view, ids, tolerance):
    """ Separability condition I (and its simplified form): pairs share σ and
    the sum runs over both directions """
    sums_a, sums_b = _separability_sums(view)
    reports = []
    for condition_id, sums in zip(ids, (sums_a, sums_b)):
        merged = defaultdict(complex)
        for (source_a, source_b, tau3, _), total in sums.items():
            if source_a[1] == source_b[1]:
                merged[(source_a, source_b, tau3)] += total
        for (source_a, source_b, tau3), total in merged.items():
            if abs(total) > tolerance:
                q1, sigma, tau1 = source_a
                q2, _, tau2 = source_b
                reports.append(ConditionReport(condition_id, (q1, sigma, tau1, q2, tau2, tau3), abs(total)))
    return reports


def _separability_mixed(view, tolerance):
    """ Separability conditions II and III: head directions differ between the
    two sides, tape symbols are unrestricted """
    spec = view.spec
    stay = defaultdict(list)
    advance = defaultdict(list)
    for key, value in view.entries:
        bucket = stay if key.d is Direction.STAY else advance
        bucket[(key.q, key.omega)].append((key.source, value))

    products = defaultdict(complex)
    for target, group in stay.items():
        for source_a, a in group:
            for source_b, b in advance.get(target, ()):
                products[(source_a, source_b)] += a.conjugate() * b
    reports = [
        ConditionReport('SEP2', source_a + source_b, abs(total))
        for (source_a, source_b), total in products.items()
        if abs(total) > tolerance
    ]

    # Separability III pairs A's direction d1 with B's d2 != d1 at the same target state
    long_by_last = defaultdict(list)
    single = defaultdict(list)
    long_by_state = defaultdict(list)
    for key, value in view.entries:
        if len(key.omega) == 2:
            long_by_last[(key.q, key.d, key.omega[1])].append((key.source, key.omega[0], value))
            long_by_state[(key.q, key.d)].append((key.source, key.omega[1], value))
        elif len(key.omega) == 1:
            single[(key.q, key.d)].append((key.source, key.omega[0], value))

    sums_a = defaultdict(complex)
    sums_b = defaultdict(complex)
    for key, a in view.entries:
        other = Direction.STAY if key.d is Direction.ADVANCE else Direction.ADVANCE
        if len(key.omega) == 1:
            for source_b, tau3, b in long_by_last.get((key.q, other, key.omega[0]), ()):
                sums_a[(key.source, source_b, tau3, key.d, other)] += a.conjugate() * b
        elif not key.omega:
            for source_b, tau3, b in single.get((key.q, other), ()):
                sums_a[(key.source, source_b, tau3, key.d, other)] += a.conjugate() * b
            for source_b, tau3, b in long_by_state.get((key.q, other), ()):
                sums_b[(key.source, source_b, tau3, key.d, other)] += a.conjugate() * b

    for condition_id, sums in (('SEP3a', sums_a), ('SEP3b', sums_b)):
        for (source_a, source_b, tau3, d1, d2), total in sums.items():
            if abs(total) > tolerance:
                witness = source_a + source_b + (tau3, d1.value, d2.value)
                reports.append(ConditionReport(condition_id, witness, abs(total)))

    logger.debug('mixed-direction separability on %d states: %d report(s)', len(spec.states), len(reports))
    return reports


def _select(reports, condition_id):
    return [report for report in reports if report.condition_id == condition_id]


def check_local_probability(spec, tolerance=DEFAULT_TOLERANCE, cap=DEFAULT_REPORT_CAP):
    return _sorted_capped(_local_probability(_View(spec), 'LPC', tolerance), cap)


def check_column_orthogonality(spec, tolerance=DEFAULT_TOLERANCE, cap=DEFAULT_REPORT_CAP):
    return _sorted_capped(_column_orthogonality(_View(spec), 'OCV', tolerance), cap)


def check_row_norm(spec, tolerance=DEFAULT_TOLERANCE, cap=DEFAULT_REPORT_CAP):
    return _sorted_capped(_row_norm(_View(spec), tolerance), cap)


def check_separability(spec, tolerance=DEFAULT_TOLERANCE, cap=DEFAULT_REPORT_CAP):
    """ Separability conditions I a/b, II and III a/b; the cap applies per condition """
    view = _View(spec)
    reports = _separability_same_symbol(view, ('SEP1a', 'SEP1b'), tolerance)
    reports += _separability_mixed(view, tolerance)
    return [
        report
        for condition_id in ('SEP1a', 'SEP1b', 'SEP2', 'SEP3a', 'SEP3b')
        for report in _sorted_capped(_select(reports, condition_id), cap)
    ]


def _require_directions(spec):
    if spec.directions is None or any(state not in spec.directions for state in spec.states):
        raise PreconditionError('The simplified conditions need a direction for every state')


def _simplified_reports(spec, tolerance):
    _require_directions(spec)
    view = _View(spec, simplified=True)
    reports = _local_probability(view, 'LPC2', tolerance)
    reports += _column_orthogonality(view, 'OCV2', tolerance)
    reports += _row_norm_simplified(view, tolerance)
    reports += _separability_same_symbol(view, ('SEP_a', 'SEP_b'), tolerance)
    return reports


def check_simplified(spec, tolerance=DEFAULT_TOLERANCE, cap=DEFAULT_REPORT_CAP):
    """ The simplified suite; the cap applies per condition """
    reports = _simplified_reports(spec, tolerance)
    return [
        report
        for condition_id in SIMPLIFIED_CONDITIONS
        for report in _sorted_capped(_select(reports, condition_id), cap)
    ]


def _general_reports(spec, tolerance):
    view = _View(spec)
    reports = _local_probability(view, 'LPC', tolerance)
    reports += _column_orthogonality(view, 'OCV', tolerance)
    reports += _row_norm(view, tolerance)
    reports += _separability_same_symbol(view, ('SEP1a', 'SEP1b'), tolerance)
    reports += _separability_mixed(view, tolerance)
    return reports


_SUITES = {
    Kind.GENERAL: ('general', GENERAL_CONDITIONS, _general_reports),
    Kind.SIMPLIFIED: ('simplified', SIMPLIFIED_CONDITIONS, _simplified_reports),
    Kind.REVERSIBLE: ('simplified', SIMPLIFIED_CONDITIONS, _simplified_reports),
}


def check_all(spec, tolerance=DEFAULT_TOLERANCE, cap=DEFAULT_REPORT_CAP, simplified=None):
    """ Runs the suite matching the automaton kind and summarizes it; pass
    ``simplified`` to force one suite regardless of the kind """
    kind = spec.kind if simplified is None else (Kind.SIMPLIFIED if simplified else Kind.GENERAL)
    suite, condition_ids, evaluate = _SUITES[kind]
    reports = evaluate(spec, tolerance)
    results = []
    for condition_id in condition_ids:
        selected = _select(reports, condition_id)
        results.append(ConditionResult(
            condition_id=condition_id,
            violations=len(selected),
            worst_residual=max((report.residual for report in selected), default=0.0),
            reports=_sorted_capped(selected, cap),
        ))
    summary = ConditionSummary(suite=suite, tolerance=tolerance, results=results)
    logger.debug('%s suite: %d violation(s)', suite, summary.total_violations)
    return summary


_verdicts = weakref.WeakKeyDictionary()


def _memoized(spec, key, compute):
    per_spec = _verdicts.setdefault(spec, {})
    if key not in per_spec:
        per_spec[key] = compute()
    return per_spec[key]


def cached_check_all(spec, tolerance=DEFAULT_TOLERANCE):
    """ :check_all: memoized per spec instance; specs are immutable """
    return _memoized(spec, ('conditions', tolerance), lambda: check_all(spec, tolerance))


def cached_validate_structure(spec, tolerance=DEFAULT_TOLERANCE):
    return _memoized(spec, ('structure', tolerance), lambda: tuple(validate_structure(spec, tolerance)))
