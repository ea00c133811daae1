""" Truncated evolution matrices over finite configuration windows, and
numerical probes of the matrix identities behind the well-formedness conditions.

Matrix indices are 0-based throughout; row/column 1 of a textbook matrix is
index 0 here. Claims are only made on interior indices: a column is interior
when all its one-step successors lie in the window, a row when all its
one-step predecessors do.
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, Tuple

import numpy as np
import scipy.sparse

from .errors import DimensionError, PreconditionError, WindowCapError
from .evolve import Configuration, Superposition, TapeContext
from .model import DEFAULT_TOLERANCE, STACK_BASE, Direction
from .utils import config_order

logger = logging.getLogger(__name__)

DEFAULT_WINDOW_CAP = 10 ** 6
DENSE_LIMIT = 512
GRID_LIMIT = 32

SEEDS = ('base', 'initial')


@dataclass(frozen=True, eq=False)
class ConfigWindow:
    tape: TapeContext
    configs: Tuple[Configuration, ...]
    interior_cols: FrozenSet[int]
    interior_rows: FrozenSet[int]

    @property
    def index(self):
        return {config: position for position, config in enumerate(self.configs)}

    def __len__(self):
        return len(self.configs)


@dataclass(frozen=True, eq=False)
class TruncatedMatrix:
    """ A square complex matrix, dense below :DENSE_LIMIT: and CSR above,
    together with the index sets its claims are restricted to """

    data: object
    interior_cols: FrozenSet[int]
    interior_rows: FrozenSet[int]

    @classmethod
    def from_array(cls, array, interior_cols=None, interior_rows=None, dense_limit=DENSE_LIMIT):
        rows, cols = array.shape
        return cls(
            _store(array, dense_limit),
            frozenset(range(cols)) if interior_cols is None else frozenset(interior_cols),
            frozenset(range(rows)) if interior_rows is None else frozenset(interior_rows),
        )

    @property
    def shape(self):
        return self.data.shape

    @property
    def dim(self):
        return self.data.shape[1]

    @property
    def is_sparse(self):
        return scipy.sparse.issparse(self.data)

    def toarray(self):
        return self.data.toarray() if self.is_sparse else np.asarray(self.data)


@dataclass(frozen=True)
class UnitarityReport:
    column_deviation: float
    row_deviation: float
    tolerance: float
    interior_columns: int
    interior_rows: int

    @property
    def columns_orthonormal(self):
        return self.column_deviation <= self.tolerance

    @property
    def rows_normalized(self):
        return self.row_deviation <= self.tolerance

    @property
    def passed(self):
        return self.columns_orthonormal and self.rows_normalized


@dataclass(frozen=True)
class RowOrthogonality:
    """ Largest inner product between distinct interior rows, and the largest
    distance of an interior row norm from the set {0, 1} """
    inner_product: float
    norm_gap: float


def _store(array, dense_limit=DENSE_LIMIT):
    rows, cols = array.shape
    if max(rows, cols) < dense_limit:
        return array.toarray() if scipy.sparse.issparse(array) else np.asarray(array, dtype=complex)
    return scipy.sparse.csr_matrix(array, dtype=complex)


def _max_abs(array):
    if scipy.sparse.issparse(array):
        return float(abs(array).max()) if array.nnz else 0.0
    return float(np.abs(array).max()) if array.size else 0.0


def _row_norms(array):
    if scipy.sparse.issparse(array):
        return np.sqrt(np.asarray(abs(array).power(2).sum(axis=1)).ravel())
    return np.linalg.norm(array, axis=1)


def _columns(matrix, cols):
    return matrix.data[:, sorted(cols)]


def _rows(matrix, rows):
    return matrix.data[sorted(rows), :]


def _identity(n, like):
    return scipy.sparse.identity(n, dtype=complex, format='csr') if scipy.sparse.issparse(like) else np.eye(n)


def successors(spec, tape, config):
    """ One-step images of a configuration as (target, amplitude, on_tape) """
    sigma = tape[config.head]
    kept = config.stack[:-1]
    for q, d, omega, value in spec.columns.get((config.state, sigma, config.stack[-1]), ()):
        if d is Direction.ADVANCE:
            if config.head == tape.last:
                yield None, value, False
                continue
            yield Configuration(q, config.head + 1, kept + omega), value, True
        else:
            yield Configuration(q, config.head, kept + omega), value, True


def _valid_stack(stack):
    return bool(stack) and stack[0] == STACK_BASE and STACK_BASE not in stack[1:]


def predecessors(spec, tape, config):
    """ Every configuration with a nonzero transition into ``config``, found
    by inverting δ: the push word is one of the at most three suffixes of the
    target stack """
    stack = config.stack
    for d in Direction:
        head = config.head - 1 if d is Direction.ADVANCE else config.head
        if head < 0:
            continue
        sigma = tape[head]
        for length in range(min(2, len(stack)) + 1):
            omega = stack[len(stack) - length:]
            kept = stack[:len(stack) - length]
            for q1, tau, value in spec.incoming.get((sigma, config.state, d, omega), ()):
                source = kept + (tau,)
                if _valid_stack(source):
                    yield Configuration(q1, head, source), value


def _seed(spec, tape, seeds):
    if seeds == 'base':
        return [Configuration(state, head, (STACK_BASE,)) for state in spec.sorted_states for head in range(len(tape))]
    if seeds == 'initial':
        return [Configuration(spec.initial, 0, (STACK_BASE,))]
    raise ValueError(f'Unknown window seeds {seeds!r}, expected one of {SEEDS}')


def enumerate_window(spec, word, radius, seeds='base', cap=DEFAULT_WINDOW_CAP):
    """ Configurations reachable from the seeds within ``radius`` forward
    steps, closed under one-step predecessors """
    if radius < 0:
        raise ValueError(f'Radius must be non-negative, received {radius}')
    tape = TapeContext.for_word(spec, word)

    def admit(config):
        window[config] = None
        if len(window) > cap:
            raise WindowCapError(f'Window for {word!r} exceeds {cap} configurations at radius {radius}')

    window = {}
    frontier = []
    for config in _seed(spec, tape, seeds):
        if config not in window:
            admit(config)
            frontier.append(config)

    for _ in range(radius):
        reached = []
        for config in frontier:
            for target, _, on_tape in successors(spec, tape, config):
                if on_tape and target not in window:
                    admit(target)
                    reached.append(target)
        frontier = reached

    for config in list(window):
        for source, _ in predecessors(spec, tape, config):
            if source not in window:
                admit(source)

    configs = tuple(sorted(window, key=config_order))
    members = set(configs)
    interior_cols = frozenset(
        position for position, config in enumerate(configs)
        if all(on_tape and target in members for target, _, on_tape in successors(spec, tape, config))
    )
    interior_rows = frozenset(
        position for position, config in enumerate(configs)
        if not (config.head == 0 and config.state in spec.advance_targets)
        and all(source in members for source, _ in predecessors(spec, tape, config))
    )
    logger.debug('window over %r: %d configurations, %d interior columns, %d interior rows',
                 word, len(configs), len(interior_cols), len(interior_rows))
    return ConfigWindow(tape, configs, interior_cols, interior_rows)


def build_matrix(spec, window, dense_limit=DENSE_LIMIT):
    """ Entry (r, c) is the amplitude with which configuration c evolves into
    configuration r in one step """
    index = window.index
    rows, cols, values = [], [], []
    for col, config in enumerate(window.configs):
        for target, value, on_tape in successors(spec, window.tape, config):
            if on_tape and target in index:
                rows.append(index[target])
                cols.append(col)
                values.append(value)
    size = len(window)
    coo = scipy.sparse.coo_matrix((np.asarray(values, dtype=complex), (rows, cols)), shape=(size, size))
    return TruncatedMatrix(_store(coo.tocsr(), dense_limit), window.interior_cols, window.interior_rows)


def column_deviation(matrix, cols=None):
    """ max |G − I| over the Gram matrix of the given (default interior) columns """
    cols = matrix.interior_cols if cols is None else cols
    if not cols:
        return 0.0
    sub = _columns(matrix, cols)
    gram = sub.conj().T @ sub
    return _max_abs(gram - _identity(len(cols), gram))


def check_truncated_unitarity(matrix, window=None, tolerance=DEFAULT_TOLERANCE):
    """ Interior columns pairwise orthonormal and interior rows of unit norm """
    cols = window.interior_cols if window is not None else matrix.interior_cols
    rows = window.interior_rows if window is not None else matrix.interior_rows
    row_deviation = 0.0
    if rows:
        row_deviation = float(np.abs(_row_norms(_rows(matrix, rows)) - 1.0).max())
    return UnitarityReport(
        column_deviation=column_deviation(matrix, cols),
        row_deviation=row_deviation,
        tolerance=tolerance,
        interior_columns=len(cols),
        interior_rows=len(rows),
    )


def shift_fixture(n):
    """ The n×n truncation of an isometry that is not unitary: column 0 is
    (1/√2, 1/√2, 0, …) and column j ≥ 1 has a single 1 in row j + 1 """
    if n < 3:
        raise DimensionError(f'The shift fixture needs n >= 3, received {n}')
    array = scipy.sparse.lil_matrix((n, n), dtype=complex)
    array[0, 0] = array[1, 0] = np.sqrt(0.5)
    for col in range(1, n - 1):
        array[col + 1, col] = 1.0
    return TruncatedMatrix.from_array(array.tocsr(), interior_cols=range(n - 1))


def _require_orthonormal_columns(matrix, tolerance):
    deviation = column_deviation(matrix)
    if deviation > tolerance:
        raise PreconditionError(f'Interior columns are not orthonormal (deviation {deviation:.3g})')


def row_norm_bound_probe(matrix, tolerance=DEFAULT_TOLERANCE):
    """ Largest interior row norm of a matrix with orthonormal interior columns;
    it never exceeds 1 """
    _require_orthonormal_columns(matrix, tolerance)
    if not matrix.interior_rows:
        return 0.0
    return float(_row_norms(_rows(matrix, matrix.interior_rows)).max())


def row_orthogonality_probe(matrix, tolerance=DEFAULT_TOLERANCE):
    """ For a matrix with orthonormal interior columns, interior rows are
    pairwise orthogonal exactly when every interior row norm is 0 or 1 """
    _require_orthonormal_columns(matrix, tolerance)
    rows = matrix.interior_rows
    if not rows:
        return RowOrthogonality(0.0, 0.0)
    sub = _rows(matrix, rows)
    gram = sub @ sub.conj().T
    if scipy.sparse.issparse(gram):
        off_diagonal = gram - scipy.sparse.diags(gram.diagonal())
    else:
        off_diagonal = gram - np.diag(np.diag(gram))
    norms = _row_norms(sub)
    return RowOrthogonality(
        inner_product=_max_abs(off_diagonal),
        norm_gap=float(np.minimum(norms, np.abs(norms - 1.0)).max()),
    )


def banded_associativity_probe(a, b, c):
    """ max |(AB)C − A(BC)| over A's interior rows and C's interior columns """
    if a.shape[1] != b.shape[0] or b.shape[1] != c.shape[0]:
        raise DimensionError(f'Matrices of shapes {a.shape}, {b.shape}, {c.shape} are not conformable')
    difference = (a.data @ b.data) @ c.data - a.data @ (b.data @ c.data)
    rows, cols = sorted(a.interior_rows), sorted(c.interior_cols)
    if not rows or not cols:
        return 0.0
    return _max_abs(difference[rows, :][:, cols])


def random_banded(n, bandwidth, seed=None):
    """ Random complex matrix with nonzeros only within ``bandwidth`` of the diagonal """
    rng = np.random.default_rng(seed)
    offsets = list(range(-bandwidth, bandwidth + 1))
    scale = 1.0 / np.sqrt(2 * bandwidth + 1)
    diagonals = [
        scale * (rng.standard_normal(n - abs(k)) + 1j * rng.standard_normal(n - abs(k)))
        for k in offsets
    ]
    return TruncatedMatrix.from_array(scipy.sparse.diags(diagonals, offsets, shape=(n, n), format='csr'))


def random_banded_isometry(n, block=4, seed=None, unitary_blocks=False):
    """ Block-diagonal matrix whose blocks hold the leading columns of random
    unitaries. A block of height k keeps m ≤ k columns (all k with
    ``unitary_blocks``); the dropped columns are zero and not interior """
    rng = np.random.default_rng(seed)
    array = np.zeros((n, n), dtype=complex)
    interior = []
    for start in range(0, n, block):
        height = min(block, n - start)
        width = height if unitary_blocks else int(rng.integers(1, height + 1))
        q, _ = np.linalg.qr(rng.standard_normal((height, height)) + 1j * rng.standard_normal((height, height)))
        array[start:start + height, start:start + width] = q[:, :width]
        interior.extend(range(start, start + width))
    return TruncatedMatrix.from_array(array, interior_cols=interior)


def superposition_to_vector(psi, window):
    index = window.index
    vector = np.zeros(len(window), dtype=complex)
    for config, alpha in psi.items():
        if config not in index:
            raise DimensionError(f'{config} lies outside the window')
        vector[index[config]] = alpha
    return vector


def vector_to_superposition(vector, window):
    return Superposition({config: vector[position] for position, config in enumerate(window.configs)})


def dump_matrix(matrix):
    """ JSON form: dimension and sorted nonzero triplets [r, c, re, im] """
    coo = scipy.sparse.coo_matrix(matrix.data)
    triplets = sorted(
        [int(r), int(c), float(v.real), float(v.imag)]
        for r, c, v in zip(coo.row, coo.col, coo.data)
        if v != 0
    )
    return {'dim': matrix.dim, 'triplets': triplets}


def format_grid(matrix, precision=3):
    """ Plain-text grid of a small matrix """
    if matrix.dim > GRID_LIMIT:
        raise DimensionError(f'Grid output is limited to {GRID_LIMIT} columns, matrix has {matrix.dim}')
    array = matrix.toarray()

    def cell(value):
        if value == 0:
            return '0'
        if value.imag == 0:
            return f'{value.real:.{precision}f}'
        return f'{value.real:.{precision}f}{value.imag:+.{precision}f}i'

    cells = [[cell(complex(value)) for value in row] for row in array]
    width = max(len(text) for row in cells for text in row)
    return '\n'.join(' '.join(text.rjust(width) for text in row) for row in cells) + '\n'
