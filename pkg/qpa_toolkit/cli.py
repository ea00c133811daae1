""" The ``qpa`` command line.

Exit codes: 0 success / accepted, 1 rejected, 2 violations / inconclusive,
3 errors (unreadable or malformed input, refused or failed runs).
Automaton arguments are JSON files, or ``zoo:<name>`` for a zoo entry.
"""

import argparse
import csv
import io
import logging
import sys
from dataclasses import asdict

from . import __version__
from .config import OUTPUT_MODES, CliConfig, parse_max_steps
from .dfa2rpa import compile_dfa
from .documents import dump_spec, load_dfa, load_spec
from .errors import QpaError, StructureError
from .evolve import Decision, decide, recognize, recognize_many, trace
from .matrixlab import (
    DEFAULT_WINDOW_CAP, GRID_LIMIT, SEEDS,
    build_matrix, check_truncated_unitarity, dump_matrix, enumerate_window, format_grid,
)
from .model import validate_structure
from .registry import EXHIBIT, RECOGNIZER
from .schema import render, sdl
from .utils import dumps
from .wellformed import check_all
from .zoo import exhibits, get_entry, recognizers

logger = logging.getLogger(__name__)

ZOO_PREFIX = 'zoo:'

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_VIOLATIONS = 2
EXIT_ERROR = 3

DECISION_EXIT = {
    Decision.ACCEPTED: EXIT_OK,
    Decision.REJECTED: EXIT_REJECTED,
    Decision.INCONCLUSIVE: EXIT_VIOLATIONS,
}

CSV_COLUMNS = ('word', 'p_accept', 'p_reject', 'p_nonhalt', 'steps', 'halted', 'decision')

WITNESSES_SHOWN = 3


def load_automaton(reference, strict=True):
    if reference.startswith(ZOO_PREFIX):
        return get_entry(reference[len(ZOO_PREFIX):]).spec
    return load_spec(reference, strict=strict)


def _write(path, text):
    if path in (None, '-'):
        sys.stdout.write(text)
    else:
        with open(path, 'w', encoding='utf-8', newline='') as handle:
            handle.write(text)


def _json_mode(config):
    return config.output_mode == 'json'


def _format_summary(summary):
    lines = [f'suite: {summary.suite} (tolerance {summary.tolerance:g})']
    for result in summary.results:
        if result.passed:
            lines.append(f'  {result.condition_id:<6} pass')
            continue
        lines.append(f'  {result.condition_id:<6} FAIL  {result.violations} violation(s), '
                     f'worst residual {result.worst_residual:.6g}')
        lines.extend(f'      {report}' for report in result.reports[:WITNESSES_SHOWN])
    if summary.passed:
        lines.append('well-formed')
    else:
        lines.append(f'NOT well-formed: {summary.total_violations} violation(s)')
    return '\n'.join(lines) + '\n'


def _recognition_row(result, decision):
    row = asdict(result)
    row['decision'] = decision.value
    return row


def _format_result(row):
    return (
        f'word       {row["word"]!r}\n'
        f'p_accept   {row["p_accept"]:.12g}\n'
        f'p_reject   {row["p_reject"]:.12g}\n'
        f'p_nonhalt  {row["p_nonhalt"]:.12g}\n'
        f'steps      {row["steps"]} ({"halted" if row["halted"] else "not halted"})\n'
        f'decision   {row["decision"]}\n'
    )


def _format_trace(steps):
    lines = []
    for snapshot in steps:
        lines.append(f'step {snapshot.step}: +accept {snapshot.accept_increment:.6g} '
                     f'+reject {snapshot.reject_increment:.6g} residual {snapshot.residual:.6g} '
                     f'total {snapshot.total:.12g}')
        for config, alpha in snapshot.configurations:
            lines.append(f'    {config}  {alpha.real:+.6g}{alpha.imag:+.6g}i')
    return '\n'.join(lines) + '\n' if lines else ''


def cmd_check(args, config):
    try:
        spec = load_automaton(args.file)
    except StructureError as error:
        if _json_mode(config):
            _write(None, render('check', {'file': args.file, 'structure_violations': error.violations}))
        else:
            print(f'{args.file}: {error}')
            for violation in error.violations:
                print(f'  {violation}')
        return EXIT_ERROR

    summary = check_all(spec, config.tolerance, simplified=True if args.simplified else None)
    if _json_mode(config):
        _write(None, render('check', {'file': args.file, 'structure_violations': [], 'summary': summary}))
    else:
        _write(None, _format_summary(summary))
    return EXIT_OK if summary.passed else EXIT_VIOLATIONS


def cmd_run(args, config):
    spec = load_automaton(args.file)
    word = args.word
    kwargs = {'max_steps': config.step_limit, 'force': args.force, 'tolerance': config.tolerance}
    steps = trace(spec, word, **kwargs) if args.trace else None
    result = recognize(spec, word, **kwargs)
    decision = decide(result, config.threshold)
    row = _recognition_row(result, decision)
    if _json_mode(config):
        _write(None, render('run', {'result': row, 'trace': steps}))
    else:
        if steps is not None:
            _write(None, _format_trace(steps))
        _write(None, _format_result(row))
    return DECISION_EXIT[decision]


def _csv_text(rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([
            row['word'], repr(row['p_accept']), repr(row['p_reject']), repr(row['p_nonhalt']),
            row['steps'], 'true' if row['halted'] else 'false', row['decision'],
        ])
    return buffer.getvalue()


def cmd_batch(args, config):
    spec = load_automaton(args.file)
    with open(args.words, encoding='utf-8') as handle:
        words = [line.strip() for line in handle.read().splitlines()]
    results = recognize_many(spec, words, max_steps=config.step_limit, force=args.force,
                             tolerance=config.tolerance, workers=config.workers)
    rows = [_recognition_row(result, decide(result, config.threshold)) for result in results]
    logger.debug('batch of %d word(s) completed', len(rows))

    if args.csv_out:
        _write(args.csv_out, _csv_text(rows))
    if _json_mode(config):
        _write(None, render('batch', {'rows': rows}))
    elif config.output_mode == 'csv':
        if args.csv_out != '-':
            _write(None, _csv_text(rows))
    elif args.csv_out:
        print(f'{len(rows)} row(s) written to {args.csv_out}')
    else:
        for row in rows:
            print(f'{row["word"]!r:<20} accept {row["p_accept"]:.6g}  reject {row["p_reject"]:.6g}  '
                  f'nonhalt {row["p_nonhalt"]:.6g}  {row["decision"]}')
    return EXIT_OK


def cmd_compile_dfa(args, config):
    dfa = load_dfa(args.input)
    spec = compile_dfa(dfa)
    violations = validate_structure(spec, config.tolerance)
    if violations:
        raise StructureError(violations)
    summary = check_all(spec, config.tolerance, simplified=True)
    if summary.passed:
        _write(args.destination, dump_spec(spec))
    if _json_mode(config):
        payload = {
            'output': args.destination if summary.passed else None,
            'states': len(spec.states),
            'transitions': len(spec.delta),
            'summary': summary,
        }
        _write(None, render('compile', payload))
    elif summary.passed:
        print(f'{len(spec.states)}-state automaton with {len(spec.delta)} transitions written to {args.destination}')
    else:
        _write(None, _format_summary(summary))
    return EXIT_OK if summary.passed else EXIT_VIOLATIONS


def cmd_matrix(args, config):
    spec = load_automaton(args.file)
    window = enumerate_window(spec, args.word, args.radius, seeds=args.seeds, cap=args.cap)
    matrix = build_matrix(spec, window)
    report = check_truncated_unitarity(matrix, window, config.tolerance) if args.verify else None
    dump = dump_matrix(matrix) if args.dump is not None else None

    if args.dump not in (None, '-'):
        _write(args.dump, dumps(dump))
    if _json_mode(config):
        payload = {
            'word': args.word, 'radius': args.radius, 'seeds': args.seeds,
            'window_size': len(window), 'unitarity': report,
            'dump': dump if args.dump == '-' else None,
        }
        _write(None, render('matrix', payload))
    else:
        print(f'window over {args.word!r}: {len(window)} configurations, '
              f'{len(window.interior_cols)} interior columns, {len(window.interior_rows)} interior rows')
        if report is not None:
            print(f'column deviation {report.column_deviation:.6g}')
            print(f'row deviation    {report.row_deviation:.6g}')
            print('unitary on interior indices' if report.passed else 'NOT unitary on interior indices')
        if args.dump == '-':
            if matrix.dim <= GRID_LIMIT:
                _write(None, format_grid(matrix))
            _write(None, dumps(dump))
    if report is not None and not report.passed:
        return EXIT_VIOLATIONS
    return EXIT_OK


def cmd_zoo_list(args, config):
    entries = recognizers() + exhibits()
    if _json_mode(config):
        _write(None, render('zoo', entries))
        return EXIT_OK
    for title, group in (('recognizers', recognizers()), ('exhibits', exhibits())):
        print(f'{title}:')
        for entry in group:
            claimed = f'{entry.claimed_probability:.6g}' if entry.claimed_probability is not None else '-'
            print(f'  {entry.name:<12} {len(entry.spec.states):>3} states  p={claimed:<10} {entry.description}')
    return EXIT_OK


def cmd_zoo_export(args, config):
    _write(args.out, dump_spec(get_entry(args.name).spec))
    return EXIT_OK


def cmd_schema(args, config):
    print(sdl())
    return EXIT_OK


def _common_options():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--tolerance', type=float, default=argparse.SUPPRESS,
                        help='Numeric tolerance (default 1e-9, env QPA_TOLERANCE)')
    common.add_argument('--output', choices=OUTPUT_MODES, default=argparse.SUPPRESS,
                        help='Output mode (default human, env QPA_OUTPUT)')
    common.add_argument('--json', dest='output', action='store_const', const='json', default=argparse.SUPPRESS,
                        help='Shorthand for --output json')
    common.add_argument('-v', '--verbose', action='count', default=argparse.SUPPRESS, help='Debug logging')
    return common


def _run_options(parser):
    parser.add_argument('--max-steps', type=parse_max_steps, default=None, help='Step limit or "auto"')
    parser.add_argument('--threshold', type=float, default=None,
                        help='Decision threshold in (0.5, 1]; strict majority when omitted')
    parser.add_argument('--force', action='store_true', help='Run even if the automaton is not well-formed')


def build_parser():
    common = _common_options()
    parser = argparse.ArgumentParser(prog='qpa', parents=[common],
                                     description='Quantum pushdown automata: check, run, compile and inspect')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    commands = parser.add_subparsers(dest='command', required=True)

    check = commands.add_parser('check', parents=[common], help='Evaluate the well-formedness conditions')
    check.add_argument('file', help='Automaton JSON file or zoo:<name>')
    check.add_argument('--simplified', action='store_true', help='Use the simplified suite')
    check.set_defaults(handler=cmd_check)

    run = commands.add_parser('run', parents=[common], help='Recognize one word')
    run.add_argument('file')
    run.add_argument('word', nargs='?', default='', help='Input word (empty when omitted)')
    run.add_argument('--trace', action='store_true', help='Print every computation step')
    _run_options(run)
    run.set_defaults(handler=cmd_run)

    batch = commands.add_parser('batch', parents=[common], help='Recognize every word of a file')
    batch.add_argument('file')
    batch.add_argument('words', help='UTF-8 file with one word per line')
    batch.add_argument('--csv-out', help='CSV destination, - for stdout')
    batch.add_argument('--workers', type=int, default=None, help='Worker threads (env QPA_WORKERS)')
    _run_options(batch)
    batch.set_defaults(handler=cmd_batch)

    compile_dfa_parser = commands.add_parser('compile-dfa', parents=[common],
                                             help='Compile a DFA into a reversible automaton')
    compile_dfa_parser.add_argument('input', help='DFA JSON file')
    compile_dfa_parser.add_argument('destination', metavar='output', help='Destination of the compiled automaton')
    compile_dfa_parser.set_defaults(handler=cmd_compile_dfa)

    matrix = commands.add_parser('matrix', parents=[common], help='Build and verify a truncated evolution matrix')
    matrix.add_argument('file')
    matrix.add_argument('--word', default='')
    matrix.add_argument('--radius', type=int, required=True)
    matrix.add_argument('--seeds', choices=SEEDS, default='base')
    matrix.add_argument('--cap', type=int, default=DEFAULT_WINDOW_CAP, help='Largest window allowed')
    matrix.add_argument('--verify', action='store_true')
    matrix.add_argument('--dump', nargs='?', const='-', default=None, help='Write the matrix as JSON')
    matrix.set_defaults(handler=cmd_matrix)

    zoo = commands.add_parser('zoo', parents=[common], help='Built-in automata')
    zoo_commands = zoo.add_subparsers(dest='zoo_command', required=True)
    zoo_list = zoo_commands.add_parser('list', parents=[common],
                                       help=f'List {RECOGNIZER}s and {EXHIBIT}s')
    zoo_list.set_defaults(handler=cmd_zoo_list)
    zoo_export = zoo_commands.add_parser('export', parents=[common], help='Write a zoo automaton as JSON')
    zoo_export.add_argument('name')
    zoo_export.add_argument('--out', default=None)
    zoo_export.set_defaults(handler=cmd_zoo_export)

    schema = commands.add_parser('schema', parents=[common], help='Print the GraphQL schema of JSON outputs')
    schema.set_defaults(handler=cmd_schema)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if getattr(args, 'verbose', None) else logging.WARNING,
        stream=sys.stderr,
        format='%(levelname)s %(name)s: %(message)s',
    )
    try:
        config = CliConfig.from_env().override(
            tolerance=getattr(args, 'tolerance', None),
            output_mode=getattr(args, 'output', None),
            max_steps=getattr(args, 'max_steps', None),
            threshold=getattr(args, 'threshold', None),
            workers=getattr(args, 'workers', None),
        )
        return args.handler(args, config)
    except (QpaError, OSError, ValueError) as error:
        logger.debug('command failed', exc_info=True)
        print(f'qpa: error: {error}', file=sys.stderr)
        return EXIT_ERROR
