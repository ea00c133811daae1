""" Exceptions raised by the toolkit """


class QpaError(Exception):
    """ Base class for every toolkit error """


class SpecFormatError(QpaError):
    """ An interchange document could not be parsed """


class StructureError(QpaError):
    """ A transition table breaks the structural restrictions """

    def __init__(self, violations):
        self.violations = list(violations)
        first = self.violations[0] if self.violations else None
        super().__init__(
            f'{len(self.violations)} structural violation(s), first: {first}')


class UnknownSymbolError(QpaError):
    """ A symbol or state is not declared by the automaton """


class IllegalWordError(QpaError):
    """ An input word contains symbols outside the input alphabet """


class TapeOverrunError(QpaError):
    """ A live branch advanced past the right end-marker """


class NotWellFormedError(QpaError):
    """ Recognition was refused because the automaton is not unitary """

    def __init__(self, summary):
        self.summary = summary
        super().__init__(
            f'Automaton is not well-formed ({summary.total_violations} violation(s)); '
            'pass force=True to run it anyway')


class WindowCapError(QpaError):
    """ A configuration window grew beyond its cap """


class DimensionError(QpaError):
    """ Matrices are not conformable """


class PreconditionError(QpaError):
    """ A probe was called on a matrix that does not meet its precondition """


class IncompleteDfaError(QpaError):
    """ A DFA is partial or empty """


class ConfigError(QpaError, ValueError):
    """ Invalid command-line or environment configuration """
