"""Exception hierarchy shared by all pmech modules.

Everything mathematical derives from :class:`PMechError` so callers (and the
CLI) can distinguish algebra-level failures from usage errors.
"""


class PMechError(Exception):
    """Base class for mathematical errors raised by the library."""


class DivisionByZero(PMechError):
    """Division by the zero rational function or zero Gaussian rational."""


class DimensionMismatch(PMechError):
    """Operands built over different numbers of degrees of freedom."""


class PoleAtClassicalLimit(PMechError):
    """A coefficient has a pole at h2 = 0, so its 1-jet does not exist.

    Carries the offending monomial (when known) for diagnostics.
    """

    def __init__(self, message, monomial=None):
        super().__init__(message)
        self.monomial = monomial


class PoleAtEvaluation(PMechError):
    """A coefficient denominator vanishes at the requested numeric point."""


class NotClassical(PMechError):
    """A classical-sector operation received an hbar-dependent observable."""


class NoPreimage(PMechError):
    """Classical projection requested for a symbol with no recorded preimage."""


class IndexOutOfRange(Exception):
    """A variable index exceeds the configured degrees of freedom."""


class ParseError(Exception):
    """Syntax error in the expression grammar, with position and expectations."""

    def __init__(self, message, line, column, expected=()):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column
        self.expected = tuple(expected)
