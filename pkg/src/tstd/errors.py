"""
Exception hierarchy for the tstd engine.
"""

from typing import Optional


class TstdError(Exception):
    """Root of every error raised by tstd."""


class FieldError(TstdError, ArithmeticError):
    """Invalid coefficient field or coefficient arithmetic."""


class ContextError(TstdError, ValueError):
    """Ring context mismatch or malformed ring description."""


class OrderingError(TstdError, ValueError):
    """Ordering rejected: unparseable, not t-local or not applicable."""


class EliminationError(OrderingError):
    """Elimination of variables that must stay local."""


class DivisionError(TstdError, ArithmeticError):
    """A division could not be carried out or failed verification."""


class StandardBasisError(TstdError):
    """A generator set does not have the required standard-basis status."""


class SaturationError(TstdError):
    """The saturation loop did not stabilise within the configured cap."""


class ParseError(TstdError, ValueError):
    """Syntax or validation error in textual input, with its position."""

    def __init__(self, message: str, line: Optional[int] = None,
                 column: Optional[int] = None, path: Optional[str] = None):
        self.message = message
        self.line = line
        self.column = column
        self.path = path
        super().__init__(self._render())

    def _render(self) -> str:
        where = []
        if self.path:
            where.append(self.path)
        if self.line is not None:
            where.append(str(self.line))
        if self.column is not None:
            where.append(str(self.column))
        if where:
            return f"{':'.join(where)}: {self.message}"
        return self.message

    def at(self, path: Optional[str] = None, line: Optional[int] = None) -> 'ParseError':
        """Return a copy located at the given path/line, keeping the column."""
        return ParseError(self.message,
                          line=line if line is not None else self.line,
                          column=self.column,
                          path=path if path is not None else self.path)
