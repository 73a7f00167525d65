"""Exception types shared across the package.

The CLI maps these onto exit codes: ParseError -> 2, ValidationError -> 3,
ConvergenceError -> 4.
"""

from __future__ import annotations


class ParseError(ValueError):
    """Malformed input file. Carries the 1-based line number when known."""

    def __init__(self, message: str, lineno: int | None = None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class ValidationError(ValueError):
    """Input or parameter violates a documented precondition."""


class ConvergenceError(RuntimeError):
    """Iterative solver hit its iteration cap. Carries the last residual."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual
