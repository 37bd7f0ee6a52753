"""Exception hierarchy shared by every layer of the emulator.

Each error also derives from ``ValueError`` so callers that only know the
builtin keep working.
"""

from __future__ import annotations

from dataclasses import dataclass


class EmulatorError(Exception):
    """Root of all emulator errors."""


class RangeError(EmulatorError, ValueError):
    """A value lies outside the range an operation accepts."""


class ShapeError(EmulatorError, ValueError):
    """Operand dimensions do not line up."""


class SizeError(EmulatorError, ValueError):
    """A result or an input would be too large to represent or to build."""


class GateError(EmulatorError, ValueError):
    """Unknown gate, wrong parameter arity or bad target list."""


class PreconditionError(EmulatorError, ValueError):
    """An operation was called with inputs violating its contract."""


class CircuitError(EmulatorError, ValueError):
    """A circuit fails validation."""


@dataclass(frozen=True)
class Diagnostic:
    """One parser finding, 1-based line and column."""

    line: int
    column: int
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.message}"


class CircuitParseError(CircuitError):
    """Raised with every diagnostic collected while parsing a ``.qc`` text."""

    def __init__(self, diagnostics: list[Diagnostic], source: str = "<string>") -> None:
        self.diagnostics = list(diagnostics)
        self.source = source
        lines = [f"{source}:{d}" for d in self.diagnostics]
        super().__init__("\n".join(lines) or f"{source}: invalid circuit")
