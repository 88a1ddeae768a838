"""
Exception hierarchy for the sqsp package.

Every error derives from `SqspError` and from the builtin exception a caller
would naturally expect, so `except ValueError` keeps working.
"""
from typing import Optional


class SqspError(Exception):
    """Base class for all sqsp errors."""


class SpecError(SqspError, ValueError):
    """
    A state specification violates one of its invariants.

    :ivar invariant: short name of the violated invariant.
    :vartype invariant: str
    """

    invariant: str

    def __init__(self, message: str, invariant: str = "schema"):
        super().__init__(f"{message} (invariant: {invariant})")
        self.invariant = invariant


class CircuitError(SqspError, ValueError):
    """Malformed instruction or circuit."""


class CircuitParseError(CircuitError):
    """Syntax error in the circuit text format."""

    line_number: Optional[int]

    def __init__(self, message: str, line_number: Optional[int] = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class SynthesisError(SqspError, ValueError):
    """A generator was asked for a block it cannot build with the wires given."""


class SimulationError(SqspError, RuntimeError):
    """The simulator cannot execute the request."""
