"""Typed exceptions shared across the toolkit.

The CLI maps these onto process exit codes, so the distinctions matter:
input that cannot be read, input that violates a documented precondition,
a computation that ran out of budget, and an internal identity that a
theorem says can never fail.  The last one is the loud alarm.
"""


class EquiblowError(Exception):
    """Base class for all toolkit errors."""


class PolyParseError(EquiblowError):
    """Malformed polynomial text.  Carries the offending position."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ModelFileError(EquiblowError):
    """Malformed model file (bad key, bad value shape, bad syntax)."""


class PreconditionError(EquiblowError):
    """Input violates a documented precondition of the operation."""


class BudgetExceededError(EquiblowError):
    """A computation exceeded its configured size or degree budget."""


class TheoremCheckError(EquiblowError):
    """An identity that is guaranteed by a theorem failed to hold.

    Seeing this on well-formed input means the code (or the input's
    claimed invariants) is wrong; it is never a routine error path.
    """
