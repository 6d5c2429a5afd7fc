"""Exception hierarchy shared across the package.

The split mirrors how callers need to react: structural problems mean the
object itself is malformed (bad shapes, out-of-range entries, duplicates),
domain problems mean a well-formed object fails a mathematical precondition,
and budget problems mean a computation was refused because its exact cost
bound exceeded the configured work budget.
"""


class AuthDesignsError(Exception):
    """Base class for all package-specific errors."""


class StructuralError(AuthDesignsError):
    """A container violates a structural invariant (shape, range, duplicates).

    ``offenders`` carries the first few offending items so error messages and
    tests can point at concrete evidence instead of a bare boolean.
    """

    def __init__(self, message, offenders=None):
        super().__init__(message)
        self.offenders = list(offenders) if offenders is not None else []


class DomainError(AuthDesignsError):
    """Well-formed input outside an operation's mathematical domain."""


class BudgetError(AuthDesignsError):
    """Refused: the exact work bound for this computation exceeds the budget.

    ``required`` and ``budget`` are the compared quantities, so callers can
    decide whether raising the budget is reasonable.
    """

    def __init__(self, message, required=None, budget=None):
        super().__init__(message)
        self.required = required
        self.budget = budget


class ConstructionError(AuthDesignsError):
    """An internal construction produced an object that failed its own
    verification gate.  Always a bug, never a caller error."""
