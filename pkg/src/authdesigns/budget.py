"""Work-budget resolution for operations with superpolynomial worst cases.

Every potentially expensive operation computes an exact upper bound on its
elementary-step count *before* doing any work and compares it against a
budget.  Precedence: explicit argument, then the ``AUTHDESIGNS_BUDGET``
environment variable, then :data:`DEFAULT_BUDGET`.
"""

import os

from .errors import BudgetError, DomainError

DEFAULT_BUDGET = 10**8

ENV_VAR = "AUTHDESIGNS_BUDGET"


def resolve_budget(budget=None):
    """Return the effective work budget as a positive int."""
    if budget is None:
        raw = os.environ.get(ENV_VAR)
        if raw is not None:
            try:
                budget = int(raw)
            except ValueError:
                raise DomainError(f"{ENV_VAR} must be an integer, got {raw!r}")
        else:
            budget = DEFAULT_BUDGET
    if not isinstance(budget, int) or isinstance(budget, bool) or budget <= 0:
        raise DomainError(f"budget must be a positive integer, got {budget!r}")
    return budget


def charge(required, budget=None, what="computation"):
    """Raise :class:`BudgetError` if ``required`` exceeds the effective budget.

    Returns the resolved budget so callers can reuse it for nested checks.
    """
    limit = resolve_budget(budget)
    if required > limit:
        raise BudgetError(
            f"{what} needs {required} elementary steps, budget is {limit}",
            required=required,
            budget=limit,
        )
    return limit
