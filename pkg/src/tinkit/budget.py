"""Node budgets for the exact exponential searches.

Every backtracking search in the package spends from a SearchBudget.  When
the budget runs dry the search raises BudgetExceeded; it never degrades to
a heuristic or returns a truncated answer.  The default limit comes from
the TINKIT_BUDGET environment variable, falling back to ten million nodes.
"""

from __future__ import annotations

import os

from .errors import BudgetExceeded

DEFAULT_LIMIT = 10_000_000
ENV_VAR = "TINKIT_BUDGET"


class SearchBudget:
    __slots__ = ("limit", "used")

    def __init__(self, limit: int | None = None):
        if limit is None:
            limit = int(os.environ.get(ENV_VAR, DEFAULT_LIMIT))
        if limit <= 0:
            raise ValueError("budget limit must be positive")
        self.limit = limit
        self.used = 0

    def spend(self, amount: int = 1) -> None:
        self.used += amount
        if self.used > self.limit:
            raise BudgetExceeded(
                f"search budget of {self.limit} nodes exhausted"
            )


def ensure_budget(budget: SearchBudget | None) -> SearchBudget:
    return budget if budget is not None else SearchBudget()
