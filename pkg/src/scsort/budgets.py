"""Work budgets guarding factorial-size computations."""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["Budgets", "BudgetExceededError", "DEFAULT_BUDGETS"]


class BudgetExceededError(RuntimeError):
    """Raised when a requested computation exceeds its configured budget."""


@dataclass(frozen=True)
class Budgets:
    # Largest N for which an N!-sized enumeration (all inputs, or all
    # runtimes of one algorithm) is allowed.
    enumeration_max_n: int = 10
    # Table-lookup cap for exhaustive SC maximization.  2e9 admits the full
    # N=8 sweep, whose memoized cost is (8!)^2 ~ 1.6e9 lookups.
    exhaustive_lookups: float = 2e9
    # Per-objective-evaluation cap (one perturbed-group average) during
    # hill climbing.
    hillclimb_group_size: float = 1e7


DEFAULT_BUDGETS = Budgets()
