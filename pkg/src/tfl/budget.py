"""Node budgets and cooperative cancellation for exact searches."""

from __future__ import annotations

import threading

from .errors import BudgetExceeded, Cancelled

DEFAULT_BUDGET = 10**8

_POLL_MASK = 0x3FF


class Budget:
    """Counts search nodes; raises once ``limit`` is passed or ``cancel`` is set.

    One budget may be shared by several searches on the same graph, so the
    per-graph cap in the harness covers all of its work together.
    """

    __slots__ = ("limit", "used", "cancel")

    def __init__(self, limit: int | None = DEFAULT_BUDGET, cancel: threading.Event | None = None):
        self.limit = limit if limit is not None else DEFAULT_BUDGET
        self.used = 0
        self.cancel = cancel

    def charge(self, nodes: int = 1) -> None:
        self.used += nodes
        if self.used > self.limit:
            raise BudgetExceeded(f"search exceeded {self.limit} nodes")
        if self.cancel is not None and not (self.used & _POLL_MASK) and self.cancel.is_set():
            raise Cancelled("search cancelled")

    def __repr__(self) -> str:
        return f"Budget(used={self.used}, limit={self.limit})"


def ensure(budget: Budget | None) -> Budget:
    return budget if budget is not None else Budget()
