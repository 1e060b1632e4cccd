import os

CUTMIM_NODE_BUDGET = 10**7
CLASS_CAP = 10**6


class BudgetExceeded(RuntimeError):
    """A search or state space outgrew its configured budget."""


def budget(default: int) -> int:
    """``MIMW_BUDGET`` from the environment overrides every search budget."""
    raw = os.environ.get("MIMW_BUDGET")
    return int(raw) if raw else default
