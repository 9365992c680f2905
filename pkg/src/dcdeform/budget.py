"""Cooperative wall-clock budget checked inside long computations."""

import time
from contextlib import contextmanager

from .errors import BudgetExceeded

_deadline = None


def check():
    if _deadline is not None and time.monotonic() > _deadline:
        raise BudgetExceeded("wall-clock budget exceeded")


@contextmanager
def limit(seconds):
    """Raise BudgetExceeded from computations running past ``seconds``."""
    global _deadline
    previous = _deadline
    if seconds is not None:
        _deadline = time.monotonic() + seconds
        if previous is not None:
            _deadline = min(_deadline, previous)
    try:
        yield
    finally:
        _deadline = previous
