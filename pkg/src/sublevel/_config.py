"""Global comparison tolerances.

Stored in a context variable so that a ``tolerances(...)`` block only affects
the current thread / task.
"""

from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    eps_feas: float = 1e-9  # non-strict membership slack
    eps_cmp: float = 1e-7  # strictness band for scalar comparisons

    def __post_init__(self):
        if not (self.eps_feas > 0 and self.eps_cmp > 0):
            raise ValueError("tolerances must be positive")


_current = ContextVar("sublevel_tolerances", default=Tolerances())


def get_tolerances():
    return _current.get()


def eps_feas():
    return _current.get().eps_feas


def eps_cmp():
    return _current.get().eps_cmp


def set_tolerances(**overrides):
    """Replace the tolerances for the current context; returns the new value."""
    new = replace(_current.get(), **overrides)
    _current.set(new)
    return new


@contextmanager
def tolerances(**overrides):
    token = _current.set(replace(_current.get(), **overrides))
    try:
        yield _current.get()
    finally:
        _current.reset(token)
