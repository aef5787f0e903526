"""Runtime settings: trial-division bound and obstruction sampling depth.

Resolution order is defaults < environment < explicit overrides.  The
environment variables are ``CONIC_BRAUER_FACTOR_BOUND`` and
``CONIC_BRAUER_SAMPLE_DEPTH``.
"""

from __future__ import annotations

import contextlib
import os
from dataclasses import dataclass, replace

DEFAULT_FACTOR_BOUND = 10**7
DEFAULT_SAMPLE_DEPTH = 20

FACTOR_BOUND_ENV = "CONIC_BRAUER_FACTOR_BOUND"
SAMPLE_DEPTH_ENV = "CONIC_BRAUER_SAMPLE_DEPTH"


@dataclass(frozen=True)
class Settings:
    factor_bound: int = DEFAULT_FACTOR_BOUND
    sample_depth: int = DEFAULT_SAMPLE_DEPTH

    def __post_init__(self):
        if self.factor_bound < 2:
            raise ValueError("factor_bound must be >= 2")
        if self.sample_depth < 1:
            raise ValueError("sample_depth must be >= 1")


def _from_env() -> Settings:
    kwargs = {}
    if os.environ.get(FACTOR_BOUND_ENV):
        kwargs["factor_bound"] = int(os.environ[FACTOR_BOUND_ENV])
    if os.environ.get(SAMPLE_DEPTH_ENV):
        kwargs["sample_depth"] = int(os.environ[SAMPLE_DEPTH_ENV])
    return Settings(**kwargs)


_override: Settings | None = None


def current() -> Settings:
    return _override if _override is not None else _from_env()


def factor_bound() -> int:
    return current().factor_bound


def sample_depth() -> int:
    return current().sample_depth


@contextlib.contextmanager
def override(**changes):
    """Temporarily replace settings, e.g. ``with override(factor_bound=1000):``."""
    global _override
    previous = _override
    _override = replace(current(), **changes)
    try:
        yield _override
    finally:
        _override = previous
