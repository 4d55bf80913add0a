"""Resource caps.

Every cap has a default, an environment variable override, and (in the CLI) a
flag that beats the environment.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

_ENV = {
    "memo_entries": "GRASSHOPPER_MEMO_ENTRIES",
    "partition_count": "GRASSHOPPER_PARTITION_COUNT",
    "factorial_n": "GRASSHOPPER_FACTORIAL_N",
    "subset_n": "GRASSHOPPER_SUBSET_N",
    "expand_terms": "GRASSHOPPER_EXPAND_TERMS",
    "time_limit": "GRASSHOPPER_TIME_LIMIT",
}


@dataclass(frozen=True)
class Limits:
    memo_entries: int = 50_000_000
    # distinct partitions enumerated by coefficient_table
    partition_count: int = 1_000_000
    # largest n whose n! permutations the oracle will enumerate (10! = k <= 5)
    factorial_n: int = 10
    subset_n: int = 24
    # intermediate term count allowed while expanding polynomials
    expand_terms: int = 2_000_000
    # seconds; None disables
    time_limit: float | None = None

    def with_overrides(self, **kw) -> "Limits":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


def from_env(environ=None) -> Limits:
    environ = os.environ if environ is None else environ
    kw = {}
    for f in fields(Limits):
        raw = environ.get(_ENV[f.name])
        if raw is None or raw == "":
            continue
        kw[f.name] = float(raw) if f.name == "time_limit" else int(raw)
    return Limits(**kw)


_current = from_env()


def get() -> Limits:
    return _current


def set_limits(limits: Limits) -> Limits:
    """Install process-wide limits; returns the previous value."""
    global _current
    old, _current = _current, limits
    return old
