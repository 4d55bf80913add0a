"""Constructive safe orders for distinct positive jumps and at most n-1 mines.

Induction on n, always peeling off the largest jump a_n.  With the mines
padded to m_1 < ... < m_{n-1}:

* if a_1 + ... + a_{n-1} < m_1, put a_n last and the rest in any order;
* if a_n = m_l, solve the smaller jumps against
  {m_1..m_{l-1}} + {m_{l+1} - a_n, ...} and put a_n second;
* otherwise solve against {m_2 - a_n, ...} and put a_n just before the first
  prefix that reaches m_1.

The descent is a loop, so n is not limited by the interpreter's call depth.
Values are exact: ints or ``fractions.Fraction``.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import ConsistencyError, InputError
from .route import Route


def as_rational(x):
    """int, Fraction or "p/q" string -> int when integral, else Fraction."""
    if isinstance(x, bool):
        raise InputError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return x
    try:
        q = Fraction(x) if not isinstance(x, float) else Fraction(x).limit_denominator(1 << 53)
    except (ValueError, ZeroDivisionError, TypeError):
        raise InputError(f"not a rational: {x!r}") from None
    return q.numerator if q.denominator == 1 else q


@dataclass(frozen=True)
class PositiveInstance:
    jumps: tuple
    mines: frozenset = frozenset()

    def __post_init__(self):
        jumps = tuple(as_rational(a) for a in self.jumps)
        mines = frozenset(as_rational(m) for m in self.mines)
        object.__setattr__(self, "jumps", jumps)
        object.__setattr__(self, "mines", mines)
        if not jumps:
            raise InputError("need at least one jump")
        if any(a <= 0 for a in jumps):
            raise InputError("jumps must be positive")
        if len(set(jumps)) != len(jumps):
            raise InputError("jumps must be distinct")
        if len(mines) > len(jumps) - 1:
            raise InputError(f"{len(mines)} mines exceed n-1 = {len(jumps) - 1}")


def _padding(mines: list, total, count: int) -> list:
    top = max([total] + mines)
    # integers above everything: constrain nothing, collide with nothing
    start = int(top) + 1
    return list(range(start, start + count))


def pad_mines(instance: PositiveInstance) -> PositiveInstance:
    need = len(instance.jumps) - 1 - len(instance.mines)
    if need <= 0:
        return instance
    extra = _padding(list(instance.mines), sum(instance.jumps), need)
    return PositiveInstance(instance.jumps, instance.mines | frozenset(extra))


def positive_safe_order(instance: PositiveInstance, steps: list | None = None) -> Route:
    """Safe order by the largest-jump induction.

    If ``steps`` is a list, one ``(case, jump)`` tuple per level is appended,
    outermost first; ``case`` is ``"last"``, ``"second"`` or ``"before_reach"``.
    """
    jumps = sorted(instance.jumps)
    mines = sorted(instance.mines)
    total = sum(jumps)
    plan = []  # (case, a_n, m_1)
    while len(jumps) > 1:
        n = len(jumps)
        a_n = jumps[-1]
        rest_total = total - a_n
        if len(mines) < n - 1:
            mines = mines + _padding(mines, total, n - 1 - len(mines))
        m_1 = mines[0]
        if rest_total < m_1:
            plan.append(("last", a_n, m_1))
            jumps.pop()
            break
        lo = [m for m in mines if m < a_n]
        if len(lo) < len(mines) and mines[len(lo)] == a_n:
            hi = [m - a_n for m in mines[len(lo) + 1:]]
            plan.append(("second", a_n, m_1))
            merged = []
            for m in heapq.merge(lo, hi):
                if not merged or merged[-1] != m:
                    merged.append(m)
            mines = merged
        else:
            plan.append(("before_reach", a_n, m_1))
            mines = [m - a_n for m in mines[1:]]
        jumps.pop()
        total = rest_total

    order = list(jumps)
    for case, a_n, m_1 in reversed(plan):
        if case == "last":
            order.append(a_n)
        elif case == "second":
            order.insert(1, a_n)
        else:
            s = 0
            for pos, b in enumerate(order):
                s += b
                if s >= m_1:
                    order.insert(pos, a_n)
                    break
            else:
                raise ConsistencyError("no prefix reaches m_1 although the jump total does")
    if steps is not None:
        steps.extend((case, a_n) for case, a_n, _ in plan)
    return Route.from_order(order)


def instance_from_dict(doc: dict) -> PositiveInstance:
    """Instance document with ints or "p/q" strings."""
    if not isinstance(doc, dict) or "jumps" not in doc:
        raise InputError("instance document needs a 'jumps' array")
    return PositiveInstance(tuple(doc["jumps"]), frozenset(doc.get("mines", [])))


def route_avoids(route: Route, mines: Iterable) -> bool:
    mines = set(mines)
    return not any(s in mines for s in route.prefix_sums)
