"""Exact coefficients of the alternating prefix-power polynomials.

For n >= 1 and u, v >= 0 let

    Q^{(n,u,v)}(x) = sum over permutations pi of sgn(pi)
                     * prod_{l=1}^{n-1} (x_pi(1) + ... + x_pi(l))^u
                     * (x_1 + ... + x_n)^v

and alpha^{(n,u,v)}_d the coefficient of x_1^d_1 ... x_n^d_n.  Only strictly
decreasing d matter (Q is alternating), and the coefficients obey

* v = 0, n >= 2:  alpha_d = alpha^{(n-1,u,u)}_{d_1..d_{n-1}} if d_n = 0, else 0
* v >= 1:         alpha_d = sum_i alpha^{(n,u,v-1)}_{d - e_i}
                  (a decrement that repeats a part or goes negative gives 0)
* n = 1:          Q = x_1^v

c_k is alpha^{(2k,k,0)}_{2k-1,...,1,0}, the constant in
Q^{(2k,k,0)} = (-1)^k c_k V.

Partitions are handled internally as bitmasks (see ``_kernels_py``); with u
fixed, the mask determines n and v, so one memo table serves a whole u family.
"""
from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from . import kernels, limits
from .errors import CapacityError, InputError


@dataclass(frozen=True)
class PolySpec:
    n: int
    u: int
    v: int

    def __post_init__(self):
        if self.n < 1 or self.u < 0 or self.v < 0:
            raise InputError(f"invalid PolySpec {self.n, self.u, self.v}")

    @property
    def degree(self) -> int:
        return (self.n - 1) * self.u + self.v


@dataclass(frozen=True)
class DistinctPartition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts:
            raise InputError("empty partition")
        if parts[-1] < 0:
            raise InputError(f"negative part in {parts}")
        if any(a <= b for a, b in zip(parts, parts[1:])):
            raise InputError(f"parts not strictly decreasing: {parts}")

    def __len__(self):
        return len(self.parts)

    @property
    def mask(self) -> int:
        m = 0
        for p in self.parts:
            m |= 1 << p
        return m

    @classmethod
    def from_mask(cls, mask: int) -> "DistinctPartition":
        return cls(tuple(b for b in range(mask.bit_length() - 1, -1, -1) if mask >> b & 1))


@dataclass
class CoefficientTable:
    spec: PolySpec
    entries: dict[tuple[int, ...], int] = field(default_factory=dict)

    def __getitem__(self, parts) -> int:
        return self.entries.get(tuple(parts), 0)

    def __len__(self):
        return len(self.entries)


def _as_partition(d) -> DistinctPartition:
    return d if isinstance(d, DistinctPartition) else DistinctPartition(tuple(d))


def _shape(mask: int, u: int) -> tuple[int, int]:
    """(n, v) encoded by a mask for prefix exponent u."""
    n = 0
    s = 0
    b = 0
    m = mask
    while m:
        if m & 1:
            n += 1
            s += b
        m >>= 1
        b += 1
    return n, s - (n - 1) * u


def _children(mask: int, u: int) -> list[int]:
    n, v = _shape(mask, u)
    if v < 0 or n <= 1:
        return []
    if v == 0:
        return [mask ^ 1] if mask & 1 else []
    out = []
    bits = mask
    while bits:
        b = bits & -bits
        bits ^= b
        if b > 1 and not mask & (b >> 1):
            out.append(mask - (b >> 1))
    return out


class AlphaEngine:
    """Memoized alpha values for one prefix exponent u over one coefficient ring.

    ``modulus=0`` is the integers; a positive modulus reduces every sum.  The
    traversal is the same for both rings, only ``_reduce`` differs.
    Concurrent readers are fine; insertions take the lock.
    """

    def __init__(self, u: int, modulus: int = 0, max_entries: int | None = None,
                 time_limit: float | None = None):
        if u < 0 or modulus < 0:
            raise InputError("u and modulus must be nonnegative")
        lim = limits.get()
        self.u = u
        self.modulus = modulus
        self.max_entries = lim.memo_entries if max_entries is None else max_entries
        self.time_limit = lim.time_limit if time_limit is None else time_limit
        self.memo: dict[int, int] = {}
        self._lock = threading.Lock()

    def _reduce(self, x: int) -> int:
        return x % self.modulus if self.modulus else x

    def _leaf(self, mask: int) -> int:
        n, v = _shape(mask, self.u)
        if v < 0:
            return 0
        if n == 1:
            return self._reduce(1)
        return 0

    def value(self, mask: int) -> int:
        memo = self.memo
        hit = memo.get(mask)
        if hit is not None:
            return hit
        deadline = None if self.time_limit is None else time.monotonic() + self.time_limit
        stack = [mask]
        steps = 0
        while stack:
            m = stack[-1]
            if m in memo:
                stack.pop()
                continue
            kids = _children(m, self.u)
            missing = [c for c in kids if c not in memo]
            if missing:
                stack.extend(missing)
                continue
            val = self._reduce(sum(memo[c] for c in kids)) if kids else self._leaf(m)
            with self._lock:
                if len(memo) >= self.max_entries:
                    raise CapacityError(
                        f"alpha memo exceeded {self.max_entries} entries",
                        cap="memo_entries", limit=self.max_entries)
                memo[m] = val
            stack.pop()
            steps += 1
            if deadline is not None and steps & 0xFF == 0 and time.monotonic() > deadline:
                raise CapacityError(f"alpha exceeded time limit {self.time_limit}s",
                                    cap="time_limit", limit=self.time_limit)
        return memo[mask]


_engines: dict[tuple[int, int], AlphaEngine] = {}
_engines_lock = threading.Lock()


def engine(u: int, modulus: int = 0) -> AlphaEngine:
    """Shared engine for (u, modulus); rebuilt if the installed limits changed."""
    key = (u, modulus)
    lim = limits.get()
    with _engines_lock:
        eng = _engines.get(key)
        if eng is None or eng.max_entries != lim.memo_entries or eng.time_limit != lim.time_limit:
            eng = _engines[key] = AlphaEngine(u, modulus)
        return eng


def clear_cache() -> None:
    with _engines_lock:
        _engines.clear()


def alpha(spec: PolySpec, d: Sequence[int] | DistinctPartition, modulus: int = 0) -> int:
    """Coefficient of x_1^d_1 ... x_n^d_n in Q^{(n,u,v)} (reduced mod ``modulus`` if > 0)."""
    d = _as_partition(d)
    if len(d) != spec.n:
        raise InputError(f"partition has {len(d)} parts, spec needs {spec.n}")
    if sum(d.parts) != spec.degree:
        return 0
    return engine(spec.u, modulus).value(d.mask)


def staircase(k: int) -> tuple[int, ...]:
    return tuple(range(2 * k - 1, -1, -1))


def ck(k: int, modulus: int = 0, method: str = "dense") -> int:
    """c_k, exactly or mod ``modulus``.

    ``method="dense"`` sweeps all 4^k masks with the compiled kernel when
    available; ``"sparse"`` walks only reachable masks through the memo engine.
    """
    if k < 1:
        raise InputError("k must be a positive integer")
    mask = (1 << 2 * k) - 1
    if method == "sparse":
        return alpha(PolySpec(2 * k, k, 0), staircase(k), modulus)
    if method != "dense":
        raise InputError(f"unknown method {method!r}")
    cap = limits.get().memo_entries
    if mask + 1 > cap:
        raise CapacityError(f"c_{k} needs {mask + 1} table entries, cap is {cap}",
                            cap="memo_entries", limit=cap)
    return kernels.dense_alpha(k, mask, modulus)


def count_partitions(total: int, n: int) -> int:
    """Number of d_1 > ... > d_n >= 0 with sum ``total``."""
    # subtract the staircase (n-1, ..., 0): partitions of the rest into <= n parts
    rest = total - n * (n - 1) // 2
    if rest < 0:
        return 0
    ways = [1] + [0] * rest
    for part in range(1, n + 1):
        for s in range(part, rest + 1):
            ways[s] += ways[s - part]
    return ways[rest]


def distinct_partitions(total: int, n: int, below: int | None = None) -> Iterator[tuple[int, ...]]:
    """All strictly decreasing n-tuples of nonnegative integers summing to ``total``."""
    if below is None:
        below = total + 1
    if n == 0:
        if total == 0:
            yield ()
        return
    # remaining n-1 parts need at least (n-1)(n-2)/2
    lo = n - 1
    for first in range(min(below - 1, total), lo - 1, -1):
        rem = total - first
        if rem < (n - 1) * (n - 2) // 2:
            continue
        # n-1 parts each < first sum to at most the top n-1 values below first
        if rem > (n - 1) * first - (n - 1) * n // 2:
            break
        for tail in distinct_partitions(rem, n - 1, first):
            yield (first,) + tail


def coefficient_table(spec: PolySpec, modulus: int = 0) -> CoefficientTable:
    cap = limits.get().partition_count
    count = count_partitions(spec.degree, spec.n)
    if count > cap:
        raise CapacityError(f"{count} partitions exceed cap {cap}",
                            cap="partition_count", limit=cap)
    eng = engine(spec.u, modulus)
    table = CoefficientTable(spec)
    for d in distinct_partitions(spec.degree, spec.n):
        val = eng.value(DistinctPartition(d).mask)
        if val:
            table.entries[d] = val
    return table
