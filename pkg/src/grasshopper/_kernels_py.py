"""Pure-Python hot kernels.

Reference semantics for ``_kernels.pyx``; both must return identical results.

Partitions are bitmasks: a strictly decreasing d_1 > ... > d_n >= 0 is the set
{d_1, ..., d_n}, so bit b is set iff some part equals b.  For a fixed prefix
exponent u the mask alone determines n (popcount) and v (sum - (n-1)u).
"""
from __future__ import annotations

BACKEND = "python"


def dense_alpha(u: int, mask: int, modulus: int = 0) -> int:
    """Coefficient indexed by ``mask`` via a dense table over all smaller masks.

    Every dependency of a mask is numerically smaller (a decrement turns bit
    b into bit b-1; the v=0 reduction clears bit 0), so one increasing sweep
    fills the table.  ``modulus=0`` means exact integers.
    """
    size = mask + 1
    f = [0] * size
    pop = [0] * size
    tot = [0] * size
    for m in range(1, size):
        low = m & -m
        rest = m ^ low
        n = pop[rest] + 1
        s = tot[rest] + low.bit_length() - 1
        pop[m] = n
        tot[m] = s
        v = s - (n - 1) * u
        if v < 0:
            continue
        if n == 1:
            f[m] = 1
        elif v == 0:
            if m & 1:
                f[m] = f[m ^ 1]
        else:
            acc = 0
            bits = m
            while bits:
                b = bits & -bits
                bits ^= b
                # part b-1 must be free and nonnegative after the decrement
                if b > 1 and not m & (b >> 1):
                    acc += f[m - (b >> 1)]
            f[m] = acc % modulus if modulus else acc
    return f[mask]


def subset_order(jumps, mines) -> list[int] | None:
    """Indices of a safe jump order, or None when every order is blocked.

    Subset-lattice search: after using a set S of jumps the grasshopper sits at
    sum(S) whatever the order, so only 2^n states exist.  Each reached subset
    records the lowest jump index through which it is reachable.
    """
    n = len(jumps)
    full = (1 << n) - 1
    mines = set(mines)
    layer = {0: 0}  # mask -> position
    pred: dict[int, int] = {}
    for size in range(1, n + 1):
        nxt: dict[int, int] = {}
        guarded = size < n
        for m, pos in layer.items():
            for j in range(n):
                bit = 1 << j
                if m & bit:
                    continue
                m2 = m | bit
                if m2 in nxt:
                    if j < pred[m2]:
                        pred[m2] = j
                    continue
                p2 = pos + jumps[j]
                if guarded and p2 in mines:
                    continue
                nxt[m2] = p2
                pred[m2] = j
        if not nxt:
            return None
        layer = nxt
    if full not in layer:
        return None
    order = []
    m = full
    while m:
        j = pred[m]
        order.append(j)
        m ^= 1 << j
    order.reverse()
    return order
