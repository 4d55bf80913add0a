"""Backend selection for the hot kernels.

The compiled extension is used when it imports and ``GRASSHOPPER_PURE_PYTHON``
is unset; otherwise everything runs on ``_kernels_py``.  Both backends expose
the same two entry points through this module:

``dense_alpha(u, mask, modulus=0)``
    coefficient indexed by a partition bitmask, exact or reduced mod a prime.
``subset_order(jumps, mines)``
    safe jump order (as indices) or None.
"""
from __future__ import annotations

import math
import os

from . import _kernels_py

_compiled = None
if not os.environ.get("GRASSHOPPER_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = _compiled.BACKEND if _compiled is not None else _kernels_py.BACKEND

# residues stay below 2**62 so two of them add without uint64 overflow
_WORD_LIMIT = 1 << 62
# int64 positions in the compiled subset search
_POSITION_LIMIT = 1 << 56

_crt_primes: list[int] = []


def _primes_below_word(count: int) -> list[int]:
    import gmpy2

    while len(_crt_primes) < count:
        start = _crt_primes[-1] if _crt_primes else _WORD_LIMIT
        _crt_primes.append(int(gmpy2.prev_prime(start)))
    return _crt_primes[:count]


def coefficient_bound(n: int, u: int, v: int) -> int:
    """Upper bound on |alpha| for Q^{(n,u,v)}.

    Each of the n! signed terms is a product of (prefix sum)^u factors and one
    (total)^v factor; the coefficient sum of (x_1+...+x_l)^u is l^u.
    """
    return math.factorial(n) * math.factorial(n - 1) ** u * n**v


def _dense_exact_crt(u: int, mask: int) -> int:
    n = mask.bit_count() if hasattr(int, "bit_count") else bin(mask).count("1")
    s = sum(b for b in range(mask.bit_length()) if mask >> b & 1)
    v = s - (n - 1) * u
    if v < 0:
        return 0
    # symmetric residues: modulus product must exceed twice the bound
    need = 2 * coefficient_bound(n, u, v) + 1
    primes = []
    prod = 1
    for p in _primes_below_word(64):
        if prod > need:
            break
        primes.append(p)
        prod *= p
    else:
        while prod <= need:
            p = _primes_below_word(len(primes) + 1)[-1]
            primes.append(p)
            prod *= p
    x = 0
    for p in primes:
        r = _compiled.dense_alpha_mod(u, mask, p)
        q = prod // p
        x += r * q * pow(q, -1, p)
    x %= prod
    return x - prod if x > prod // 2 else x


def dense_alpha(u: int, mask: int, modulus: int = 0) -> int:
    if _compiled is None or mask.bit_length() > 64:
        return _kernels_py.dense_alpha(u, mask, modulus)
    if modulus == 0:
        return _dense_exact_crt(u, mask)
    if modulus < _WORD_LIMIT:
        return int(_compiled.dense_alpha_mod(u, mask, modulus))
    return _kernels_py.dense_alpha(u, mask, modulus)


def subset_order(jumps, mines) -> list[int] | None:
    if (
        _compiled is None
        or len(jumps) > 30
        or any(abs(x) >= _POSITION_LIMIT // 64 for x in jumps)
    ):
        return _kernels_py.subset_order(jumps, mines)
    # mines outside int64 can never be hit by an in-range position
    mines = [m for m in mines if abs(m) < _POSITION_LIMIT]
    return _compiled.subset_order(list(jumps), mines)
