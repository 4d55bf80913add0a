"""Brute-force ground truth.

Nothing here uses the coefficient recurrences: polynomials are expanded
term by term over all permutations, and point values are summed over every
ordering.  Used to validate ``coeffs`` and the mine-cancellation identity.
"""
from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Sequence

from . import limits
from .coeffs import PolySpec
from .errors import CapacityError, ConsistencyError, InputError


class DensePoly:
    """Multivariate polynomial with exact integer coefficients.

    ``terms`` maps exponent tuples (length ``n_vars``) to nonzero ints.
    """

    __slots__ = ("n_vars", "terms")

    def __init__(self, n_vars: int, terms: dict | None = None):
        self.n_vars = n_vars
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def constant(cls, n_vars: int, c: int) -> "DensePoly":
        return cls(n_vars, {(0,) * n_vars: c})

    @classmethod
    def variable(cls, n_vars: int, i: int) -> "DensePoly":
        e = [0] * n_vars
        e[i] = 1
        return cls(n_vars, {tuple(e): 1})

    @classmethod
    def linear(cls, n_vars: int, indices: Iterable[int], const: int = 0) -> "DensePoly":
        terms = {}
        for i in indices:
            e = [0] * n_vars
            e[i] = 1
            terms[tuple(e)] = terms.get(tuple(e), 0) + 1
        if const:
            terms[(0,) * n_vars] = const
        return cls(n_vars, terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = DensePoly.constant(self.n_vars, other)
        return isinstance(other, DensePoly) and self.n_vars == other.n_vars and self.terms == other.terms

    def __repr__(self):
        return f"DensePoly({self.n_vars}, {dict(self.sorted_terms())})"

    def __add__(self, other: "DensePoly") -> "DensePoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return DensePoly(self.n_vars, out)

    def __neg__(self):
        return DensePoly(self.n_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "DensePoly":
        return DensePoly(self.n_vars, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        cap = limits.get().expand_terms
        out: dict[tuple, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
            if len(out) > cap:
                raise CapacityError(f"expansion exceeded {cap} terms", cap="expand_terms", limit=cap)
        return DensePoly(self.n_vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "DensePoly":
        result = DensePoly.constant(self.n_vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def permute(self, perm: Sequence[int]) -> "DensePoly":
        """Substitute x_i -> x_perm[i]."""
        out = {}
        for e, c in self.terms.items():
            f = [0] * self.n_vars
            for i, a in enumerate(e):
                f[perm[i]] = a
            out[tuple(f)] = c
        return DensePoly(self.n_vars, out)

    def swap(self, i: int, j: int) -> "DensePoly":
        perm = list(range(self.n_vars))
        perm[i], perm[j] = j, i
        return self.permute(perm)

    def coefficient(self, exponents: Sequence[int]) -> int:
        return self.terms.get(tuple(exponents), 0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in graded lexicographic order (degree first, then exponents, descending)."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __call__(self, point: Sequence[int]) -> int:
        total = 0
        for e, c in self.terms.items():
            term = c
            for x, a in zip(point, e):
                if a:
                    term *= x**a
            total += term
        return total


def perm_sign(perm: Sequence[int]) -> int:
    """Sign via cycle decomposition."""
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def vandermonde_poly(n: int) -> DensePoly:
    v = DensePoly.constant(n, 1)
    for i in range(n):
        for j in range(i + 1, n):
            v = v * (DensePoly.variable(n, j) - DensePoly.variable(n, i))
    return v


def expand_Q(spec: PolySpec, max_n: int = 4) -> DensePoly:
    """Fully expanded Q^{(n,u,v)}.

    ``max_n`` guards the n! permutation sum; raise it (up to 6) explicitly.
    """
    n, u, v = spec.n, spec.u, spec.v
    if n > max_n or n > limits.get().factorial_n:
        raise CapacityError(f"expand_Q with n={n} exceeds cap {max_n}", cap="factorial_n", limit=max_n)
    if n == 1:
        return DensePoly(1, {(v,): 1})
    base = DensePoly.linear(n, range(n)) ** v
    for ell in range(1, n):
        base = base * DensePoly.linear(n, range(ell)) ** u
    q = DensePoly(n)
    for perm in itertools.permutations(range(n)):
        # base is the identity-order product; relabel x_i -> x_perm(i)
        term = base.permute(perm)
        q = q + (term if perm_sign(perm) > 0 else -term)
    return q


def eval_vandermonde(point: Sequence[int]) -> int:
    prod = 1
    for i in range(len(point)):
        for j in range(i + 1, len(point)):
            prod *= point[j] - point[i]
    return prod


def _check_factorial(n: int) -> None:
    cap = limits.get().factorial_n
    if n > cap:
        raise CapacityError(f"{n}! permutation sum exceeds cap {cap}!", cap="factorial_n", limit=cap)


def _perm_sum(point: tuple, mines: tuple, first: int | None) -> int:
    """Signed sum over orderings; restricted to those starting with ``first`` if given."""
    n = len(point)
    cache: dict[int, int] = {}

    def factor(s: int) -> int:
        g = cache.get(s)
        if g is None:
            g = 1
            for m in mines:
                g *= s - m
            cache[s] = g
        return g

    def rec(remaining: list[int], pos: int, prod: int, parity: int) -> int:
        # remaining is sorted; choosing index i adds i inversions
        if len(remaining) == 1:
            return -prod if parity & 1 else prod
        total = 0
        for i, idx in enumerate(remaining):
            s = pos + point[idx]
            g = factor(s)
            if g == 0:
                continue
            rest = remaining[:i] + remaining[i + 1:]
            total += rec(rest, s, prod * g, parity + i)
        return total

    everything = list(range(n))
    if first is None:
        return rec(everything, 0, 1, 0)
    rest = everything[:first] + everything[first + 1:]
    if n == 1:
        return 1
    g = factor(point[first])
    return rec(rest, point[first], g, first) if g else 0


def eval_Q_mines(k: int, mines: Iterable[int], point: Sequence[int], workers: int = 1) -> int:
    """Value at ``point`` of the signed sum over all (2k)! orderings of
    prod_{l=1}^{2k-1} prod_{m in mines} (prefix_l - m).

    With ``workers > 1`` the orderings are split by first element across
    processes and the partial sums are added in a fixed order.
    """
    mines = tuple(sorted(set(int(m) for m in mines)))
    point = tuple(int(x) for x in point)
    if k < 1:
        raise InputError("k must be positive")
    if len(mines) != k:
        raise InputError(f"need {k} distinct mines, got {len(mines)}")
    if len(point) != 2 * k:
        raise InputError(f"point must have length {2 * k}")
    _check_factorial(2 * k)
    if workers <= 1:
        return _perm_sum(point, mines, None)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_perm_sum, [point] * len(point), [mines] * len(point), range(len(point))))
    return sum(parts)


def random_distinct_point(n: int, rng: random.Random, lo: int = -50, hi: int = 50) -> tuple[int, ...]:
    while True:
        pt = tuple(rng.randint(lo, hi) for _ in range(n))
        if len(set(pt)) == n:
            return pt


def ck_via_evaluation(k: int, point: Sequence[int] | None = None, mines: Iterable[int] | None = None,
                      seed: int = 0, workers: int = 1) -> int:
    """c_k = Q(a) / ((-1)^k V(a)) at a point with distinct coordinates."""
    rng = random.Random(seed)
    if point is None:
        point = random_distinct_point(2 * k, rng)
    if mines is None:
        mines = rng.sample(range(-50, 51), k)
    den = eval_vandermonde(point)
    if den == 0:
        raise InputError("evaluation point needs pairwise distinct coordinates")
    if k % 2:
        den = -den
    q, r = divmod(eval_Q_mines(k, mines, point, workers=workers), den)
    if r:
        raise ConsistencyError(f"Q(a) not divisible by (-1)^k V(a) at {tuple(point)}")
    return q


def nullstellensatz_polynomial(k: int, mines: Iterable[int] | None = None, max_k: int = 2) -> DensePoly:
    """V(x) * prod_{l<2k} prod_m ((x_1+...+x_l) - m); mines default to k zeros."""
    if k < 1:
        raise InputError("k must be positive")
    if k > max_k:
        raise CapacityError(f"symbolic expansion for k={k} exceeds cap {max_k}", cap="max_k", limit=max_k)
    n = 2 * k
    consts = [0] * k if mines is None else list(mines)
    if len(consts) != k:
        raise InputError(f"need {k} mines")
    p = vandermonde_poly(n)
    for ell in range(1, n):
        for m in consts:
            p = p * DensePoly.linear(n, range(ell), -m)
    return p


def nullstellensatz_coefficient(k: int, mines: Iterable[int] | None = None, max_k: int = 2) -> int:
    """Coefficient of (x_1 ... x_2k)^(2k-1) in the polynomial above."""
    return nullstellensatz_polynomial(k, mines, max_k).coefficient((2 * k - 1,) * (2 * k))
