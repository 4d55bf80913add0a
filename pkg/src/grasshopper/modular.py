"""c_k modulo primes, prime-divisor scans and factorization checks."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable

import gmpy2

from . import coeffs
from .errors import ConsistencyError, InputError

# Miller-Rabin rounds: error below 4**-40 = 2**-80
_MR_ROUNDS = 40
# claimed factors below this are certified by trial division
_TRIAL_LIMIT = 10**12


def is_probable_prime(p: int) -> bool:
    return p >= 2 and bool(gmpy2.is_prime(p, _MR_ROUNDS))


def is_prime_trial(p: int) -> bool:
    """Deterministic primality by trial division up to isqrt(p)."""
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    for d in range(3, math.isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


def certify_prime(p: int) -> bool:
    return is_prime_trial(p) if p < _TRIAL_LIMIT else is_probable_prime(p)


@dataclass(frozen=True)
class PrimeModulus:
    p: int

    def __post_init__(self):
        if not is_probable_prime(int(self.p)):
            raise InputError(f"{self.p} is not prime")


@dataclass(frozen=True)
class FactorizationClaim:
    k: int
    factors: tuple[tuple[int, int], ...]

    def product(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out


# displayed factorizations of c_3 .. c_6
PUBLISHED_FACTORIZATIONS = {
    3: FactorizationClaim(3, ((2, 1), (3, 2), (5, 1))),
    4: FactorizationClaim(4, ((2, 5), (3, 3), (7, 1), (97, 1))),
    5: FactorizationClaim(5, ((2, 2), (3, 1), (5, 4), (7, 1), (79, 1), (103, 1), (4483, 1))),
    6: FactorizationClaim(6, ((2, 5), (3, 6), (5, 2), (11, 1), (23, 1), (223, 1), (239, 1), (1002820739, 1))),
}


def _modulus(p) -> int:
    return p.p if isinstance(p, PrimeModulus) else PrimeModulus(int(p)).p


def ck_mod(k: int, p) -> int:
    """c_k mod p, computed by the same recurrence with every sum reduced."""
    return coeffs.ck(k, modulus=_modulus(p))


def primes_up_to(bound: int) -> list[int]:
    out = []
    p = 2
    while p <= bound:
        out.append(p)
        p = int(gmpy2.next_prime(p))
    return out


def divisor_scan(k: int, prime_bound: int, sample: int = 8, seed: int = 0) -> list[int]:
    """Primes p <= prime_bound dividing c_k.

    Trial-divides the exact value; a seeded sample of primes is re-checked
    through the modular recurrence.
    """
    c = coeffs.ck(k)
    primes = primes_up_to(prime_bound)
    hits = [p for p in primes if c % p == 0]
    rng = random.Random(seed)
    for p in rng.sample(primes, min(sample, len(primes))):
        if ck_mod(k, p) != c % p:
            raise ConsistencyError(f"c_{k} mod {p}: modular DP disagrees with exact value")
    return hits


def scan_table(k: int, primes: Iterable[int]) -> list[dict]:
    """Rows (prime, residue, divides) computed through the modular recurrence."""
    rows = []
    for p in primes:
        r = ck_mod(k, p)
        rows.append({"prime": int(p), "residue": r, "divides": r == 0})
    return rows


def verify_factorization(claim: FactorizationClaim) -> bool:
    """True iff the claimed prime powers multiply to the exact c_k."""
    for p, e in claim.factors:
        if e < 1:
            raise InputError(f"exponent {e} for {p} must be positive")
        if not certify_prime(p):
            raise InputError(f"claimed factor {p} is not prime")
    return claim.product() == coeffs.ck(claim.k)


def partial_factorization(k: int, bound: int = 10**5) -> dict:
    """Prime factors of c_k up to ``bound`` plus the unfactored cofactor.

    The cofactor is reported with a probable-prime flag; completeness of the
    factorization is not claimed when the cofactor is composite.
    """
    c = coeffs.ck(k)
    rest = c
    factors = []
    for p in primes_up_to(bound):
        if p * p > rest:
            # no factor <= sqrt(rest) remains: rest is 1 or prime
            complete = True
            break
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        if e:
            factors.append((p, e))
    else:
        # a small cofactor can still be proven prime by trial division
        complete = rest == 1 or (rest < _TRIAL_LIMIT and is_prime_trial(rest))
    if rest > 1 and complete:
        factors.append((rest, 1))
        rest = 1
    return {
        "k": k,
        "value": c,
        "factors": factors,
        "cofactor": rest,
        "cofactor_probable_prime": rest > 1 and is_probable_prime(rest),
        "complete": complete,
    }
