import gmpy2
import pytest

from grasshopper import coeffs, modular
from grasshopper.errors import InputError
from grasshopper.modular import (
    PUBLISHED_FACTORIZATIONS,
    FactorizationClaim,
    PrimeModulus,
    ck_mod,
    divisor_scan,
    partial_factorization,
    verify_factorization,
)


def test_ck_mod_examples():
    assert ck_mod(3, 7) == 6
    assert ck_mod(3, 5) == 0
    for p in (2, 3, 101, 2_147_483_647):
        assert ck_mod(1, p) == 1


def test_large_prime_modulus():
    p = int(gmpy2.next_prime(1 << 70))
    assert ck_mod(6, p) == coeffs.ck(6) % p


def test_prime_modulus_validation():
    for bad in (0, 1, 4, 91, 2_147_483_649):
        with pytest.raises(InputError):
            PrimeModulus(bad)
    with pytest.raises(InputError):
        ck_mod(3, 9)


@pytest.mark.parametrize(
    "k, bound, expected",
    [(4, 100, [2, 3, 7, 97]), (3, 10, [2, 3, 5]), (1, 100, [])],
)
def test_divisor_scan(k, bound, expected):
    assert divisor_scan(k, bound) == expected


@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_published_factorizations(k):
    assert verify_factorization(PUBLISHED_FACTORIZATIONS[k])


def test_wrong_claim_is_false():
    assert not verify_factorization(FactorizationClaim(3, ((2, 1), (3, 2), (7, 1))))


@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_single_exponent_perturbations_fail(k):
    claim = PUBLISHED_FACTORIZATIONS[k]
    for i, (p, e) in enumerate(claim.factors):
        for delta in (-1, 1):
            if e + delta < 1:
                continue
            factors = list(claim.factors)
            factors[i] = (p, e + delta)
            assert not verify_factorization(FactorizationClaim(k, tuple(factors)))


def test_composite_factor_rejected():
    with pytest.raises(InputError):
        verify_factorization(FactorizationClaim(4, ((2, 5), (3, 3), (679, 1))))
    with pytest.raises(InputError):
        verify_factorization(FactorizationClaim(4, ((2, 0),)))


def test_trial_division_agrees_with_gmpy():
    for p in range(2000):
        assert modular.is_prime_trial(p) == modular.is_probable_prime(p)


def test_scan_table_rows():
    rows = modular.scan_table(4, [2, 5, 97])
    assert [r["divides"] for r in rows] == [True, False, True]
    assert rows[1]["residue"] == 586_656 % 5


def test_partial_factorization_complete_when_small():
    part = partial_factorization(6, 10**4)
    assert part["complete"] and part["cofactor"] == 1
    assert (1002820739, 1) in part["factors"]
    assert FactorizationClaim(6, tuple(part["factors"])).product() == coeffs.ck(6)


def test_partial_factorization_reports_cofactor():
    part = partial_factorization(7, 1000)
    assert FactorizationClaim(7, tuple(part["factors"])).product() * part["cofactor"] == coeffs.ck(7)
    assert not part["complete"] or part["cofactor"] == 1
