import math
import random

import pytest

from cubesieve.primes import (
    DensityReport,
    PrimeSet,
    density,
    inert_primes,
    is_prime,
    legendre,
    parse_prime_set,
    primes_up_to,
    validate_definite_form,
)


def trial_division_primes(y):
    out = []
    for n in range(2, y + 1):
        if all(n % d for d in range(2, math.isqrt(n) + 1)):
            out.append(n)
    return out


def brute_residues(p):
    return {x * x % p for x in range(1, p)}


def test_primes_up_to_small():
    assert primes_up_to(1) == []
    assert primes_up_to(0) == []
    assert primes_up_to(10) == [2, 3, 5, 7]
    assert primes_up_to(2) == [2]


def test_primes_up_to_oracle():
    got = primes_up_to(100)
    assert len(got) == 25 and got[-1] == 97
    assert got == trial_division_primes(100)
    assert primes_up_to(1000) == trial_division_primes(1000)


def test_is_prime():
    ps = set(trial_division_primes(2000))
    for n in range(2000):
        assert is_prime(n) == (n in ps)
    assert is_prime(2**31 - 1)
    assert not is_prime(2**31)


def test_legendre_examples():
    assert legendre(1, 5) == 1
    assert legendre(-4, 3) == -1
    assert legendre(-4, 5) == 1


def test_legendre_rejects_bad_modulus():
    with pytest.raises(ValueError):
        legendre(3, 4)
    with pytest.raises(ValueError):
        legendre(3, 2)
    with pytest.raises(ValueError):
        legendre(3, 15)


def test_legendre_against_brute_squares():
    for p in trial_division_primes(100):
        if p == 2:
            continue
        residues = brute_residues(p)
        for a in range(p):
            expected = 0 if a == 0 else (1 if a in residues else -1)
            assert legendre(a, p) == expected


def test_legendre_multiplicative():
    rng = random.Random(1)
    for _ in range(300):
        p = rng.choice([3, 5, 7, 11, 13, 97, 101])
        a, b = rng.randrange(1, p), rng.randrange(1, p)
        assert legendre(a, p) * legendre(b, p) == legendre(a * b, p)


def test_inert_primes_examples():
    assert inert_primes(1, 0, 1, 20) == [3, 7, 11, 19]
    assert inert_primes(1, 0, 1, 2) == []
    assert inert_primes(1, 1, 1, 20) == [5, 11, 17]


def test_inert_primes_brute_crosscheck():
    # inert exactly when the discriminant misses every nonzero square mod p
    for a, b, c in [(1, 0, 1), (1, 1, 1), (2, 1, 3)]:
        disc = b * b - 4 * a * c
        got = set(inert_primes(a, b, c, 100))
        for p in trial_division_primes(100):
            if p == 2 or disc % p == 0:
                assert p not in got
                continue
            assert (p in got) == (disc % p not in brute_residues(p))


def test_form_validation():
    with pytest.raises(ValueError, match="reducible"):
        validate_definite_form(1, 0, 0)
    with pytest.raises(ValueError, match="reducible"):
        validate_definite_form(1, 3, 2)  # disc 1
    with pytest.raises(ValueError, match="indefinite"):
        validate_definite_form(1, 0, -3)  # disc 12
    with pytest.raises(ValueError, match="positive definite"):
        validate_definite_form(-1, 0, -1)


def test_prime_set_kinds():
    allp = PrimeSet.all_primes()
    assert allp.primes_up_to(10) == [2, 3, 5, 7]
    cls = PrimeSet.residue_class(3, 4)
    assert cls.primes_up_to(30) == [3, 7, 11, 19, 23]
    lst = PrimeSet.explicit([7, 3, 3, 5])
    assert lst.primes_up_to(6) == [3, 5]
    assert lst.primes_up_to(100) == [3, 5, 7]
    inert = PrimeSet.inert_of_form(1, 0, 1)
    assert inert.primes_up_to(20) == [3, 7, 11, 19]


def test_prime_set_validation():
    with pytest.raises(ValueError):
        PrimeSet.residue_class(2, 4)
    with pytest.raises(ValueError):
        PrimeSet.explicit([4])


def test_complement_involution():
    t = PrimeSet.residue_class(1, 4)
    cc = PrimeSet.complement(PrimeSet.complement(t))
    for y in (10, 100, 1000):
        assert cc.primes_up_to(y) == t.primes_up_to(y)


def test_complement_partition():
    t = PrimeSet.residue_class(3, 4)
    comp = PrimeSet.complement(t)
    got = sorted(t.primes_up_to(200) + comp.primes_up_to(200))
    assert got == primes_up_to(200)


def test_cache_regrow():
    t = PrimeSet.all_primes()
    assert t.primes_up_to(10) == [2, 3, 5, 7]
    assert t.primes_up_to(20) == [2, 3, 5, 7, 11, 13, 17, 19]
    assert t.primes_up_to(10) == [2, 3, 5, 7]


def test_density_empty():
    rep = density(PrimeSet.explicit([]), 100)
    assert rep == DensityReport(100, 0.0, 0.0)


def test_density_all_primes():
    rep = density(PrimeSet.all_primes(), 10**4)
    assert 1.8 <= rep.normalized <= 2.2


def test_density_residue_class():
    rep = density(PrimeSet.residue_class(3, 4), 10**4)
    assert 0.8 <= rep.normalized <= 1.2


def test_density_normalized_stays_small():
    for y in (100, 1000, 10**4):
        assert density(PrimeSet.all_primes(), y).normalized <= 3


def test_density_additivity():
    t = PrimeSet.inert_of_form(1, 0, 1)
    comp = PrimeSet.complement(t)
    for y in (100, 5000):
        whole = density(PrimeSet.all_primes(), y).weighted_sum
        split = density(t, y).weighted_sum + density(comp, y).weighted_sum
        assert math.isclose(whole, split, rel_tol=1e-12)


def test_density_rejects_tiny_cutoff():
    with pytest.raises(ValueError):
        density(PrimeSet.all_primes(), 1)


def test_parse_round_trip():
    for text in ["all", "class:3,4", "list:2,5,11", "inert:1,0,1", "complement:class:1,3"]:
        ps = parse_prime_set(text)
        assert ps.describe() == text
        assert parse_prime_set(ps.describe()).primes_up_to(50) == ps.primes_up_to(50)
    with pytest.raises(ValueError):
        parse_prime_set("nonsense")
    with pytest.raises(ValueError):
        parse_prime_set("class:2,4")
