import random

import pytest

from cubesieve.arithsets import (
    Factorization,
    PurePowers,
    QuadForm,
    RFull,
    Semigroup,
    Squareful,
    enumerate_members,
    factorize,
    iroot,
    is_member,
    is_perfect_power,
    parse_set_descriptor,
)
from cubesieve.primes import PrimeSet, primes_up_to


def test_factorize_examples():
    assert factorize(1) == Factorization(1, ())
    assert factorize(72).factors == ((2, 3), (3, 2))
    assert factorize(9991).factors == ((97, 1), (103, 1))


def test_factorize_reconstructs():
    rng = random.Random(2)
    samples = [rng.randrange(1, 10**6) for _ in range(200)]
    samples += [2**40, 3 * 5**9, 999983, 2**62]
    for n in samples:
        f = factorize(n)
        prod = 1
        for p, e in f.factors:
            assert e >= 1
            prod *= p**e
        assert prod == n
        assert list(f.factors) == sorted(f.factors)


def test_factorize_range():
    with pytest.raises(ValueError):
        factorize(0)
    with pytest.raises(ValueError):
        factorize(2**63)


def test_iroot():
    assert iroot(0, 3) == 0
    assert iroot(1, 5) == 1
    assert iroot(26, 3) == 2
    assert iroot(27, 3) == 3
    for n in (10**15 - 1, 10**15, 10**15 + 1):
        for e in (2, 3, 5, 7):
            r = iroot(n, e)
            assert r**e <= n < (r + 1) ** e


def test_is_perfect_power():
    powers = {a**e for e in range(2, 20) for a in range(1, 200) if a**e <= 10**4}
    powers.add(1)
    for n in range(1, 10**4 + 1):
        assert is_perfect_power(n) == (n in powers)


def test_membership_examples():
    assert is_member(Squareful(), 72)
    assert not is_member(Squareful(), 12)
    assert is_member(PurePowers(), 1)
    assert not is_member(QuadForm(1, 0, 1), 21)
    assert is_member(QuadForm(1, 0, 1), 25)


def test_one_is_member_everywhere():
    allp = PrimeSet.all_primes()
    for s in (Squareful(), RFull(2, allp), PurePowers(), Semigroup(allp)):
        assert is_member(s, 1)


def test_membership_rejects_nonpositive():
    with pytest.raises(ValueError):
        is_member(Squareful(), 0)


def test_enumerate_examples():
    assert enumerate_members(Squareful(), 50) == [1, 4, 8, 9, 16, 25, 27, 32, 36, 49]
    assert enumerate_members(PurePowers(), 30) == [1, 4, 8, 9, 16, 25, 27]
    assert enumerate_members(Squareful(), 3) == [1]


def test_enumerate_matches_membership():
    # oracle equivalence: the fast enumerators against one-at-a-time membership
    variants = [
        Squareful(),
        RFull(2, PrimeSet.all_primes()),
        PurePowers(),
        QuadForm(1, 0, 1),
        Semigroup(PrimeSet.explicit([2, 3, 5])),
    ]
    for s in variants:
        assert enumerate_members(s, 10**5) == [
            n for n in range(1, 10**5 + 1) if s.contains(n)
        ], s.describe()
    for s in [
        RFull(3, PrimeSet.residue_class(1, 2)),
        Semigroup(PrimeSet.complement(PrimeSet.explicit([2]))),
    ]:
        assert enumerate_members(s, 10**4) == [
            n for n in range(1, 10**4 + 1) if s.contains(n)
        ], s.describe()


def test_squareful_enumeration_large():
    # the a^2 b^3 parameterization at a size where per-element factoring is slow
    members = enumerate_members(Squareful(), 10**6)
    assert members[0] == 1 and members[-1] == 10**6
    rng = random.Random(3)
    mset = set(members)
    for n in rng.sample(range(1, 10**6 + 1), 300):
        assert (n in mset) == is_member(Squareful(), n)


def test_rfull_equals_squareful():
    rf = RFull(2, PrimeSet.all_primes())
    sq = Squareful()
    assert enumerate_members(rf, 10**4) == enumerate_members(sq, 10**4)


def test_rfull_divisibility_restatement():
    t = PrimeSet.explicit([2, 5, 7])
    s = RFull(3, t)
    for n in enumerate_members(s, 10**4):
        for p in (2, 5, 7):
            if n % p == 0:
                assert n % p**3 == 0


def test_squareful_multiplicatively_closed():
    members = enumerate_members(Squareful(), 10**3)
    for m in members:
        for n in members:
            assert is_member(Squareful(), m * n)


def test_two_squares_criterion():
    # sum of two squares iff no prime = 3 mod 4 appears to an odd exponent
    s = QuadForm(1, 0, 1)
    members = set(enumerate_members(s, 10**4))
    for n in range(1, 10**4 + 1):
        classical = all(
            e % 2 == 0 for p, e in factorize(n).factors if p % 4 == 3
        )
        assert (n in members) == classical, n


def test_quadform_validation():
    with pytest.raises(ValueError):
        QuadForm(1, 0, -1)
    with pytest.raises(ValueError):
        QuadForm(1, 2, 1)
    with pytest.raises(ValueError):
        QuadForm(-1, 0, -2)


def test_quadform_nontrivial_form():
    s = QuadForm(2, 1, 3)  # disc -23
    got = enumerate_members(s, 200)
    brute = set()
    for x in range(-30, 31):
        for y in range(-30, 31):
            v = 2 * x * x + x * y + 3 * y * y
            if 1 <= v <= 200:
                brute.add(v)
    assert got == sorted(brute)


def test_semigroup_smooth_numbers():
    s = Semigroup(PrimeSet.explicit([2, 3]))
    assert enumerate_members(s, 50) == [1, 2, 3, 4, 6, 8, 9, 12, 16, 18, 24, 27, 32, 36, 48]


def test_rfull_requires_r_at_least_two():
    with pytest.raises(ValueError):
        RFull(1, PrimeSet.all_primes())


def test_parse_set_descriptor():
    for text in [
        "squareful",
        "purepowers",
        "rfull:3,class:3,4",
        "quadform:1,0,1",
        "semigroup:list:2,3",
    ]:
        s = parse_set_descriptor(text)
        assert s.describe() == text
    with pytest.raises(ValueError):
        parse_set_descriptor("cubes")
    with pytest.raises(ValueError):
        parse_set_descriptor("rfull:2")


def test_enumerate_rejects_bad_limit():
    with pytest.raises(ValueError):
        enumerate_members(Squareful(), 0)
