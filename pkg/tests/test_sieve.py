import math
import random

import pytest

from cubesieve.primes import PrimeSet, primes_up_to
from cubesieve.sieve import (
    NU_MODELS,
    gallagher_bound,
    gallagher_bound_weighted,
    model_profile,
    optimize_cutoff,
    profile,
)


def test_profile_examples():
    r = profile({1, 2, 3}, 5)
    assert r.nu == 3 and r.counts == (0, 1, 1, 1, 0) and r.size == 3

    squares = [a * a for a in range(1, 11)]
    r = profile(squares, 7)
    assert r.nu == 4
    assert {h for h, c in enumerate(r.counts) if c} == {0, 1, 2, 4}

    r = profile([5, 10, 15], 5)
    assert r.nu == 1 and r.counts[0] == 3


def test_profile_prime_power_modulus():
    r = profile([1, 9, 10], 9)
    assert r.prime == 3 and r.exponent == 2 and r.nu == 2
    with pytest.raises(ValueError):
        profile([1], 12)
    with pytest.raises(ValueError):
        profile([], 5)


def test_profile_invariants():
    rng = random.Random(5)
    for _ in range(50):
        vals = [rng.randrange(1000) for _ in range(rng.randrange(1, 50))]
        mod = rng.choice([2, 3, 4, 5, 7, 9, 25, 27])
        r = profile(vals, mod)
        assert r.nu == sum(1 for c in r.counts if c)
        assert sum(r.counts) == len(vals) == r.size
        assert r.sumsq == sum(c * c for c in r.counts)


def test_plain_bound_nu_one_is_one():
    profs = [profile([3, 6], 3), profile([5, 10], 5)]
    rep = gallagher_bound(profs, 1.0)
    assert rep.numerator == rep.denominator
    assert rep.bound == 1.0


def test_plain_bound_unbounded_guard():
    rep = gallagher_bound([profile([1, 2, 3], 5)], 10.0)
    assert rep.denominator <= 0 and rep.bound is None and rep.unbounded


def test_plain_bound_rejects_duplicates():
    with pytest.raises(ValueError):
        gallagher_bound([profile([1], 5), profile([2], 5)], 1.0)
    with pytest.raises(ValueError):
        gallagher_bound([], 0.0)


def test_plain_bound_mixes_prime_powers():
    # numerator adds log p per modulus p^i, not log p^i
    profs = [profile([1], 3), profile([1], 9)]
    rep = gallagher_bound(profs, 0.5)
    assert math.isclose(rep.numerator, -0.5 + 2 * math.log(3), rel_tol=1e-12)
    assert rep.moduli_used == (3, 9)


def test_squares_bound_close_to_truth():
    # squares up to 1e6 profiled over primes up to 1e4: the certified count
    # must trap the true count 1000 from above, within a decade
    squares = [a * a for a in range(1, 1001)]
    profs = [profile(squares, p) for p in primes_up_to(10**4)]
    rep = gallagher_bound(profs, math.log(10**6))
    assert rep.bound is not None
    assert 10**3 <= rep.bound <= 10**4


def test_weighted_equals_plain_when_equidistributed():
    vals = [1, 8, 15, 22, 2, 9, 16, 23, 3, 10, 17, 24]  # 3 classes x 4 mod 7
    prof = profile(vals, 7)
    plain = gallagher_bound([prof], 0.5)
    weighted = gallagher_bound_weighted([prof], 12, 0.5)
    assert math.isclose(plain.bound, weighted.bound, rel_tol=1e-12)


def test_weighted_concentrated_bound_one():
    prof = profile([7, 14, 21, 28], 7)
    plain = gallagher_bound([prof], 0.5)
    weighted = gallagher_bound_weighted([prof], 4, 0.5)
    assert plain.bound == 1.0 and weighted.bound == 1.0


def test_weighted_dominated_by_plain():
    rng = random.Random(6)
    for _ in range(20):
        vals = sorted(rng.sample(range(1, 3000), 100))
        moduli = [p for p in primes_up_to(50)]
        profs = [profile(vals, p) for p in moduli]
        log_n = math.log(3000)
        plain = gallagher_bound(profs, log_n)
        weighted = gallagher_bound_weighted(profs, 100, log_n)
        if plain.bound is not None and weighted.bound is not None:
            assert weighted.bound <= plain.bound + 1e-9


def test_weighted_rejects_inconsistency():
    profs = [profile([1, 2], 5)]
    with pytest.raises(ValueError):
        gallagher_bound_weighted(profs, 3, 1.0)
    with pytest.raises(ValueError):
        gallagher_bound_weighted([profile([1, 2], 9)], 2, 1.0)
    with pytest.raises(ValueError):
        gallagher_bound_weighted([model_profile(5, 2)], 2, 1.0)


def test_soundness_random_instances():
    rng = random.Random(7)
    moduli = [p for p in primes_up_to(600) if p > 40]
    for _ in range(25):
        n = 10**4
        a = sorted(rng.sample(range(1, n + 1), rng.randrange(20, 40)))
        profs = [profile(a, p) for p in moduli]
        plain = gallagher_bound(profs, math.log(n))
        assert plain.bound is not None
        assert len(a) <= plain.bound + 1e-9
        weighted = gallagher_bound_weighted(profs, len(a), math.log(n))
        assert weighted.bound is not None
        assert len(a) <= weighted.bound + 1e-9
        assert weighted.bound <= plain.bound + 1e-9


def test_soundness_survives_uninformative_modulus():
    # a modulus where every class is occupied adds log p to both sides and
    # must not push the certified bound below the true count
    rng = random.Random(8)
    for _ in range(50):
        n = 500
        a = sorted(rng.sample(range(1, n + 1), rng.randrange(5, 15)))
        moduli = [p for p in primes_up_to(200) if p > 20]
        profs = [profile(a, p) for p in moduli]
        base = gallagher_bound(profs, math.log(n))
        extra = profs + [profile(list(range(1, 3)), 2)]  # nu(2) = 2, no information
        grown = gallagher_bound(extra, math.log(n))
        for rep in (base, grown):
            if rep.bound is not None:
                assert len(a) <= rep.bound + 1e-9


def test_nu_models():
    assert NU_MODELS["five_ceil_sqrt"](71) == 86
    assert NU_MODELS["two_sqrt"](4) == 4.0
    assert NU_MODELS["half_p_plus_one"](7) == 4.0


def test_optimize_cutoff_nu_one_model():
    scan = optimize_cutoff(PrimeSet.all_primes(), lambda p: 1, 1.0, [10, 20])
    assert scan.best is not None and scan.best.bound == 1.0


def test_optimize_cutoff_empty_prime_range():
    scan = optimize_cutoff(PrimeSet.explicit([]), "two_sqrt", 5.0, [10, 100])
    assert scan.best is None
    assert all(rep.unbounded for _, rep in scan.rows)


def test_optimize_cutoff_measured_squares():
    squares = [a * a for a in range(1, 101)]
    scan = optimize_cutoff(
        PrimeSet.all_primes(), "measured", math.log(10**4), [200, 400, 800],
        values=squares,
    )
    assert scan.best is not None
    assert scan.best.bound >= 100  # soundness at the best cutoff


def test_optimize_cutoff_five_ceil_sqrt_scale():
    # frozen from direct evaluation: at N = 1e6 the best certified count on
    # a grid around the prescribed cutoff is about 1480..1500, a small
    # multiple of log N (107x, not quite within 100x)
    log_n = math.log(10**6)
    center = int(400 * log_n * log_n)
    grid = sorted({center // 8, center // 4, center // 2, center, center * 2})
    scan = optimize_cutoff(PrimeSet.all_primes(), "five_ceil_sqrt", log_n, grid, tau=1.0)
    assert math.isclose(scan.prescribed_y, center, rel_tol=1e-4)
    assert scan.best is not None
    assert scan.best.bound <= 120 * log_n
    assert 1400 <= scan.best.bound <= 1600


def test_optimize_cutoff_validation():
    allp = PrimeSet.all_primes()
    with pytest.raises(ValueError):
        optimize_cutoff(allp, "two_sqrt", 1.0, [])
    with pytest.raises(ValueError):
        optimize_cutoff(allp, "two_sqrt", 1.0, [20, 10])
    with pytest.raises(ValueError):
        optimize_cutoff(allp, "measured", 1.0, [10])
