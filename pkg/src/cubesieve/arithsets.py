"""Multiplicatively defined integer sets: squareful numbers, r-full numbers
relative to a prime set, pure powers, values of positive definite binary
quadratic forms, and prime-restricted multiplicative semigroups.

All sets live inside the positive integers; 1 is a member wherever the
defining condition is vacuous (and 1 = 1^2 counts as a pure power)."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .primes import PrimeSet, validate_definite_form

_MAX_N = 2**63 - 1


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]  # (prime, exponent), primes ascending


def factorize(n: int) -> Factorization:
    """Canonical prime factorization by trial division with a 6k+-1 wheel."""
    if not 1 <= n <= _MAX_N:
        raise ValueError(f"factorize expects 1 <= n < 2**63, got {n}")
    m = n
    out = []
    for p in (2, 3):
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            out.append((p, e))
    f = 5
    while f * f <= m:
        for p in (f, f + 2):
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            if e:
                out.append((p, e))
        f += 6
    if m > 1:
        out.append((m, 1))
    return Factorization(n, tuple(out))


def iroot(n: int, e: int) -> int:
    """Largest r >= 0 with r**e <= n (exact integer arithmetic)."""
    if n < 0 or e < 1:
        raise ValueError(f"iroot needs n >= 0 and e >= 1, got ({n}, {e})")
    if n < 2 or e == 1:
        return n
    r = int(round(n ** (1.0 / e)))
    while r > 0 and r**e > n:
        r -= 1
    while (r + 1) ** e <= n:
        r += 1
    return r


def is_perfect_power(n: int) -> bool:
    """True iff n = a**e for some e >= 2 (1 = 1**2 qualifies)."""
    if n == 1:
        return True
    for e in range(2, n.bit_length() + 1):
        r = iroot(n, e)
        if r**e == n:
            return True
    return False


def _squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factorize(n).factors)


def smallest_factor_table(limit: int) -> list[int]:
    """spf[n] = smallest prime factor of n, for 0 <= n <= limit."""
    spf = list(range(limit + 1))
    for i in range(2, math.isqrt(limit) + 1):
        if spf[i] == i:
            for j in range(i * i, limit + 1, i):
                if spf[j] == j:
                    spf[j] = i
    return spf


def _factor_pairs_spf(n: int, spf: list[int]):
    while n > 1:
        p = spf[n]
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        yield p, e


class SetDescriptor:
    """Base for symbolic arithmetic-set descriptors."""

    def contains(self, n: int) -> bool:
        raise NotImplementedError

    def members_up_to(self, limit: int) -> list[int]:
        """Default enumeration: factor every integer once via a shared table."""
        if limit < 1:
            return []
        spf = smallest_factor_table(limit)
        return [1] + [
            n for n in range(2, limit + 1)
            if self._factored_ok(_factor_pairs_spf(n, spf))
        ]

    def _factored_ok(self, pairs) -> bool:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class Squareful(SetDescriptor):
    """n such that p | n implies p^2 | n (the powerful numbers)."""

    def contains(self, n: int) -> bool:
        if n < 1:
            return False
        return all(e >= 2 for _, e in factorize(n).factors)

    def members_up_to(self, limit: int) -> list[int]:
        # every squareful number is a^2 * b^3 with b squarefree; this keeps
        # enumeration O(sqrt(limit)) instead of factoring every integer
        out = set()
        b = 1
        while b**3 <= limit:
            if _squarefree(b):
                bb = b**3
                for a in range(1, math.isqrt(limit // bb) + 1):
                    out.add(a * a * bb)
            b += 1
        return sorted(out)

    def describe(self) -> str:
        return "squareful"


@dataclass(frozen=True)
class RFull(SetDescriptor):
    """n such that p | n and p in T imply p^r | n."""
    r: int
    primes: PrimeSet

    def __post_init__(self):
        if self.r < 2:
            raise ValueError(f"fullness exponent must be >= 2, got {self.r}")

    def contains(self, n: int) -> bool:
        if n < 1:
            return False
        return self._factored_ok(factorize(n).factors)

    def _factored_ok(self, pairs) -> bool:
        return all(e >= self.r or not self.primes.contains_prime(p) for p, e in pairs)

    def describe(self) -> str:
        return f"rfull:{self.r},{self.primes.describe()}"


@dataclass(frozen=True)
class PurePowers(SetDescriptor):
    """n = a^e with e >= 2."""

    def contains(self, n: int) -> bool:
        return n >= 1 and is_perfect_power(n)

    def members_up_to(self, limit: int) -> list[int]:
        if limit < 1:
            return []
        out = {1}
        e = 2
        while 1 << e <= limit:
            a = 2
            while a**e <= limit:
                out.add(a**e)
                a += 1
            e += 1
        return sorted(out)

    def describe(self) -> str:
        return "purepowers"


@dataclass(frozen=True)
class QuadForm(SetDescriptor):
    """Positive values of an irreducible positive definite form
    a*x^2 + b*x*y + c*y^2 with x, y ranging over all integers."""
    a: int
    b: int
    c: int

    def __post_init__(self):
        validate_definite_form(self.a, self.b, self.c)

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def contains(self, n: int) -> bool:
        if n < 1:
            return False
        # 4c*f(x,y) = (2cy + bx)^2 + |d| x^2 bounds |x|; solve for y per x
        d = self.disc
        b, c = self.b, self.c
        xmax = math.isqrt(4 * c * n // -d)
        for x in range(-xmax, xmax + 1):
            disc_y = d * x * x + 4 * c * n
            t = math.isqrt(disc_y)
            if t * t != disc_y:
                continue
            if (-b * x + t) % (2 * c) == 0 or (-b * x - t) % (2 * c) == 0:
                return True
        return False

    def members_up_to(self, limit: int) -> list[int]:
        if limit < 1:
            return []
        a, b, c, d = self.a, self.b, self.c, self.disc
        xmax = math.isqrt(4 * c * limit // -d)
        ymax = math.isqrt(4 * a * limit // -d)
        mark = bytearray(limit + 1)
        for y in range(ymax + 1):  # f(x,-y) = f(-x,y), so y >= 0 suffices
            cy2 = c * y * y
            by = b * y
            for x in range(-xmax, xmax + 1):
                v = a * x * x + by * x + cy2
                if 1 <= v <= limit:
                    mark[v] = 1
        return [n for n in range(1, limit + 1) if mark[n]]

    def describe(self) -> str:
        return f"quadform:{self.a},{self.b},{self.c}"


@dataclass(frozen=True)
class Semigroup(SetDescriptor):
    """n whose prime factors all lie in T (multiplicatively closed)."""
    primes: PrimeSet

    def contains(self, n: int) -> bool:
        if n < 1:
            return False
        return all(self.primes.contains_prime(p) for p, _ in factorize(n).factors)

    def members_up_to(self, limit: int) -> list[int]:
        if limit < 1:
            return []
        ps = self.primes.primes_up_to(limit)
        out = [1]

        def rec(val: int, i: int):
            for j in range(i, len(ps)):
                v = val * ps[j]
                if v > limit:
                    break
                while v <= limit:
                    out.append(v)
                    rec(v, j + 1)
                    v *= ps[j]

        rec(1, 0)
        return sorted(out)

    def describe(self) -> str:
        return f"semigroup:{self.primes.describe()}"


def is_member(s: SetDescriptor, n: int) -> bool:
    if n < 1:
        raise ValueError(f"set membership is defined on positive integers, got {n}")
    return s.contains(n)


def enumerate_members(s: SetDescriptor, limit: int) -> list[int]:
    """Ascending members of s in [1, limit]."""
    if limit < 1:
        raise ValueError(f"enumeration limit must be >= 1, got {limit}")
    return s.members_up_to(limit)


def parse_set_descriptor(text: str) -> SetDescriptor:
    """Parse `squareful`, `rfull:r,<primeset>`, `purepowers`, `quadform:a,b,c`,
    `semigroup:<primeset>`."""
    from .primes import parse_prime_set

    text = text.strip()
    if text == "squareful":
        return Squareful()
    if text == "purepowers":
        return PurePowers()
    head, sep, rest = text.partition(":")
    if not sep:
        raise ValueError(f"unrecognized set descriptor: {text!r}")
    if head == "rfull":
        rtext, sep2, pset = rest.partition(",")
        if not sep2:
            raise ValueError(f"rfull needs `rfull:r,<primeset>`, got {text!r}")
        return RFull(int(rtext), parse_prime_set(pset))
    if head == "quadform":
        a, b, c = (int(t) for t in rest.split(","))
        return QuadForm(a, b, c)
    if head == "semigroup":
        return Semigroup(parse_prime_set(rest))
    raise ValueError(f"unrecognized set descriptor: {text!r}")
