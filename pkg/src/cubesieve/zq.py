"""Subset-sum machinery over Z_p and Z_q (q = p*m): target-sum witnesses,
lift-zero construction (sum divisible by p but not by q), minimal covering
subset size, sumsets, and exhaustive small-prime verification.

Witnesses index into the input sequence, so repeated residues are handled
without ambiguity. All finders are deterministic: the reachability DP scans
elements left to right and freezes each residue's witness at first reach."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .primes import is_prime


class CounterexampleError(RuntimeError):
    """A witness guaranteed by a covering/lifting theorem was not found.

    Raised only when the relevant hypotheses are satisfied, so an instance
    of this error is reportable evidence of an implementation bug."""


class StrategyPreconditionError(ValueError):
    """A constructive strategy could not complete a selection step."""


def ceil_two_sqrt(p: int) -> int:
    """ceil(2*sqrt(p)) in exact integer arithmetic."""
    t = math.isqrt(4 * p)
    if t * t < 4 * p:
        t += 1
    return t


@dataclass(frozen=True)
class Modulus:
    """q = p * m with p prime; prime-power moduli have m = p^(ell-1)."""
    p: int
    m: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.m < 1:
            raise ValueError(f"cofactor must be >= 1, got {self.m}")

    @property
    def q(self) -> int:
        return self.p * self.m

    @property
    def is_prime_power(self) -> bool:
        t = self.m
        while t % self.p == 0:
            t //= self.p
        return t == 1

    @property
    def ell(self) -> int:
        """Exponent when q = p^ell."""
        if not self.is_prime_power:
            raise ValueError(f"q = {self.q} is not a power of {self.p}")
        e = 0
        t = self.q
        while t > 1:
            t //= self.p
            e += 1
        return e


@dataclass(frozen=True)
class ResidueMultiset:
    """Elements of Z_q with multiplicity, carrying the reduction map to Z_p."""
    modulus: Modulus
    elements: tuple[int, ...]

    def __post_init__(self):
        q = self.modulus.q
        for e in self.elements:
            if not 0 <= e < q:
                raise ValueError(f"element {e} outside [0, {q})")

    def reductions_mod_p(self) -> tuple[int, ...]:
        p = self.modulus.p
        return tuple(e % p for e in self.elements)

    def distinct_mod_p(self) -> int:
        return len(set(self.reductions_mod_p()))


@dataclass(frozen=True)
class SubsetWitness:
    """A subset of input positions, its sum mod q, and certified facts.

    Each fact is (modulus, op, target) with op `==` or `!=`, asserting
    sum == target (mod modulus) resp. sum != target (mod modulus)."""
    q: int
    indices: tuple[int, ...]
    sum_mod_q: int
    facts: tuple[tuple[int, str, int], ...]

    def validate(self, elements: Sequence[int]) -> bool:
        """Re-check everything from scratch against the original elements."""
        idx = self.indices
        if not idx or any(idx[i] >= idx[i + 1] for i in range(len(idx) - 1)):
            return False
        try:
            s = sum(elements[i] for i in idx)
        except IndexError:
            return False
        if s % self.q != self.sum_mod_q:
            return False
        for mod, op, target in self.facts:
            if op == "==":
                if s % mod != target:
                    return False
            elif op == "!=":
                if s % mod == target:
                    return False
            else:
                return False
        return True


def _first_reach_dp(values: Sequence[int], q: int, stop_at: int | None = None):
    """Reachability of nonempty-subset sums over Z_q with parent tracking.

    parent[s] = (element index i, previous state or -1 for the singleton
    subset {i}); each state keeps the witness frozen at its first reach.
    Returns (reached flags, parents, first-reach order list)."""
    reached = [False] * q
    parent: list[tuple[int, int] | None] = [None] * q
    order: list[int] = []
    for i, v in enumerate(values):
        v %= q
        base = len(order)
        if not reached[v]:
            reached[v] = True
            parent[v] = (i, -1)
            order.append(v)
        for k in range(base):
            t = order[k] + v
            if t >= q:
                t -= q
            if not reached[t]:
                reached[t] = True
                parent[t] = (i, order[k])
                order.append(t)
        if len(order) == q or (stop_at is not None and reached[stop_at]):
            break
    return reached, parent, order


def _witness_indices(parent, state: int) -> tuple[int, ...]:
    idx = []
    s = state
    while True:
        i, prev = parent[s]
        idx.append(i)
        if prev == -1:
            break
        s = prev
    return tuple(reversed(idx))


def subset_sum_find(elements: Sequence[int], target: int, p: int) -> SubsetWitness | None:
    """Find a nonempty subset of `elements` with sum = target (mod p).

    Returns None when no nonempty subset works. Any input occupying more
    than 2*sqrt(p) distinct residues covers every target (Olson), so an
    empty answer in that regime is an internal error and raises."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    target %= p
    vals = [e % p for e in elements]
    reached, parent, _ = _first_reach_dp(vals, p, stop_at=target)
    if reached[target]:
        idx = _witness_indices(parent, target)
        return SubsetWitness(p, idx, target, ((p, "==", target),))
    distinct = len(set(vals))
    if distinct * distinct > 4 * p:
        raise CounterexampleError(
            f"{distinct} distinct residues mod {p} must cover every target, "
            f"but {target} was not reached"
        )
    return None


def minimal_cover_k(p: int) -> int:
    """Least k such that every k-subset of Z_p has nonempty subset sums
    covering all of Z_p.

    Computed exactly: non-covering subsets form a downward-closed family, so
    a depth-first extension over them finds the largest non-covering size M,
    and k = M + 1. Exponential in the worst case; capped at p <= 31."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p > 31:
        raise ValueError(f"exhaustive search capped at p <= 31, got {p}")
    full = (1 << p) - 1
    best = 0
    # stack entries: (next element to try, subset size, reachable-sum bitmask)
    stack = [(0, 0, 0)]
    while stack:
        start, size, mask = stack.pop()
        if size > best:
            best = size
        for e in range(start, p):
            if e:
                rot = ((mask << e) | (mask >> (p - e))) & full
            else:
                rot = mask
            nm = mask | rot | (1 << e)
            if nm != full:
                stack.append((e + 1, size + 1, nm))
    return best + 1


def find_lift_zero(b: ResidueMultiset, distinct_mod_p: bool = False) -> SubsetWitness | None:
    """Find A inside the multiset with sum(A) = 0 (mod p) but != 0 (mod q).

    Complete search via the Z_q reachability DP. Whenever the reduction
    mod p occupies more than 4*ceil(2*sqrt(p)) classes and some element is
    not a multiple of m = q/p, a witness must exist; an empty answer there
    raises CounterexampleError. With distinct_mod_p=True the elements are
    required to be pairwise distinct mod p."""
    mod = b.modulus
    if mod.m == 1:
        raise ValueError("lift-zero needs a composite modulus q = p*m with m > 1")
    p, q, m = mod.p, mod.q, mod.m
    if distinct_mod_p and b.distinct_mod_p() != len(b.elements):
        raise ValueError("elements are not distinct mod p")
    reached, parent, _ = _first_reach_dp(b.elements, q)
    candidates = [
        _witness_indices(parent, s) for s in range(p, q, p) if reached[s]
    ]
    if candidates:
        idx = min(candidates)
        s = sum(b.elements[i] for i in idx) % q
        return SubsetWitness(q, idx, s, ((p, "==", 0), (q, "!=", 0)))
    hypotheses = (
        b.distinct_mod_p() > 4 * ceil_two_sqrt(p)
        and any(e % m != 0 for e in b.elements)
    )
    if hypotheses:
        raise CounterexampleError(
            f"lift-zero hypotheses hold for p={p}, m={m} "
            f"({b.distinct_mod_p()} residues mod p) but no witness was found"
        )
    return None


def schwarzwald(b: ResidueMultiset, a0: int, strategy: str = "direct") -> SubsetWitness | None:
    """Find A inside the multiset with a0 + sum(A) = 0 (mod p) and != 0
    (mod q = p^ell), ell > 1. The empty subset never counts.

    `direct` runs the complete Z_q reachability DP over all admissible
    targets. `paper` follows the constructive two-stage route: select a
    subfamily A1 spanning ceil(2*sqrt(p)) + 1 residue classes while keeping
    some non-multiple of m = p^(ell-1) outside, solve the covering step
    inside A1, and if the resulting sum collides with 0 mod q, repair it
    with a disjoint lift-zero subset from the remainder. The constructive
    route rejects inputs failing a selection step with a diagnostic naming
    the step; the certified facts of either strategy are identical."""
    mod = b.modulus
    if not mod.is_prime_power or mod.ell < 2:
        raise ValueError(f"modulus must be p^ell with ell > 1, got p={mod.p}, m={mod.m}")
    p, q, m = mod.p, mod.q, mod.m
    a0 %= q
    facts = ((p, "==", (-a0) % p), (q, "!=", (-a0) % q))

    if strategy == "direct":
        reached, parent, _ = _first_reach_dp(b.elements, q)
        bad = (-a0) % q
        candidates = [
            _witness_indices(parent, s)
            for s in range((-a0) % p, q, p)
            if s != bad and reached[s]
        ]
        if candidates:
            idx = min(candidates)
            s = sum(b.elements[i] for i in idx) % q
            return SubsetWitness(q, idx, s, facts)
        if b.distinct_mod_p() >= 5 * ceil_two_sqrt(p) + 2:
            raise CounterexampleError(
                f"shifted lift-zero hypotheses hold (|B mod {p}| = "
                f"{b.distinct_mod_p()}) but no witness was found"
            )
        return None

    if strategy != "paper":
        raise ValueError(f"strategy must be 'direct' or 'paper', got {strategy!r}")

    elems = b.elements
    k1 = ceil_two_sqrt(p) + 1
    first_idx: dict[int, int] = {}
    for i, e in enumerate(elems):
        first_idx.setdefault(e % p, i)
    if len(first_idx) < k1:
        raise StrategyPreconditionError(
            f"step A1: need {k1} distinct residues mod {p}, have {len(first_idx)}"
        )
    non_mult = [i for i, e in enumerate(elems) if e % m != 0]
    if not non_mult:
        raise StrategyPreconditionError("step A1: every element is a multiple of m")
    protected = non_mult[-1]  # stays outside A1

    a1_positions: list[int] = []
    for r, i in first_idx.items():
        if len(a1_positions) == k1:
            break
        if i == protected:
            alt = next(
                (j for j, e in enumerate(elems) if j != protected and e % p == r),
                None,
            )
            if alt is None:
                continue  # class would consume the protected element; skip it
            i = alt
        a1_positions.append(i)
    if len(a1_positions) < k1:
        raise StrategyPreconditionError(
            f"step A1: cannot span {k1} residue classes while keeping a "
            f"non-multiple of m outside"
        )

    sub = subset_sum_find([elems[i] for i in a1_positions], -a0, p)
    if sub is None:
        raise CounterexampleError(
            f"covering step: {k1} distinct residues mod {p} failed to reach {(-a0) % p}"
        )
    a2 = sorted(a1_positions[j] for j in sub.indices)
    s2 = sum(elems[i] for i in a2)
    if (a0 + s2) % q != 0:
        return SubsetWitness(q, tuple(a2), s2 % q, facts)

    a1_set = set(a1_positions)
    rest = [i for i in range(len(elems)) if i not in a1_set]
    sub3 = find_lift_zero(ResidueMultiset(mod, tuple(elems[i] for i in rest)))
    if sub3 is None:
        if b.distinct_mod_p() >= 5 * ceil_two_sqrt(p) + 2:
            raise CounterexampleError(
                "repair step: lift-zero subset guaranteed but not found"
            )
        return None
    idx = tuple(sorted(a2 + [rest[j] for j in sub3.indices]))
    s = sum(elems[i] for i in idx) % q
    return SubsetWitness(q, idx, s, facts)


def sumset_mod_p(a: set[int], b: set[int], p: int) -> set[int]:
    """{x + y mod p}; satisfies |A+B| >= min(p, |A|+|B|-1) (Cauchy-Davenport)."""
    if not a or not b:
        raise ValueError("sumset needs nonempty operands")
    if any(not 0 <= x < p for x in a) or any(not 0 <= x < p for x in b):
        raise ValueError(f"operands must be subsets of Z_{p}")
    return {(x + y) % p for x in a for y in b}


@dataclass(frozen=True)
class OlsonReport:
    """Outcome of exhaustively checking that every large-enough subset of
    Z_p reaches every target through nonempty subset sums."""
    p: int
    min_size: int
    subsets_checked: int
    cases_checked: int
    counterexamples: tuple


def verify_olson_exhaustive(p: int) -> OlsonReport:
    """For every B in Z_p with |B| > 2*sqrt(p) and every target a, assert
    subset_sum_find succeeds and its witness re-validates. Capped at p <= 13."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p > 13:
        raise ValueError(f"exhaustive verification capped at p <= 13, got {p}")
    min_size = math.isqrt(4 * p) + 1  # least size strictly above 2*sqrt(p)
    counters = []
    subsets = cases = 0
    for size in range(min_size, p + 1):
        for b in itertools.combinations(range(p), size):
            subsets += 1
            for a in range(p):
                cases += 1
                try:
                    w = subset_sum_find(b, a, p)
                except CounterexampleError:
                    w = None
                if w is None or not w.validate(b):
                    counters.append((b, a))
    counters.sort()
    return OlsonReport(p, min_size, subsets, cases, tuple(counters))
