"""Hilbert cubes: representation, verification against an arithmetic set,
residue-class constraint checks, and maximal-dimension search.

A cube H(a0; a1, ..., ad) is the multiset of the 2^d sums a0 + sum_{i in I}
a_i over subsets I. Subset-sum cubes are the a0 = 0 case; there the empty
sum 0 is exempt from set membership since only the nonzero sums live in
[1, N]."""

from __future__ import annotations

import math
import random
from bisect import bisect_left
from dataclasses import dataclass

from .arithsets import SetDescriptor, enumerate_members, is_member
from .primes import PrimeSet
from .zq import ceil_two_sqrt

_SUMS_CAP = 30


@dataclass(frozen=True)
class HilbertCube:
    """Base a0 plus a sorted step multiset; dimension = number of steps."""
    a0: int
    steps: tuple[int, ...]
    distinct_required: bool = False

    def __post_init__(self):
        if self.a0 < 0:
            raise ValueError(f"base must be non-negative, got {self.a0}")
        steps = tuple(sorted(int(s) for s in self.steps))
        if any(s < 1 for s in steps):
            raise ValueError("steps must be positive integers")
        if self.distinct_required and any(
            steps[i] == steps[i + 1] for i in range(len(steps) - 1)
        ):
            raise ValueError("steps must be strictly increasing when distinctness is required")
        object.__setattr__(self, "steps", steps)

    @property
    def dimension(self) -> int:
        return len(self.steps)

    def sums(self) -> list[int]:
        """All 2^d subset sums, ascending, with multiplicity."""
        if self.dimension > _SUMS_CAP:
            raise ValueError(f"refusing to enumerate 2^{self.dimension} sums (cap {_SUMS_CAP})")
        out = [self.a0]
        for a in self.steps:
            out += [s + a for s in out]
        out.sort()
        return out

    def describe(self) -> str:
        return f"H({self.a0};{'+'.join(str(s) for s in self.steps)})"


def verify(cube: HilbertCube, s: SetDescriptor, limit: int) -> tuple[bool, int | None]:
    """True iff every sum lies in s intersected with [1, limit]; the empty
    sum 0 of a subset-sum cube (a0 = 0) is exempt. Returns the first
    offending sum on failure, independently of any search state."""
    for v in cube.sums():
        if v == 0 and cube.a0 == 0:
            continue
        if not 1 <= v <= limit or not is_member(s, v):
            return False, v
    return True, None


@dataclass(frozen=True)
class ResidueCheckRow:
    p: int
    residues: int
    bound: float
    ok: bool


@dataclass(frozen=True)
class ResidueCheckReport:
    rule: str
    rows: tuple[ResidueCheckRow, ...]

    @property
    def violations(self) -> tuple[ResidueCheckRow, ...]:
        return tuple(r for r in self.rows if not r.ok)


def residue_constraint_check(
    cube: HilbertCube,
    prime_set: PrimeSet,
    r: int,
    y: int,
    rule: str = "rfull",
) -> ResidueCheckReport:
    """Count the residue classes hit by the steps modulo each prime of the
    set up to y and compare with the applicable local bound.

    rule `rfull` (cube verified in an r-full set, r >= 2): a cube whose
    steps span 5*ceil(2*sqrt(p)) + 2 classes contains an element divisible
    by p but not p^2, so the count must stay <= 5*ceil(2*sqrt(p)) + 1.
    rule `semigroup` (primes outside the semigroup's prime set): spanning
    more than 2*sqrt(p) classes forces an element divisible by p, so the
    count must stay <= 2*sqrt(p). Any violation is a reportable
    counterexample."""
    if rule not in ("rfull", "semigroup"):
        raise ValueError(f"rule must be rfull or semigroup, got {rule!r}")
    if rule == "rfull" and r < 2:
        raise ValueError(f"rfull rule needs r >= 2, got {r}")
    rows = []
    for p in prime_set.primes_up_to(y):
        count = len({a % p for a in cube.steps})
        bound = 5 * ceil_two_sqrt(p) + 1 if rule == "rfull" else 2 * math.sqrt(p)
        rows.append(ResidueCheckRow(p, count, bound, count <= bound))
    return ResidueCheckReport(rule, tuple(rows))


@dataclass(frozen=True)
class CubeSearchResult:
    """best_dimension is -1 with witness None when the set has no member in
    [1, limit] (no admissible base point). `exact` is False when the node
    budget ran out, in which case the result is a certified lower bound and
    mode degrades to `greedy`."""
    limit: int
    descriptor: str
    mode: str
    best_dimension: int
    witness: HilbertCube | None
    nodes_expanded: int
    exact: bool
    subset_sum_mode: bool


def _valid_extension(a: int, sums_desc: list[int], member_set: set[int]) -> bool:
    # the largest sum + a is a member by construction; check the rest,
    # largest first (sparser high range fails fastest)
    for s in sums_desc[1:]:
        if s + a not in member_set:
            return False
    return True


def max_dimension_exact(
    s: SetDescriptor,
    limit: int,
    subset_sum_mode: bool = False,
    distinct: bool = False,
    budget: int = 10**8,
) -> CubeSearchResult:
    """Exhaustive depth-first branch and bound for the largest cube dimension.

    States are (a0, a1 <= a2 <= ... ) with candidates generated as
    differences member - (current largest sum); every new sum must land in
    the member set. The first witness found at each new depth is kept, so
    the reported witness is the lexicographically least maximal one (by
    (a0, steps)) whenever the search completes. Budget exhaustion is
    reported, never silent."""
    members = enumerate_members(s, limit)
    member_set = set(members)
    best: dict = {"d": -1, "cube": None}
    nodes = 0
    exhausted = False

    def extend(a0: int, sums_desc: list[int], steps: list[int]):
        nonlocal nodes, exhausted
        if len(steps) > best["d"]:
            best["d"] = len(steps)
            best["cube"] = (a0, tuple(steps))
        smax = sums_desc[0]
        low = steps[-1] + 1 if (distinct and steps) else (steps[-1] if steps else 1)
        for j in range(bisect_left(members, smax + low), len(members)):
            if exhausted:
                return
            nodes += 1
            if nodes > budget:
                exhausted = True
                return
            a = members[j] - smax
            if _valid_extension(a, sums_desc, member_set):
                merged = sorted(sums_desc + [t + a for t in sums_desc], reverse=True)
                steps.append(a)
                extend(a0, merged, steps)
                steps.pop()

    bases = [0] if subset_sum_mode else members
    for a0 in bases:
        if exhausted:
            break
        extend(a0, [a0], [])

    witness = None
    if best["cube"] is not None:
        witness = HilbertCube(best["cube"][0], best["cube"][1], distinct)
    return CubeSearchResult(
        limit=limit,
        descriptor=s.describe(),
        mode="greedy" if exhausted else "exact",
        best_dimension=best["d"],
        witness=witness,
        nodes_expanded=nodes,
        exact=not exhausted,
        subset_sum_mode=subset_sum_mode,
    )


def max_dimension_greedy(
    s: SetDescriptor,
    limit: int,
    subset_sum_mode: bool = False,
    seed: int = 0,
    distinct: bool = False,
    restarts: int = 40,
) -> CubeSearchResult:
    """Randomized greedy extension with restarts; a certified lower bound.

    Deterministic for a fixed seed. The best cube over all restarts is
    returned (first achiever wins ties)."""
    members = enumerate_members(s, limit)
    member_set = set(members)
    rng = random.Random(seed)
    best: dict = {"d": -1, "cube": None}
    nodes = 0
    bases = [0] if subset_sum_mode else members
    if bases:
        for _ in range(restarts):
            a0 = rng.choice(bases)
            sums_desc = [a0]
            steps: list[int] = []
            while True:
                smax = sums_desc[0]
                low = steps[-1] + 1 if (distinct and steps) else (steps[-1] if steps else 1)
                cands = []
                for j in range(bisect_left(members, smax + low), len(members)):
                    nodes += 1
                    a = members[j] - smax
                    if _valid_extension(a, sums_desc, member_set):
                        cands.append(a)
                if not cands:
                    break
                a = rng.choice(cands)
                sums_desc = sorted(sums_desc + [t + a for t in sums_desc], reverse=True)
                steps.append(a)
            if len(steps) > best["d"]:
                best["d"] = len(steps)
                best["cube"] = (a0, tuple(steps))
    witness = None
    if best["cube"] is not None:
        witness = HilbertCube(best["cube"][0], best["cube"][1], distinct)
    return CubeSearchResult(
        limit=limit,
        descriptor=s.describe(),
        mode="greedy",
        best_dimension=best["d"],
        witness=witness,
        nodes_expanded=nodes,
        exact=False,
        subset_sum_mode=subset_sum_mode,
    )


def max_homogeneous_ap(s: SetDescriptor, limit: int) -> tuple[int, int | None]:
    """Longest homogeneous progression s, 2s, ..., Ls inside the set up to
    the limit; returns (L, least step s achieving it), (0, None) if the set
    has no member in range."""
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    member_set = set(enumerate_members(s, limit))
    best_len = 0
    best_step = None
    step = 1
    while step <= limit and step * (best_len + 1) <= limit:
        k = 1
        while k * step <= limit and k * step in member_set:
            k += 1
        if k - 1 > best_len:
            best_len = k - 1
            best_step = step
        step += 1
    return best_len, best_step
