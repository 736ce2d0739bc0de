"""Finite topologies on point sets 0..m-1; opens are bitmasks."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .bitsets import bits, iter_submasks


@dataclass(frozen=True)
class FiniteTopology:
    """A family of opens containing 0 and full, closed under | and &."""

    size: int
    opens: frozenset[int]

    def __post_init__(self):
        full = (1 << self.size) - 1
        if 0 not in self.opens or full not in self.opens:
            raise ValueError("topology must contain the empty and full sets")
        for u in self.opens:
            if u & ~full:
                raise ValueError("open set outside the point range")
            for v in self.opens:
                if u | v not in self.opens or u & v not in self.opens:
                    raise ValueError("family not closed under union/intersection")

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    def is_open(self, mask: int) -> bool:
        return mask in self.opens

    def is_closed(self, mask: int) -> bool:
        return (self.full & ~mask) in self.opens

    def closed_sets(self):
        return [self.full & ~u for u in self.opens]

    def interior(self, mask: int) -> int:
        out = 0
        for u in self.opens:
            if u & ~mask == 0:
                out |= u
        return out

    def closure(self, mask: int) -> int:
        return self.full & ~self.interior(self.full & ~mask)

    def is_t1(self) -> bool:
        return all(self.closure(1 << x) == 1 << x for x in range(self.size))

    def is_hausdorff(self) -> bool:
        for x in range(self.size):
            for y in range(x + 1, self.size):
                if not any(
                    (u >> x) & 1 and (v >> y) & 1 and u & v == 0
                    for u in self.opens
                    for v in self.opens
                ):
                    return False
        return True


def generate_topology(subbasis, size: int) -> FiniteTopology:
    """Topology generated by a family of subsets: close the family under
    finite intersections (empty intersection = full), then under unions."""
    full = (1 << size) - 1
    base = {full}
    frontier = {full, *subbasis}
    while frontier:
        new = set()
        for b in frontier:
            for c in base | frontier:
                v = b & c
                if v not in base and v not in frontier and v not in new:
                    new.add(v)
        base |= frontier
        frontier = new
    opens = {0}
    frontier = set(base) | {0}
    while frontier:
        new = set()
        for u in frontier:
            for v in opens | frontier:
                w = u | v
                if w not in opens and w not in frontier and w not in new:
                    new.add(w)
        opens |= frontier
        frontier = new
    return FiniteTopology(size, frozenset(opens))


def discrete_topology(size: int) -> FiniteTopology:
    return FiniteTopology(size, frozenset(iter_submasks((1 << size) - 1)))


def greedy_subcover(cover, target: int):
    """A (small) subfamily of `cover` still covering `target`, or None."""
    remaining = target
    chosen = []
    pool = list(cover)
    while remaining:
        best = max(pool, key=lambda u: (u & remaining).bit_count(), default=0)
        if best & remaining == 0:
            return None
        chosen.append(best)
        remaining &= ~best
    return chosen


def covers_of(family, target: int, limit: int = 1 << 14):
    """All subfamilies of `family` whose union contains `target`.

    `family` is expected to be small; the number of subfamilies enumerated
    is capped to keep the check bounded.
    """
    fam = sorted(set(family))
    if 1 << len(fam) > limit:
        raise ValueError("family too large for exhaustive cover enumeration")
    for k in range(len(fam) + 1):
        for combo in combinations(fam, k):
            u = 0
            for s in combo:
                u |= s
            if target & ~u == 0:
                yield combo


def subset_compact(top: FiniteTopology, target: int, subbasis=None) -> bool:
    """Every open cover of `target` has a finite subcover.

    Trivially true on finite spaces; the enumeration is kept real so the
    checker can serve as a regression anchor.  When the open family is
    large, covers are drawn from the given subbasis plus the full set
    (subbasic covers suffice for compactness).
    """
    family = top.opens if len(top.opens) <= 14 else set(subbasis or []) | {top.full}
    for cover in covers_of(family, target):
        if greedy_subcover(cover, target) is None:
            return False
    return True


def relatively_compact(top: FiniteTopology, target: int, subbasis=None) -> bool:
    """Every open cover of the whole space has a finite subcover of `target`."""
    family = top.opens if len(top.opens) <= 14 else set(subbasis or []) | {top.full}
    for cover in covers_of(family, top.full):
        if greedy_subcover(cover, target) is None:
            return False
    return True


def homeomorphic(a: FiniteTopology, b: FiniteTopology) -> bool:
    """Backtracking search for a bijection carrying opens onto opens."""
    if a.size != b.size or len(a.opens) != len(b.opens):
        return False
    if sorted(u.bit_count() for u in a.opens) != sorted(u.bit_count() for u in b.opens):
        return False

    def fingerprint(top, x):
        return tuple(sorted(u.bit_count() for u in top.opens if (u >> x) & 1))

    fa = [fingerprint(a, x) for x in range(a.size)]
    fb = [fingerprint(b, x) for x in range(b.size)]
    if sorted(fa) != sorted(fb):
        return False

    perm = [None] * a.size
    used = [False] * b.size

    def relabel(mask):
        out = 0
        for x in bits(mask):
            out |= 1 << perm[x]
        return out

    def extend(x):
        if x == a.size:
            return all(relabel(u) in b.opens for u in a.opens)
        for y in range(b.size):
            if not used[y] and fa[x] == fb[y]:
                perm[x] = y
                used[y] = True
                if extend(x + 1):
                    return True
                used[y] = False
        return False

    return extend(0)
