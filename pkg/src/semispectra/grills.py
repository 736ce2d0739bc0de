"""Grills, ideals and filters of a finite join-semilattice.

A subset G is a grill when join(p, q) lying above some member forces
p or q into G; equivalently S \\ G is an ideal.  The empty set counts
as a grill and an ideal; by convention it is not a filter (every use
downstream wants inhabited filters).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .bitsets import bits, iter_submasks, iter_submasks_by_size
from .errors import NotAGrill, PreconditionViolated, SizeCapExceeded
from .report import PropertyReport, failed, passed
from .semilattice import Semilattice

SUBSET_ENUM_CAP = 16


def _check_subset(S: Semilattice, mask: int):
    if mask & ~S.full:
        raise ValueError("subset not contained in the carrier")


def _check_cap(S: Semilattice, max_size: int):
    if S.n > max_size:
        raise SizeCapExceeded(f"|S|={S.n} exceeds cap {max_size}")


def is_grill(S: Semilattice, mask: int) -> bool:
    _check_subset(S, mask)
    for p in range(S.n):
        if (mask >> p) & 1:
            continue
        row = S.join[p]
        for q in range(p, S.n):
            if (mask >> q) & 1:
                continue
            # join(p,q) dominates a member but neither p nor q is one
            if S.down[row[q]] & mask:
                return False
    return True


def is_ideal(S: Semilattice, mask: int) -> bool:
    _check_subset(S, mask)
    elems = list(bits(mask))
    for p in elems:
        if S.down[p] & ~mask:
            return False
        if any(not (mask >> S.join[p][q]) & 1 for q in elems):
            return False
    return True


def is_filter(S: Semilattice, mask: int) -> bool:
    _check_subset(S, mask)
    if mask == 0:
        return False
    elems = list(bits(mask))
    for p in elems:
        if S.up[p] & ~mask:
            return False
    for p in elems:
        for q in elems:
            if not any(S.leq(r, p) and S.leq(r, q) for r in elems):
                return False
    return True


@dataclass(frozen=True)
class SubsetFlags:
    is_grill: bool
    is_ideal: bool
    is_filter: bool


def classify_subset(S: Semilattice, mask: int) -> SubsetFlags:
    return SubsetFlags(is_grill(S, mask), is_ideal(S, mask), is_filter(S, mask))


@lru_cache(maxsize=None)
def all_grills(S: Semilattice, max_size: int = SUBSET_ENUM_CAP) -> tuple[int, ...]:
    """All grill masks, in (popcount, members) order."""
    _check_cap(S, max_size)
    return tuple(m for m in iter_submasks_by_size(S.full) if is_grill(S, m))


def minimal_grill_first_order(S: Semilattice, mask: int):
    """First-order test for "proper and minimal": every (s, g) admits
    t outside the grill with s <= t v g.  Returns None or a failing (s, g).
    """
    outside = S.full & ~mask
    for g in bits(mask):
        reach = 0
        for t in bits(outside):
            reach |= S.down[S.join[t][g]]
        if reach != S.full:
            s = next(iter(bits(S.full & ~reach)))
            return (s, g)
    return None


def is_minimal_proper_grill(S: Semilattice, mask: int) -> PropertyReport:
    """Report whether a non-empty grill is proper and inclusion-minimal."""
    if mask == 0 or not is_grill(S, mask):
        raise NotAGrill("expected a non-empty grill")
    w = minimal_grill_first_order(S, mask)
    if w is None:
        return passed("minimal-proper-grill")
    return failed("minimal-proper-grill", w)


def minimal_proper_grills(S: Semilattice, max_size: int = SUBSET_ENUM_CAP) -> tuple[int, ...]:
    """Masks of all proper minimal non-empty grills, canonically ordered."""
    hits = [
        m
        for m in all_grills(S, max_size)
        if m and m != S.full and minimal_grill_first_order(S, m) is None
    ]
    hits.sort(key=lambda m: tuple(bits(m)))
    return tuple(hits)


def near_subgrill(S: Semilattice, grill_mask: int, p: int,
                  max_size: int = SUBSET_ENUM_CAP) -> int:
    """Inclusion-minimal grill inside `grill_mask` still containing p.

    Every finite subset of the result is near (checked by the test suite,
    not here).  Enumeration by increasing popcount makes the first grill
    found minimal and the choice deterministic.
    """
    _check_cap(S, max_size)
    if not (grill_mask >> p) & 1 or not is_grill(S, grill_mask):
        raise PreconditionViolated("need a grill containing p")
    rest = grill_mask & ~(1 << p)
    for sub in iter_submasks_by_size(rest):
        cand = sub | (1 << p)
        if is_grill(S, cand):
            return cand
    raise AssertionError("unreachable: grill_mask itself qualifies")


def complement_is_ideal(S: Semilattice, mask: int) -> bool:
    return is_ideal(S, S.full & ~mask)


def up_closure(S: Semilattice, mask: int) -> int:
    out = 0
    for p in bits(mask):
        out |= S.up[p]
    return out


def iter_all_subsets(S: Semilattice):
    return iter_submasks(S.full)
