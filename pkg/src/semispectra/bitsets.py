"""Bitmask helpers: subsets of range(n) are stored as Python ints."""
from __future__ import annotations

from itertools import combinations


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def bits(mask: int):
    """Yield the set bit positions of `mask` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


def iter_submasks(mask: int):
    """All submasks of `mask`, including 0 and `mask` (descending order)."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def iter_submasks_by_size(mask: int):
    """All submasks ordered by popcount, then by member indices.

    The first hit of a search in this order is cardinality-minimal, hence
    inclusion-minimal among hits of any inclusion-monotone predicate.
    """
    elems = list(bits(mask))
    for k in range(len(elems) + 1):
        for combo in combinations(elems, k):
            yield mask_of(combo)
