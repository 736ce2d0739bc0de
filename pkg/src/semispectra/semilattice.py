"""Finite join-semilattices given by explicit join tables.

Elements are indices 0..n-1; subsets of the carrier are bitmask ints
(see `bitsets`).  The partial order is derived from the table by
p <= q  iff  join(p, q) == q.
"""
from __future__ import annotations

from dataclasses import dataclass

from .bitsets import bits
from .errors import AxiomViolation


@dataclass(frozen=True)
class Semilattice:
    """Immutable join-semilattice: a validated n x n join table plus names.

    Derived attributes (computed once, not part of equality):
      n        -- element count
      full     -- bitmask of the whole carrier
      up[p]    -- bitmask of all q >= p
      down[p]  -- bitmask of all q <= p
      bottom   -- index of the minimum, or None
      top      -- index of the maximum, or None
    """

    join: tuple[tuple[int, ...], ...]
    names: tuple[str, ...]

    def __post_init__(self):
        n = len(self.join)
        if n < 1:
            raise ValueError("semilattice must be non-empty")
        if len(self.names) != n or len(set(self.names)) != n:
            raise ValueError("need one distinct name per element")
        for row in self.join:
            if len(row) != n or any(not (0 <= v < n) for v in row):
                raise ValueError("join table entries out of range")
        j = self.join
        for p in range(n):
            if j[p][p] != p:
                raise AxiomViolation("idempotence", (p,))
            for q in range(n):
                if j[p][q] != j[q][p]:
                    raise AxiomViolation("commutativity", (p, q))
        for p in range(n):
            for q in range(n):
                for r in range(n):
                    if j[j[p][q]][r] != j[p][j[q][r]]:
                        raise AxiomViolation("associativity", (p, q, r))
        up = [0] * n
        down = [0] * n
        for p in range(n):
            for q in range(n):
                if j[p][q] == q:
                    up[p] |= 1 << q
                    down[q] |= 1 << p
        full = (1 << n) - 1
        # The derived relation is automatically a partial order with the
        # table as least upper bound; verify anyway so a broken table can
        # never slip through refactors.
        for p in range(n):
            for q in range(n):
                s = j[p][q]
                if not (up[p] >> s) & 1 or not (up[q] >> s) & 1:
                    raise AxiomViolation("order", (p, q))
                if up[p] & up[q] != up[s]:
                    raise AxiomViolation("order", (p, q))
        bottom = next((p for p in range(n) if up[p] == full), None)
        top = next((p for p in range(n) if down[p] == full), None)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "full", full)
        object.__setattr__(self, "up", tuple(up))
        object.__setattr__(self, "down", tuple(down))
        object.__setattr__(self, "bottom", bottom)
        object.__setattr__(self, "top", top)

    # -- order helpers -------------------------------------------------

    def leq(self, p: int, q: int) -> bool:
        return self.join[p][q] == q

    def lt(self, p: int, q: int) -> bool:
        return p != q and self.leq(p, q)

    @property
    def is_bounded(self) -> bool:
        return self.bottom is not None and self.top is not None

    def join_all(self, mask: int) -> int:
        """Join of a non-empty subset given as a bitmask."""
        it = bits(mask)
        try:
            acc = next(it)
        except StopIteration:
            raise ValueError("join of empty subset is undefined") from None
        for q in it:
            acc = self.join[acc][q]
        return acc

    def meet(self, p: int, q: int) -> int | None:
        """Greatest common lower bound, or None when p, q have none.

        The common lower bounds are closed under join, so their join is the
        greatest one; finiteness makes this total whenever any exists.
        """
        common = self.down[p] & self.down[q]
        return self.join_all(common) if common else None

    def meet_all(self, mask: int) -> int | None:
        common = self.full
        for p in bits(mask):
            common &= self.down[p]
        return self.join_all(common) if common else None

    # -- subsets and names ---------------------------------------------

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no element named {name!r}") from None

    def mask(self, items) -> int:
        """Bitmask of a subset given by element indices or names."""
        out = 0
        for item in items:
            i = item if isinstance(item, int) else self.index(item)
            if not (0 <= i < self.n):
                raise ValueError(f"element index {i} out of range")
            out |= 1 << i
        return out

    def members(self, mask: int) -> tuple[int, ...]:
        return tuple(bits(mask))

    def member_names(self, mask: int) -> tuple[str, ...]:
        return tuple(self.names[i] for i in bits(mask))

    def __repr__(self):
        return f"Semilattice({','.join(self.names)})"


def build_semilattice(join_table, names=None) -> Semilattice:
    """Validate a join table (entries are indices) and build the lattice."""
    table = tuple(tuple(int(v) for v in row) for row in join_table)
    if names is None:
        names = tuple(f"e{i}" for i in range(len(table)))
    return Semilattice(table, tuple(str(x) for x in names))


def semilattice_from_leq(leq_rows: list[int], names=None) -> Semilattice:
    """Build from an order given as down-set bitmask rows (leq_rows[q] holds p<=q).

    Raises ValueError when some pair has no least upper bound.
    """
    n = len(leq_rows)
    up = [0] * n
    for q in range(n):
        for p in bits(leq_rows[q]):
            up[p] |= 1 << q
    table = []
    for p in range(n):
        row = []
        for q in range(n):
            bound = up[p] & up[q]
            lub = next((s for s in bits(bound) if up[s] == bound), None)
            if lub is None:
                raise ValueError(f"no join for pair ({p},{q})")
            row.append(lub)
        table.append(tuple(row))
    if names is None:
        names = tuple(f"e{i}" for i in range(n))
    return Semilattice(tuple(table), tuple(names))


def sub_join_closed(S: Semilattice, mask: int) -> bool:
    """Is the subset closed under the join of the ambient semilattice?"""
    elems = list(bits(mask))
    return all((mask >> S.join[p][q]) & 1 for p in elems for q in elems)


def isomorphic(a: Semilattice, b: Semilattice) -> bool:
    """Brute-force join-isomorphism test (intended for small instances)."""
    from itertools import permutations

    if a.n != b.n:
        return False
    inv_a = sorted((a.up[p].bit_count(), a.down[p].bit_count()) for p in range(a.n))
    inv_b = sorted((b.up[p].bit_count(), b.down[p].bit_count()) for p in range(b.n))
    if inv_a != inv_b:
        return False
    for perm in permutations(range(a.n)):
        if all(
            perm[a.join[p][q]] == b.join[perm[p]][perm[q]]
            for p in range(a.n)
            for q in range(a.n)
        ):
            return True
    return False


def order_isomorphic_masked(a: Semilattice, b: Semilattice, pairs) -> bool:
    """Does the given element bijection [(pa, pb), ...] preserve order both ways?"""
    return all(
        a.leq(p1, q1) == b.leq(p2, q2) for (p1, p2) in pairs for (q1, q2) in pairs
    )


def subset_repr(S: Semilattice, mask: int) -> str:
    return "{" + ",".join(S.member_names(mask)) + "}"
