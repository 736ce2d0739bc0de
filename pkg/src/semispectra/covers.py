"""Cover relations on finite subsets of a carrier: the abstraction of
"the intersection of D is contained in the union of E" that works for
arbitrary set families, not just union-closed ones.

Subsets of the carrier are bitmasks; a materialised relation keeps one
bitmask row per left argument, indexed by the right argument.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .bitsets import bits, iter_submasks
from .errors import PreconditionViolated, SizeCapExceeded
from .report import PropertyReport, failed, passed
from .semilattice import Semilattice, subset_repr
from .spaces import SetSystem

COVER_CAP = 8


@dataclass(frozen=True)
class CoverRelation:
    """Relation on subsets of a finite carrier.

    `rows[D]` has bit E set when D covers E.  `origin` records which
    canonical construction produced the table, if any.
    """

    carrier: tuple[str, ...]
    rows: tuple[int, ...]
    origin: str = "table"

    @property
    def size(self) -> int:
        return len(self.carrier)

    def holds(self, dmask: int, emask: int) -> bool:
        return bool((self.rows[dmask] >> emask) & 1)

    def subset_label(self, mask: int) -> str:
        return "{" + ",".join(self.carrier[i] for i in bits(mask)) + "}"


def _check_cover_cap(size: int, max_size: int = COVER_CAP):
    if size > max_size:
        raise SizeCapExceeded(f"carrier size {size} exceeds cover cap {max_size}")


def cover_from_pairs(carrier, pairs) -> CoverRelation:
    """Materialise an explicit table from (D, E) pairs of index iterables."""
    carrier = tuple(carrier)
    _check_cover_cap(len(carrier))
    rows = [0] * (1 << len(carrier))
    for d, e in pairs:
        dm = 0
        for i in d:
            dm |= 1 << i
        em = 0
        for i in e:
            em |= 1 << i
        rows[dm] |= 1 << em
    return CoverRelation(carrier, tuple(rows))


def cover_from_sets(X: SetSystem) -> CoverRelation:
    """Canonical cover relation of a set family: the intersection of D is
    contained in the union of E (empty D intersects to the whole space,
    empty E unions to nothing)."""
    k = len(X.set_names)
    _check_cover_cap(k)
    inter = []
    union = []
    for dm in range(1 << k):
        i = X.full
        u = 0
        for j in bits(dm):
            i &= X.set_masks[j]
            u |= X.set_masks[j]
        inter.append(i)
        union.append(u)
    rows = []
    for dm in range(1 << k):
        row = 0
        for em in range(1 << k):
            if inter[dm] & ~union[em] == 0:
                row |= 1 << em
        rows.append(row)
    return CoverRelation(tuple(X.set_names), tuple(rows), origin="sets")


def cover_from_semilattice(S: Semilattice) -> CoverRelation:
    """Cover relation of a join-semilattice: whenever p <= q v d for all
    d in D, also p <= q joined with the join of E; an empty E reads as
    plain p <= q, so D covers the empty set exactly when D is far."""
    _check_cover_cap(S.n)
    rows = []
    for dm in range(1 << S.n):
        row = 0
        for em in range(1 << S.n):
            if _semilattice_cover_holds(S, dm, em):
                row |= 1 << em
        rows.append(row)
    return CoverRelation(S.names, tuple(rows), origin="semilattice")


def _semilattice_cover_holds(S: Semilattice, dmask: int, emask: int) -> bool:
    join_e = S.join_all(emask) if emask else None
    for q in range(S.n):
        lhs = S.full
        for d in bits(dmask):
            lhs &= S.down[S.join[q][d]]
        rhs = S.down[S.join[q][join_e]] if join_e is not None else S.down[q]
        if lhs & ~rhs:
            return False
    return True


@dataclass(frozen=True)
class CoverAxiomReport:
    reflexive: PropertyReport
    antisymmetric: PropertyReport
    monotone: PropertyReport
    transitive: PropertyReport

    @property
    def holds(self) -> bool:
        return (
            self.reflexive.holds
            and self.antisymmetric.holds
            and self.monotone.holds
            and self.transitive.holds
        )

    def first_witness(self):
        for rep in (self.reflexive, self.antisymmetric, self.monotone, self.transitive):
            if not rep.holds:
                return (rep.name,) + rep.witness
        return None


def is_cover_relation(C: CoverRelation) -> CoverAxiomReport:
    """Exhaustive check of the four cover axioms over all subset pairs."""
    k = C.size
    full = 1 << k

    def reflexive():
        for p in range(k):
            if not C.holds(1 << p, 1 << p):
                return failed("reflexive", (p,))
        return passed("reflexive")

    def antisymmetric():
        for p in range(k):
            for q in range(p + 1, k):
                if C.holds(1 << p, 1 << q) and C.holds(1 << q, 1 << p):
                    return failed("antisymmetric", (p, q))
        return passed("antisymmetric")

    def monotone():
        for dm in range(full):
            row = C.rows[dm]
            for em in bits(row):
                for p in range(k):
                    if not C.holds(dm | (1 << p), em):
                        return failed("monotone", (dm, em, p, "left"))
                    if not C.holds(dm, em | (1 << p)):
                        return failed("monotone", (dm, em, p, "right"))
        return passed("monotone")

    def transitive():
        for p in range(k):
            pbit = 1 << p
            for dm in range(full):
                for em in range(full):
                    if (
                        C.holds(dm | pbit, em)
                        and C.holds(dm & ~pbit, em | pbit)
                        and not C.holds(dm & ~pbit, em)
                    ):
                        return failed("transitive", (dm, em, p))
        return passed("transitive")

    return CoverAxiomReport(reflexive(), antisymmetric(), monotone(), transitive())


# -- the quotient semilattice --------------------------------------------------

@lru_cache(maxsize=None)
def _quotient_parts(C: CoverRelation):
    """Preorder on subsets, its equivalence classes and canonical reps."""
    k = C.size
    full = 1 << k
    srow = [C.rows[1 << d] for d in range(k)]

    def leq(dm, em) -> bool:
        return all((srow[d] >> em) & 1 for d in bits(dm))

    leq_rows = []
    for dm in range(full):
        row = 0
        for em in range(full):
            if leq(dm, em):
                row |= 1 << em
        leq_rows.append(row)

    class_of = [-1] * full
    reps = []
    for dm in range(full):
        if class_of[dm] >= 0:
            continue
        cls = len(reps)
        members = [
            em
            for em in range(full)
            if (leq_rows[dm] >> em) & 1 and (leq_rows[em] >> dm) & 1
        ]
        for em in members:
            class_of[em] = cls
        reps.append(min(members))
    order = sorted(range(len(reps)), key=lambda c: (reps[c].bit_count(), reps[c]))
    rank = {c: i for i, c in enumerate(order)}
    class_of = [rank[c] for c in class_of]
    reps = [reps[c] for c in order]
    return tuple(leq_rows), tuple(class_of), tuple(reps)


def semilattice_from_cover(C: CoverRelation):
    """Quotient the subset preorder of a validated cover relation; union
    induces the join.  Returns (semilattice, class_of, reps) where
    class_of[mask] is the element index of each subset."""
    if not is_cover_relation(C).holds:
        raise PreconditionViolated("input fails the cover axioms")
    _, class_of, reps = _quotient_parts(C)
    m = len(reps)
    for dm in range(1 << C.size):
        for em in range(1 << C.size):
            if class_of[dm | em] != class_of[reps[class_of[dm]] | reps[class_of[em]]]:
                raise PreconditionViolated("union does not respect the quotient")
    table = tuple(
        tuple(class_of[reps[a] | reps[b]] for b in range(m)) for a in range(m)
    )
    names = tuple(C.subset_label(reps[c]) for c in range(m))
    return Semilattice(table, names), tuple(class_of), tuple(reps)


def derived_cover(C: CoverRelation) -> CoverRelation:
    """The cover relation reconstructed from the quotient order: C covers D
    when every E below each singleton of C (modulo any helper F) is below
    D with the same helper."""
    leq_rows, _, _ = _quotient_parts(C)
    k = C.size
    full = 1 << k
    # col[y] = bitmask over e of (e <= y)
    col = [0] * full
    for em in range(full):
        for ym in bits(leq_rows[em]):
            col[ym] |= 1 << em
    rows = []
    for cm in range(full):
        row = 0
        for dm in range(full):
            ok = True
            for fm in range(full):
                allowed = (1 << full) - 1
                for c in bits(cm):
                    allowed &= col[(1 << c) | fm]
                if allowed & ~col[dm | fm]:
                    ok = False
                    break
            if ok:
                row |= 1 << dm
        rows.append(row)
    return CoverRelation(C.carrier, tuple(rows), origin="derived")


def sandwich_report(C: CoverRelation) -> PropertyReport:
    """The derived relation contains the original one and agrees with it on
    singleton left arguments."""
    D = derived_cover(C)
    for dm in range(1 << C.size):
        missing = C.rows[dm] & ~D.rows[dm]
        if missing:
            return failed("derived-sandwich", (dm, next(iter(bits(missing)))))
    for c in range(C.size):
        extra = D.rows[1 << c] & ~C.rows[1 << c]
        if extra:
            return failed("derived-sandwich", (1 << c, next(iter(bits(extra)))))
    return passed("derived-sandwich")


def derived_agreement(C: CoverRelation) -> PropertyReport:
    """Do the original and derived relations coincide everywhere?"""
    D = derived_cover(C)
    for dm in range(1 << C.size):
        if C.rows[dm] != D.rows[dm]:
            diff = C.rows[dm] ^ D.rows[dm]
            return failed("derived-agreement", (dm, next(iter(bits(diff)))))
    return passed("derived-agreement")


def is_cover_subfit(C: CoverRelation) -> PropertyReport:
    """Whenever C does not cover D, every p admits a helper F keeping the
    failure while p covers each member of C extended by F."""
    k = C.size
    full = 1 << k
    for cm in range(full):
        for dm in range(full):
            if C.holds(cm, dm):
                continue
            for p in range(k):
                found = False
                for fm in range(full):
                    if C.holds(cm, dm | fm):
                        continue
                    if all(C.holds(1 << p, (1 << c) | fm) for c in bits(cm)):
                        found = True
                        break
                if not found:
                    return failed("cover-subfit", (cm, dm, p))
    return passed("cover-subfit")


def is_cover_grill(C: CoverRelation, gmask: int) -> bool:
    """Every covered pair drawn from the subset meets it on the right."""
    for fm in iter_submasks(gmask):
        row = C.rows[fm]
        for em in bits(row):
            if gmask & em == 0:
                return False
    return True
