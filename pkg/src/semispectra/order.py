"""Order-theoretic predicates: far subsets, the rather-below relation,
roundness, subfitness, basicness, distributivity and formal meets.

Subsets are bitmasks over the carrier of a `Semilattice`.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .bitsets import bits
from .errors import PreconditionViolated
from .report import PropertyReport, failed, passed
from .semilattice import Semilattice


# -- far vs near -----------------------------------------------------------

def is_far(S: Semilattice, fmask: int) -> bool:
    """A non-empty finite F is far when p <= q v f for all f in F forces p <= q."""
    if fmask == 0:
        raise PreconditionViolated("far/near is defined for non-empty subsets")
    if fmask & ~S.full:
        raise ValueError("subset not contained in the carrier")
    for q in range(S.n):
        hit = S.full
        for f in bits(fmask):
            hit &= S.down[S.join[q][f]]
        if hit & ~S.down[q]:
            return False
    return True


def is_near(S: Semilattice, fmask: int) -> bool:
    return not is_far(S, fmask)


def near_witness(S: Semilattice, fmask: int):
    """A pair (p, q) witnessing nearness, or None when far."""
    if fmask == 0:
        raise PreconditionViolated("far/near is defined for non-empty subsets")
    for q in range(S.n):
        hit = S.full
        for f in bits(fmask):
            hit &= S.down[S.join[q][f]]
        extra = hit & ~S.down[q]
        if extra:
            return (next(iter(bits(extra))), q)
    return None


# -- rather below ----------------------------------------------------------

def _candidate_mask(S: Semilattice, s: int, q: int) -> int:
    """All f with s <= f v q (the largest possible companion set)."""
    out = 0
    for f in range(S.n):
        if (S.down[S.join[f][q]] >> s) & 1:
            out |= 1 << f
    return out


def rather_below(S: Semilattice, p: int, q: int) -> bool:
    """p is rather below q: for every s not below q there is a finite F
    with F + {p} far and s <= f v q for all f in F.

    Far sets stay far under supersets, so it suffices to try the largest
    candidate F = {f : s <= f v q}; this cuts the subset search to O(n^3).
    """
    for s in range(S.n):
        if S.leq(s, q):
            continue
        if not is_far(S, _candidate_mask(S, s, q) | (1 << p)):
            return False
    return True


@lru_cache(maxsize=None)
def rb_table(S: Semilattice) -> tuple[int, ...]:
    """rows[p] = bitmask of all q with p rather below q."""
    rows = []
    for p in range(S.n):
        row = 0
        for q in range(S.n):
            if rather_below(S, p, q):
                row |= 1 << q
        rows.append(row)
    return tuple(rows)


def rb(S: Semilattice, p: int, q: int) -> bool:
    return bool((rb_table(S)[p] >> q) & 1)


@dataclass(frozen=True)
class RatherBelowForms:
    """Independent evaluations of the equivalent shapes of rather-below.

    `standard` quantifies s over non-lower-bounds of q; `every_s` over all
    of S; `singleton` demands a one-element far companion; `pseudocomplement`
    uses meet-with-p equal to bottom (None unless S is distributive with a
    minimum, where meets are available).
    """

    standard: bool
    every_s: bool
    singleton: bool
    pseudocomplement: bool | None


def rather_below_forms(S: Semilattice, p: int, q: int) -> RatherBelowForms:
    standard = rather_below(S, p, q)

    every_s = True
    for s in range(S.n):
        if not is_far(S, _candidate_mask(S, s, q) | (1 << p)):
            every_s = False
            break

    singleton = True
    for s in range(S.n):
        if S.leq(s, q):
            continue
        if not any(
            (S.down[S.join[f][q]] >> s) & 1 and is_far(S, (1 << f) | (1 << p))
            for f in range(S.n)
        ):
            singleton = False
            break

    pseudo = None
    if S.bottom is not None and is_distributive(S).holds:
        pseudo = all(
            any(
                S.meet(p, t) == S.bottom and (S.down[S.join[t][q]] >> s) & 1
                for t in range(S.n)
            )
            for s in range(S.n)
        )
    return RatherBelowForms(standard, every_s, singleton, pseudo)


def is_round(S: Semilattice) -> PropertyReport:
    """Every element has something rather above it."""
    rows = rb_table(S)
    for p in range(S.n):
        if rows[p] == 0:
            return failed("round", (p,))
    return passed("round")


# -- subfitness -------------------------------------------------------------

def is_subfit(S: Semilattice) -> PropertyReport:
    """For all p not below q and p' >= p there is q' >= q with
    p v q' >= p' and p' not below q'."""
    for p in range(S.n):
        for q in range(S.n):
            if S.leq(p, q):
                continue
            for pp in bits(S.up[p]):
                if not any(
                    S.leq(pp, S.join[p][qq]) and not S.leq(pp, qq)
                    for qq in bits(S.up[q])
                ):
                    return failed("subfit", (p, q, pp))
    return passed("subfit")


def subfit_top_form(S: Semilattice) -> PropertyReport:
    """Simplified subfitness for unital S: only the top needs separating."""
    if S.top is None:
        raise PreconditionViolated("needs a maximum element")
    t = S.top
    for p in range(S.n):
        for q in range(S.n):
            if S.leq(p, q):
                continue
            if not any(
                S.join[p][qq] == t and qq != t for qq in bits(S.up[q])
            ):
                return failed("subfit-top-form", (p, q))
    return passed("subfit-top-form")


def in_vee_semi(S: Semilattice) -> bool:
    """Membership in the duality's order-side class: subfit and round."""
    return is_subfit(S).holds and is_round(S).holds


# -- basicness ---------------------------------------------------------------

@dataclass(frozen=True)
class BasicFlags:
    basic: bool
    basic_prime: bool


def is_basic(S: Semilattice) -> BasicFlags:
    """Two interpolation properties; they agree whenever S is round."""
    rows = rb_table(S)

    def rb_(a, b):
        return bool((rows[a] >> b) & 1)

    def plain() -> bool:
        for t, p, q, s in product(range(S.n), repeat=4):
            if rb_(t, S.join[q][s]) and rb_(t, S.join[p][s]):
                if not any(
                    rb_(t, S.join[r][s]) for r in bits(S.down[p] & S.down[q])
                ):
                    return False
        return True

    def prime() -> bool:
        for p, q, s in product(range(S.n), repeat=3):
            if rb_(p, S.join[q][s]) and rb_(q, S.join[p][s]):
                if not any(
                    S.leq(S.join[p][q], S.join[r][s])
                    for r in bits(S.down[p] & S.down[q])
                ):
                    return False
        return True

    return BasicFlags(plain(), prime())


# -- distributivity -----------------------------------------------------------

@lru_cache(maxsize=None)
def is_distributive(S: Semilattice) -> PropertyReport:
    """s <= p v q splits as s = p' v q' with p' <= p and q' <= q."""
    for p in range(S.n):
        for q in range(S.n):
            top = S.join[p][q]
            for s in bits(S.down[top]):
                if not any(
                    S.join[a][b] == s
                    for a in bits(S.down[p])
                    for b in bits(S.down[q])
                ):
                    return failed("distributive", (s, p, q))
    return passed("distributive")


# -- formal meets --------------------------------------------------------------

def formal_meet_leq(S: Semilattice, emask: int, fmask: int) -> bool:
    """Formal meet comparison: whenever p <= q v e for all e in E,
    also p <= q v f for all f in F.  Empty sets give vacuous sides."""
    for q in range(S.n):
        lhs = S.full
        for e in bits(emask):
            lhs &= S.down[S.join[q][e]]
        rhs = S.full
        for f in bits(fmask):
            rhs &= S.down[S.join[q][f]]
        if lhs & ~rhs:
            return False
    return True
