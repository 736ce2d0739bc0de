"""The spectrum of a join-semilattice: its proper minimal non-empty grills,
topologised by the sets of grills containing a given element.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .bitsets import bits, iter_submasks
from .errors import NoWitness, PreconditionViolated
from .grills import SUBSET_ENUM_CAP, minimal_proper_grills
from .order import (
    formal_meet_leq,
    in_vee_semi,
    is_basic,
    is_far,
    is_near,
    is_round,
    is_subfit,
    rb,
    rb_table,
)
from .report import PropertyReport, failed, passed
from .semilattice import Semilattice, subset_repr
from .spaces import SetSystem, is_t1_family, reconstruction_check, spectrum_like_system
from .topology import FiniteTopology, generate_topology, subset_compact


@dataclass(frozen=True)
class Spectrum:
    """Points are grill masks in canonical order; subbasic[p] is the mask of
    points containing element p; the topology is generated by the subbasic
    family."""

    base: Semilattice
    points: tuple[int, ...]
    subbasic: tuple[int, ...]
    topology: FiniteTopology

    @property
    def size(self) -> int:
        return len(self.points)

    def point_label(self, i: int) -> str:
        return subset_repr(self.base, self.points[i])


@lru_cache(maxsize=None)
def spectrum(S: Semilattice, max_size: int = SUBSET_ENUM_CAP) -> Spectrum:
    points = minimal_proper_grills(S, max_size)
    subbasic = []
    for p in range(S.n):
        m = 0
        for i, g in enumerate(points):
            if (g >> p) & 1:
                m |= 1 << i
        subbasic.append(m)
    top = generate_topology(subbasic, len(points))
    return Spectrum(S, points, tuple(subbasic), top)


def spectrum_set_system(S: Semilattice) -> SetSystem:
    """The spectrum as a concrete space whose family is the subbasic sets."""
    sp = spectrum(S)
    labels = [sp.point_label(i) for i in range(sp.size)]
    pairs = [(S.names[p], sp.subbasic[p]) for p in range(S.n)]
    return spectrum_like_system(labels, pairs)


def spectrum_is_t1(S: Semilattice) -> PropertyReport:
    """The spectrum is a T1 space and its subbasic family is a T1 family."""
    sp = spectrum(S)
    if not sp.topology.is_t1():
        bad = next(
            i for i in range(sp.size) if sp.topology.closure(1 << i) != 1 << i
        )
        return failed("spectrum-t1", (sp.point_label(bad),))
    if not is_t1_family(spectrum_set_system(S)):
        return failed("spectrum-t1", ("family",))
    return passed("spectrum-t1")


def check_faithful(S: Semilattice) -> PropertyReport:
    """Order containment between elements matches containment of their
    subbasic sets; guaranteed for subfit round S."""
    sp = spectrum(S)
    for p in range(S.n):
        for q in range(S.n):
            if S.leq(p, q) != (sp.subbasic[p] & ~sp.subbasic[q] == 0):
                return failed("faithful", (p, q))
    return passed("faithful")


def near_iff_meets(S: Semilattice, fmask: int) -> PropertyReport:
    """Nearness of a finite subset equals some spectrum point containing it."""
    sp = spectrum(S)
    inter = (1 << sp.size) - 1
    for f in bits(fmask):
        inter &= sp.subbasic[f]
    near = is_near(S, fmask)
    if near == (inter != 0):
        return passed("near-iff-meets", {"near": near})
    return failed("near-iff-meets", (fmask, near, inter))


def all_finite_subsets_near_with(S: Semilattice, gmask: int, p: int,
                                 exhaustive: bool = False) -> bool:
    """Every finite F inside the grill has F + {p} near.

    Nearness passes down to subsets, so testing F = G suffices; the
    exhaustive flag keeps the unreduced sweep available.
    """
    if not exhaustive:
        return is_near(S, gmask | (1 << p))
    return all(
        is_near(S, f | (1 << p)) for f in iter_submasks(gmask)
    )


def closure_formula(S: Semilattice, p: int, exhaustive: bool = False) -> PropertyReport:
    """The closure of a subbasic set consists of the points all of whose
    finite subsets stay near together with p; checked against the
    topological closure."""
    sp = spectrum(S)
    rhs = 0
    for i, g in enumerate(sp.points):
        if all_finite_subsets_near_with(S, g, p, exhaustive):
            rhs |= 1 << i
    lhs = sp.topology.closure(sp.subbasic[p])
    if lhs == rhs:
        return passed("closure-formula", {"closure": rhs})
    return failed("closure-formula", (p, lhs, rhs))


def rather_below_matches_spectrum(S: Semilattice, p: int, q: int) -> PropertyReport:
    """Rather-below equals closure containment of subbasic sets."""
    sp = spectrum(S)
    abstract = rb(S, p, q)
    concrete = sp.topology.closure(sp.subbasic[p]) & ~sp.subbasic[q] == 0
    if abstract == concrete:
        return passed("rather-below-vs-spectrum", {"value": abstract})
    return failed("rather-below-vs-spectrum", (p, q, abstract, concrete))


def subbasic_closures_compact(S: Semilattice) -> PropertyReport:
    """Closures of subbasic sets are compact (trivially so on finite spaces;
    the generic cover check is exercised on purpose)."""
    sp = spectrum(S)
    for p in range(S.n):
        target = sp.topology.closure(sp.subbasic[p])
        if not subset_compact(sp.topology, target, sp.subbasic):
            return failed("subbasic-closures-compact", (p,))
    return passed("subbasic-closures-compact")


@dataclass(frozen=True)
class HausdorffFlags:
    condition: bool
    hausdorff: bool


def spectrum_hausdorff_check(S: Semilattice) -> HausdorffFlags:
    """The separation condition (maximal candidate form) and direct
    Hausdorffness of the spectrum topology; the first implies the second."""
    rows = rb_table(S)
    cond = is_round(S).holds
    if cond:
        for p in range(S.n):
            for q in range(S.n):
                for r in range(S.n):
                    if not (rows[p] >> S.join[q][r]) & 1:
                        continue
                    fmax = 0
                    gmax = 0
                    for f in range(S.n):
                        if (S.down[S.join[f][r]] >> p) & 1:
                            fmax |= 1 << f
                        if (S.down[S.join[q][f]] >> p) & 1:
                            gmax |= 1 << f
                    if fmax | gmax == 0 or not is_far(S, fmax | gmax):
                        cond = False
                        break
                if not cond:
                    break
            if not cond:
                break
    return HausdorffFlags(cond, spectrum(S).topology.is_hausdorff())


def spectrum_basis_check(S: Semilattice) -> PropertyReport:
    """On a round basic semilattice every spectrum point is a filter and the
    subbasic family is a basis of the generated topology."""
    from .grills import is_filter

    flags = is_basic(S)
    if not (is_round(S).holds and flags.basic):
        return passed("spectrum-basis", {"skipped": "not round and basic"})
    sp = spectrum(S)
    for i, g in enumerate(sp.points):
        if not is_filter(S, g):
            return failed("spectrum-basis", ("point-not-filter", sp.point_label(i)))
    for u in sp.topology.opens:
        cover = 0
        for p in range(S.n):
            if sp.subbasic[p] & ~u == 0:
                cover |= sp.subbasic[p]
        if cover != u:
            return failed("spectrum-basis", ("open-not-union", u))
    return passed("spectrum-basis")


def non_rather_below_witness(S: Semilattice, p: int, q: int, p_prime: int) -> int:
    """A spectrum point containing p_prime, avoiding q, all of whose finite
    subsets stay near together with p.  Exists whenever p is not rather
    below q but is rather below p_prime."""
    if rb(S, p, q) or not rb(S, p, p_prime):
        raise PreconditionViolated("need p not rather below q and p rather below p_prime")
    sp = spectrum(S)
    for i, g in enumerate(sp.points):
        if (g >> p_prime) & 1 and not (g >> q) & 1:
            if all_finite_subsets_near_with(S, g, p):
                return g
    raise NoWitness(f"no qualifying point for ({p},{q},{p_prime})")


def formal_meet_vs_spectrum(S: Semilattice, emask: int, fmask: int) -> PropertyReport:
    """Formal meet comparison implies containment of subbasic intersections;
    the converse holds on subfit round S."""
    sp = spectrum(S)
    inter_e = (1 << sp.size) - 1
    for e in bits(emask):
        inter_e &= sp.subbasic[e]
    inter_f = (1 << sp.size) - 1
    for f in bits(fmask):
        inter_f &= sp.subbasic[f]
    formal = formal_meet_leq(S, emask, fmask)
    contained = inter_e & ~inter_f == 0
    if formal and not contained:
        return failed("formal-meet-vs-spectrum", (emask, fmask, "forward"))
    if in_vee_semi(S) and contained and not formal:
        return failed("formal-meet-vs-spectrum", (emask, fmask, "converse"))
    return passed("formal-meet-vs-spectrum", {"formal": formal, "contained": contained})


def duality_roundtrip(S: Semilattice) -> PropertyReport:
    """Full round trip for a subfit round semilattice.

    The element-to-subbasic-set map is a join-isomorphism onto a relatively
    compact T1 union-subbasis of a locally closed compact T1 space, and the
    spectrum of that concrete family reconstructs the space.
    """
    from .spaces import (
        family_relatively_compact,
        family_semilattice,
        is_union_closed,
        local_compactness,
    )

    if not is_subfit(S).holds or not is_round(S).holds:
        raise PreconditionViolated("duality needs a subfit round semilattice")
    sp = spectrum(S)

    faithful = check_faithful(S)
    if not faithful.holds:
        return failed("duality-roundtrip", ("faithful",) + faithful.witness)
    for p in range(S.n):
        for q in range(S.n):
            if sp.subbasic[S.join[p][q]] != sp.subbasic[p] | sp.subbasic[q]:
                return failed("duality-roundtrip", ("join-preservation", p, q))

    X = spectrum_set_system(S)
    if not is_t1_family(X):
        return failed("duality-roundtrip", ("t1-family",))
    if not is_union_closed(X):
        return failed("duality-roundtrip", ("union-closed",))
    if not family_relatively_compact(X):
        return failed("duality-roundtrip", ("relative-compactness",))
    if not X.topology.is_t1():
        return failed("duality-roundtrip", ("t1-space",))
    lc = local_compactness(X)
    if not lc.locally_closed_compact:
        return failed("duality-roundtrip", ("locally-closed-compact",))

    recon = reconstruction_check(X)
    if not recon.holds:
        return failed("duality-roundtrip", ("reconstruction",) + recon.witness)

    # the abstract semilattice of the concrete family must copy S
    A, extents = family_semilattice(X)
    if A.n != S.n:
        return failed("duality-roundtrip", ("element-count", A.n, S.n))
    to_abstract = [extents.index(sp.subbasic[p]) for p in range(S.n)]
    for p in range(S.n):
        for q in range(S.n):
            if to_abstract[S.join[p][q]] != A.join[to_abstract[p]][to_abstract[q]]:
                return failed("duality-roundtrip", ("join-table", p, q))
    return passed("duality-roundtrip", {"points": sp.size})
