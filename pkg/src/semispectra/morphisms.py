"""Relational morphisms between join-semilattices and their spectra maps.

A relation is stored as one bitmask row per source element over the target
carrier.  The four axioms mirror the behaviour of very continuous maps
between the corresponding spectra.
"""
from __future__ import annotations

from dataclasses import dataclass

from .bitsets import bits, iter_submasks_by_size
from .errors import PreconditionViolated, SizeCapExceeded
from .order import formal_meet_leq, in_vee_semi, rb_table
from .report import PropertyReport, failed, passed
from .semilattice import Semilattice
from .spaces import PartialMap, family_semilattice, point_grill, very_continuous
from .spectrum import spectrum, spectrum_set_system

RELATION_CAP = 8


@dataclass(frozen=True)
class VeeRelation:
    """rows[p] is the bitmask of target elements related to source element p.

    Construction does not validate the axioms; non-examples are first-class
    inputs for the axiom checker.
    """

    source: Semilattice
    target: Semilattice
    rows: tuple[int, ...]

    def holds(self, p: int, q: int) -> bool:
        return bool((self.rows[p] >> q) & 1)

    def columns(self) -> tuple[int, ...]:
        cols = [0] * self.target.n
        for p, row in enumerate(self.rows):
            for q in bits(row):
                cols[q] |= 1 << p
        return tuple(cols)

    def image_of(self, mask: int) -> int:
        out = 0
        for p in bits(mask):
            out |= self.rows[p]
        return out


def leq_relation(S: Semilattice) -> VeeRelation:
    """The order itself, the identity morphism on S."""
    return VeeRelation(S, S, tuple(S.up))


def relation_from_pairs(S: Semilattice, T: Semilattice, pairs) -> VeeRelation:
    rows = [0] * S.n
    for p, q in pairs:
        pi = p if isinstance(p, int) else S.index(p)
        qi = q if isinstance(q, int) else T.index(q)
        rows[pi] |= 1 << qi
    return VeeRelation(S, T, tuple(rows))


@dataclass(frozen=True)
class VeeAxiomReport:
    auxiliary: PropertyReport
    vee_preserving: PropertyReport
    decomposition: PropertyReport
    complementation: PropertyReport
    total: PropertyReport | None = None

    @property
    def holds(self) -> bool:
        reports = [
            self.auxiliary,
            self.vee_preserving,
            self.decomposition,
            self.complementation,
        ]
        if self.total is not None:
            reports.append(self.total)
        return all(r.holds for r in reports)

    def first_witness(self):
        reports = [
            self.auxiliary,
            self.vee_preserving,
            self.decomposition,
            self.complementation,
        ]
        if self.total is not None:
            reports.append(self.total)
        for rep in reports:
            if not rep.holds:
                return (rep.name,) + rep.witness
        return None


def _check_auxiliary(R: VeeRelation) -> PropertyReport:
    S, T = R.source, R.target
    closed = []
    for q in range(S.n):
        up = 0
        for qq in bits(R.rows[q]):
            up |= T.up[qq]
        closed.append(up)
    for p in range(S.n):
        for q in bits(S.up[p]):
            extra = closed[q] & ~R.rows[p]
            if extra:
                pp = next(iter(bits(extra)))
                qq = next(
                    q2 for q2 in bits(R.rows[q]) if (T.up[q2] >> pp) & 1
                )
                return failed("auxiliary", (p, q, qq, pp))
    return passed("auxiliary")


def _check_vee_preserving(R: VeeRelation) -> PropertyReport:
    S = R.source
    for p in range(S.n):
        for q in range(S.n):
            extra = (R.rows[p] & R.rows[q]) & ~R.rows[S.join[p][q]]
            if extra:
                return failed("vee-preserving", (p, q, next(iter(bits(extra)))))
    return passed("vee-preserving")


def _sharp_pairs(S: Semilattice):
    """Pairs (p, q) with p rather below p v q."""
    rows = rb_table(S)
    return [
        (p, q)
        for p in range(S.n)
        for q in range(S.n)
        if (rows[p] >> S.join[p][q]) & 1
    ]


def _check_decomposition(R: VeeRelation) -> PropertyReport:
    """For sharp pairs and p related to a finite join, a related finite
    subset already pushes p below q joined with its join.  Larger subsets
    only help, so the maximal related subset is the only one tried."""
    S, T = R.source, R.target
    cols = R.columns()
    for p, q in _sharp_pairs(S):
        for fmask in iter_submasks_by_size((1 << T.n) - 1):
            if fmask == 0:
                continue
            if not R.holds(p, T.join_all(fmask)):
                continue
            big = 0
            for fp in bits(fmask):
                big |= cols[fp]
            target = S.join[q][S.join_all(big)] if big else q
            if not S.leq(p, target):
                return failed("decomposition", (p, q, fmask))
    return passed("decomposition")


def _check_complementation(R: VeeRelation) -> PropertyReport:
    """The maximal family above q' is the best witness, and only the
    pointwise-minimal related subsets need the formal-meet conclusion."""
    S, T = R.source, R.target
    cols = R.columns()
    for p, q in _sharp_pairs(S):
        for pp in bits(R.rows[p]):
            for qq in range(T.n):
                fprime = 0
                for fp in range(T.n):
                    if T.leq(qq, T.join[pp][fp]):
                        fprime |= 1 << fp
                fps = list(bits(fprime))
                if any(cols[fp] == 0 for fp in fps):
                    continue  # nothing lies below some member: vacuous
                seen = set()

                def minimal_choices(i, acc):
                    if i == len(fps):
                        yield acc
                        return
                    key = (i, acc)
                    if key in seen:
                        return
                    seen.add(key)
                    for f in bits(cols[fps[i]]):
                        yield from minimal_choices(i + 1, acc | (1 << f))

                bad = next(
                    (
                        fmask
                        for fmask in minimal_choices(0, 0)
                        if not formal_meet_leq(S, fmask | (1 << p), 1 << q)
                    ),
                    None,
                )
                if bad is not None:
                    return failed("complementation", (p, q, pp, qq, bad))
    return passed("complementation")


def is_vee_relation(R: VeeRelation, max_size: int = RELATION_CAP,
                    require_total: bool = False) -> VeeAxiomReport:
    """Check the four axioms; the existential ones are meaningful when both
    endpoints are subfit and round, but all four are always computed.

    `require_total` additionally demands every source element be related to
    something (total spectra maps)."""
    if R.source.n > max_size or R.target.n > max_size:
        raise SizeCapExceeded("relation endpoints exceed the axiom-check cap")
    total = None
    if require_total:
        empty = next((p for p in range(R.source.n) if R.rows[p] == 0), None)
        total = passed("total") if empty is None else failed("total", (empty,))
    return VeeAxiomReport(
        _check_auxiliary(R),
        _check_vee_preserving(R),
        _check_decomposition(R),
        _check_complementation(R),
        total,
    )


def compose_relations(R: VeeRelation, R2: VeeRelation) -> VeeRelation:
    """Chain source-to-target: p related to r iff some middle element links them."""
    if R.target != R2.source:
        raise ValueError("relations are not composable")
    rows = []
    for p in range(R.source.n):
        acc = 0
        for s in bits(R.rows[p]):
            acc |= R2.rows[s]
        rows.append(acc)
    return VeeRelation(R.source, R2.target, tuple(rows))


# -- spectra maps ---------------------------------------------------------------

def spectrum_map(R: VeeRelation, validate: bool = True) -> PartialMap:
    """The partial map between spectra sending a point to its relational
    image; defined where the image is non-empty."""
    if validate:
        if not (in_vee_semi(R.source) and in_vee_semi(R.target)):
            raise PreconditionViolated("relation endpoints must be subfit and round")
        if not is_vee_relation(R).holds:
            raise PreconditionViolated("relation fails the morphism axioms")
    src = spectrum_set_system(R.source)
    tgt = spectrum_set_system(R.target)
    tgt_points = spectrum(R.target).points
    graph = []
    for g in spectrum(R.source).points:
        img = R.image_of(g)
        if img == 0:
            graph.append(None)
        else:
            try:
                graph.append(tgt_points.index(img))
            except ValueError:
                raise AssertionError(
                    "relational image of a spectrum point is not a spectrum point"
                ) from None
    return PartialMap(src, tgt, tuple(graph))


def weaken(R: VeeRelation) -> VeeRelation:
    """The weakest relation with the same spectra map: p related to p' when
    every q making p rather below p v q admits r related to p' with
    p <= q v r."""
    S, T = R.source, R.target
    cols = R.columns()
    rows = []
    for p in range(S.n):
        row = 0
        for pp in range(T.n):
            ok = True
            for q in range(S.n):
                if not (rb_table(S)[p] >> S.join[p][q]) & 1:
                    continue
                helpers = 0
                for r in range(S.n):
                    if (S.down[S.join[q][r]] >> p) & 1:
                        helpers |= 1 << r
                if helpers & cols[pp] == 0:
                    ok = False
                    break
            if ok:
                row |= 1 << pp
        rows.append(row)
    return VeeRelation(S, T, tuple(rows))


def weakening_matches_spectrum(R: VeeRelation, p: int, pp: int) -> PropertyReport:
    """The weakened relation holds at (p, p') exactly when every spectrum
    point containing p has p' in its relational image."""
    lhs = weaken(R).holds(p, pp)
    rhs = all(
        (R.image_of(g) >> pp) & 1
        for g in spectrum(R.source).points
        if (g >> p) & 1
    )
    if lhs == rhs:
        return passed("weakening-vs-spectrum", {"value": lhs})
    return failed("weakening-vs-spectrum", (p, pp, lhs, rhs))


def functoriality_check(R: VeeRelation, R2: VeeRelation) -> PropertyReport:
    """Spectrum maps compose: the map of the composite relation equals the
    composite of the maps, and the order relations act as identities."""
    from .spaces import compose_maps

    comp = spectrum_map(compose_relations(R, R2))
    step = compose_maps(spectrum_map(R), spectrum_map(R2))
    if comp.graph != step.graph:
        return failed("functoriality", ("composite", comp.graph, step.graph))
    idl = compose_relations(leq_relation(R.source), R)
    idr = compose_relations(R, leq_relation(R.target))
    if idl.rows != R.rows or idr.rows != R.rows:
        return failed("functoriality", ("identity-laws",))
    ident = spectrum_map(leq_relation(R.source))
    if ident.graph != tuple(range(ident.source.size)):
        return failed("functoriality", ("identity-map",))
    return passed("functoriality")


# -- relations from maps -----------------------------------------------------

def relation_from_map(phi: PartialMap) -> VeeRelation:
    """The relation of a very continuous map between subbasis spaces:
    a source set is related to a target set when it sits inside its preimage."""
    from .spaces import family_relatively_compact, is_t1_family, is_union_closed

    for X in (phi.source, phi.target):
        if not (is_t1_family(X) and is_union_closed(X) and family_relatively_compact(X)):
            raise PreconditionViolated("endpoints must be relatively compact T1 union-subbases")
    if not very_continuous(phi).very:
        raise PreconditionViolated("map is not very continuous")
    A, ext_a = family_semilattice(phi.source)
    B, ext_b = family_semilattice(phi.target)
    rows = []
    for s in range(A.n):
        row = 0
        for t in range(B.n):
            if ext_a[s] & ~phi.preimage_mask(ext_b[t]) == 0:
                row |= 1 << t
        rows.append(row)
    return VeeRelation(A, B, tuple(rows))


def map_matches_relation(phi: PartialMap) -> PropertyReport:
    """Round trip for a very continuous map: under the point-to-grill
    bijections, the spectra map of its relation agrees with the map."""
    R = relation_from_map(phi)
    for x in range(phi.source.size):
        gx = point_grill(phi.source, x)
        image = R.image_of(gx)
        y = phi.graph[x]
        if y is None:
            # no source set containing x fits inside a preimage, so the
            # relational image must be empty as well
            if image != 0:
                return failed("map-vs-relation", (x, "spurious image"))
            continue
        if image != point_grill(phi.target, y):
            return failed("map-vs-relation", (x, y))
    return passed("map-vs-relation")


def relation_realizing_map(S: Semilattice, T: Semilattice,
                           psi: PartialMap) -> VeeRelation:
    """Fullness search: a relation whose spectrum map is the given very
    continuous map between the two spectra.  The pullback of the map's own
    subbasis relation is tried first, then an exhaustive scan."""
    if not very_continuous(psi).very:
        raise PreconditionViolated("map is not very continuous")
    src = spectrum_set_system(S)
    if psi.source != src or psi.target != spectrum_set_system(T):
        raise PreconditionViolated("map endpoints are not the spectra of S and T")

    def realizes(R):
        if not is_vee_relation(R).holds:
            return False
        return spectrum_map(R).graph == psi.graph

    # pull the subbasis relation of psi back along p -> subbasic set of p
    A, ext_a = family_semilattice(psi.source)
    B, ext_b = family_semilattice(psi.target)
    spl, spr = spectrum(S), spectrum(T)
    to_a = [ext_a.index(spl.subbasic[p]) for p in range(S.n)]
    to_b = [ext_b.index(spr.subbasic[q]) for q in range(T.n)]
    raw = relation_from_map(psi)
    rows = tuple(
        sum(
            1 << q
            for q in range(T.n)
            if raw.holds(to_a[p], to_b[q])
        )
        for p in range(S.n)
    )
    candidate = VeeRelation(S, T, rows)
    if realizes(candidate):
        return candidate

    if S.n * T.n > 12:
        raise SizeCapExceeded("exhaustive relation search is capped at 12 cells")
    for code in range(1 << (S.n * T.n)):
        rows = tuple(
            (code >> (p * T.n)) & ((1 << T.n) - 1) for p in range(S.n)
        )
        R = VeeRelation(S, T, rows)
        if realizes(R):
            return R
    raise PreconditionViolated("no relation realizes the map")
