"""Finite point sets carrying a named family of subsets, and partial maps
between them.  The family generates the topology of the space; family
members double as the elements of an abstract join-semilattice when the
family is closed under unions.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .bitsets import bits, iter_submasks_by_size
from .errors import NotUnionClosed, PreconditionViolated
from .report import PropertyReport, failed, passed
from .semilattice import Semilattice
from .topology import (
    FiniteTopology,
    generate_topology,
    relatively_compact,
    subset_compact,
)


@dataclass(frozen=True)
class SetSystem:
    """Named points plus a named family of subsets with its generated topology."""

    points: tuple[str, ...]
    set_names: tuple[str, ...]
    set_masks: tuple[int, ...]
    topology: FiniteTopology

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    def family(self) -> dict[str, int]:
        return dict(zip(self.set_names, self.set_masks))

    def point_index(self, name: str) -> int:
        return self.points.index(name)

    def point_mask(self, names) -> int:
        out = 0
        for nm in names:
            out |= 1 << self.point_index(nm)
        return out

    def set_mask(self, name: str) -> int:
        return self.set_masks[self.set_names.index(name)]

    def point_names(self, mask: int) -> tuple[str, ...]:
        return tuple(self.points[i] for i in bits(mask))

    def __repr__(self):
        return f"SetSystem({','.join(self.points)}; {','.join(self.set_names)})"


def set_system(points, sets: dict, topology=None) -> SetSystem:
    """Build a SetSystem from point names and name -> iterable-of-point-names.

    When an explicit topology is supplied it must equal the one generated
    by the family; a family generating a strictly coarser topology is an
    error, not silently re-based.
    """
    points = tuple(points)
    idx = {nm: i for i, nm in enumerate(points)}
    if len(idx) != len(points):
        raise ValueError("duplicate point names")
    names = tuple(sets.keys())
    masks = []
    for nm in names:
        m = 0
        for p in sets[nm]:
            m |= 1 << idx[p]
        masks.append(m)
    gen = generate_topology(masks, len(points))
    if topology is not None:
        declared = frozenset(topology)
        if declared != gen.opens:
            raise ValueError("family does not generate the declared topology")
    return SetSystem(points, names, tuple(masks), gen)


def spectrum_like_system(point_labels, family_pairs) -> SetSystem:
    """SetSystem over abstract points with pre-computed family masks."""
    points = tuple(point_labels)
    names = tuple(nm for nm, _ in family_pairs)
    masks = tuple(m for _, m in family_pairs)
    return SetSystem(points, names, masks, generate_topology(masks, len(points)))


# -- family predicates -------------------------------------------------------

def is_t1_family(X: SetSystem) -> bool:
    """Singleton-or-empty disjoint pairs (a, b) are separated by a family
    member containing a and missing b."""
    singletons = [1 << i for i in range(X.size)] + [0]
    for a in singletons:
        for b in singletons:
            if a & b:
                continue
            if not any(a & ~s == 0 and b & s == 0 for s in X.set_masks):
                return False
    return True


def is_union_closed(X: SetSystem) -> bool:
    masks = set(X.set_masks)
    return all(u | v in masks for u in masks for v in masks)


def is_relatively_compact_set(X: SetSystem, target: int) -> bool:
    return relatively_compact(X.topology, target, X.set_masks)


def family_relatively_compact(X: SetSystem) -> bool:
    return all(is_relatively_compact_set(X, s) for s in X.set_masks)


def is_subbasis_space(X: SetSystem) -> bool:
    """A relatively compact T1 union-closed family (the duality's space side)."""
    return is_t1_family(X) and is_union_closed(X) and family_relatively_compact(X)


@dataclass(frozen=True)
class LocalCompactness:
    locally_relatively_compact: bool
    locally_closed_compact: bool


def local_compactness(X: SetSystem) -> LocalCompactness:
    """Per-point search for relatively compact / closed compact neighbourhoods.

    A neighbourhood of x is any superset of an open set containing x.
    """
    top = X.topology

    def neighbourhoods(x):
        seen = set()
        opens_at_x = [u for u in top.opens if (u >> x) & 1]
        for extra in iter_submasks_by_size(X.full):
            for u in opens_at_x:
                n = u | extra
                if n not in seen:
                    seen.add(n)
                    yield n

    rel = True
    clc = True
    for x in range(X.size):
        if not any(relatively_compact(top, n, X.set_masks) for n in neighbourhoods(x)):
            rel = False
        if not any(
            top.is_closed(n) and subset_compact(top, n, X.set_masks)
            for n in neighbourhoods(x)
        ):
            clc = False
    return LocalCompactness(rel, clc)


# -- the abstract semilattice of a union-closed family ------------------------

@lru_cache(maxsize=None)
def family_semilattice(X: SetSystem) -> tuple[Semilattice, tuple[int, ...]]:
    """The family ordered by inclusion with union as join, plus the extent
    of each abstract element.

    Duplicate extents collapse to one element, named by the first family
    name carrying them; elements sit in canonical (size, members) order.
    """
    if not is_union_closed(X):
        raise NotUnionClosed("family is not closed under pairwise unions")
    distinct = sorted(set(X.set_masks), key=lambda m: (m.bit_count(), tuple(bits(m))))
    pos = {m: i for i, m in enumerate(distinct)}
    names = tuple(X.set_names[X.set_masks.index(m)] for m in distinct)
    table = tuple(tuple(pos[u | v] for v in distinct) for u in distinct)
    return Semilattice(table, names), tuple(distinct)


def subbasis_semilattice(X: SetSystem) -> Semilattice:
    return family_semilattice(X)[0]


def element_of_set(X: SetSystem, set_name: str) -> int:
    """Index in the abstract semilattice of the family member `set_name`."""
    _, extents = family_semilattice(X)
    return extents.index(X.set_mask(set_name))


def point_grill(X: SetSystem, x: int) -> int:
    """Mask over abstract elements of the sets containing point x."""
    _, extents = family_semilattice(X)
    out = 0
    for i, m in enumerate(extents):
        if (m >> x) & 1:
            out |= 1 << i
    return out


def reconstruction_check(X: SetSystem) -> PropertyReport:
    """The map x -> {s in family : x in s} is a homeomorphism onto the
    spectrum of the family's semilattice, carrying the family onto the
    subbasic sets element-wise."""
    from .spectrum import spectrum

    if not is_t1_family(X):
        raise PreconditionViolated("family is not T1")
    if not is_union_closed(X):
        raise PreconditionViolated("family is not union-closed")
    if not family_relatively_compact(X):
        raise PreconditionViolated("family members are not relatively compact")
    A, extents = family_semilattice(X)
    sp = spectrum(A)
    images = [point_grill(X, x) for x in range(X.size)]
    if len(set(images)) != X.size:
        return failed("space-reconstruction", ("not injective",))
    if sorted(images) != sorted(sp.points):
        return failed("space-reconstruction", ("image differs from spectrum",))
    to_point = {g: i for i, g in enumerate(sp.points)}
    for i in range(A.n):
        mapped = 0
        for x in bits(extents[i]):
            mapped |= 1 << to_point[images[x]]
        if mapped != sp.subbasic[i]:
            return failed("space-reconstruction", (A.names[i],))
    return passed("space-reconstruction", {"points": X.size})


# -- section 4/5/6/7 checks on concrete spaces --------------------------------

def near_matches_intersection(X: SetSystem, set_names) -> PropertyReport:
    """Abstract nearness of a family subset equals non-empty intersection."""
    from .order import is_near

    A, _ = family_semilattice(X)
    idxs = {element_of_set(X, nm) for nm in set_names}
    if not idxs:
        raise PreconditionViolated("need a non-empty subset of the family")
    fmask = 0
    inter = X.full
    for i in idxs:
        fmask |= 1 << i
    for nm in set_names:
        inter &= X.set_mask(nm)
    near = is_near(A, fmask)
    if near == (inter != 0):
        return passed("near-iff-intersects", {"near": near})
    return failed("near-iff-intersects", (tuple(set_names), near, inter))


def rather_below_matches_closure(X: SetSystem, p: str, q: str) -> PropertyReport:
    """Abstract rather-below equals closure containment, and the family
    semilattice is round."""
    from .order import is_round, rb

    A, _ = family_semilattice(X)
    abstract = rb(A, element_of_set(X, p), element_of_set(X, q))
    concrete = X.topology.closure(X.set_mask(p)) & ~X.set_mask(q) == 0
    round_report = is_round(A)
    if abstract == concrete and round_report.holds:
        return passed("rather-below-iff-closure", {"value": abstract})
    return failed(
        "rather-below-iff-closure",
        (p, q, abstract, concrete, round_report.holds),
    )


def hausdorff_separation(X: SetSystem, p: str, q: str, r: str) -> PropertyReport:
    """Find finite F, G in the family with p <= f u r, p <= q u g and
    disjoint intersections; maximal candidates minimise the intersections."""
    if not X.topology.is_hausdorff():
        raise PreconditionViolated("space is not Hausdorff")
    pm, qm, rm = X.set_mask(p), X.set_mask(q), X.set_mask(r)
    if X.topology.closure(pm) & ~(qm | rm):
        raise PreconditionViolated("closure of p is not inside q union r")
    F = [nm for nm in X.set_names if pm & ~(X.set_mask(nm) | rm) == 0]
    G = [nm for nm in X.set_names if pm & ~(qm | X.set_mask(nm)) == 0]
    inter_f = X.full
    for nm in F:
        inter_f &= X.set_mask(nm)
    inter_g = X.full
    for nm in G:
        inter_g &= X.set_mask(nm)
    if inter_f & inter_g == 0:
        return passed("hausdorff-separation", {"F": tuple(F), "G": tuple(G)})
    return failed("hausdorff-separation", (p, q, r))


def basis_interpolation(X: SetSystem, p: str, q: str, s: str) -> PropertyReport:
    """Find r in the family with r inside p and q, and p u q inside r u s."""
    if not is_union_basis(X):
        raise PreconditionViolated("family is not a union-basis")
    pm, qm, sm = X.set_mask(p), X.set_mask(q), X.set_mask(s)
    cl = X.topology.closure
    if cl(pm) & ~(qm | sm) or cl(qm) & ~(pm | sm):
        raise PreconditionViolated("closure containments do not hold")
    for nm in X.set_names:
        rm = X.set_mask(nm)
        if rm & ~(pm & qm) == 0 and (pm | qm) & ~(rm | sm) == 0:
            return passed("basis-interpolation", {"r": nm})
    note = "no candidate; family lacks the empty set" if all(
        X.set_mask(nm) for nm in X.set_names
    ) else "no candidate"
    return failed("basis-interpolation", (p, q, s), {"diagnosis": note})


def is_union_basis(X: SetSystem) -> bool:
    """Every open set is a union of family members."""
    for u in X.topology.opens:
        cover = 0
        for m in X.set_masks:
            if m & ~u == 0:
                cover |= m
        if cover != u:
            return False
    return True


def subbasis_subfit(X: SetSystem) -> PropertyReport:
    """Family semilattices of qualifying spaces are subfit."""
    from .order import is_subfit

    if not (is_t1_family(X) and is_union_closed(X) and family_relatively_compact(X)):
        return passed("subbasis-subfit", {"skipped": "not a relatively compact T1 union-subbasis"})
    rep = is_subfit(subbasis_semilattice(X))
    if rep.holds:
        return passed("subbasis-subfit")
    return failed("subbasis-subfit", rep.witness)


# -- partial maps --------------------------------------------------------------

@dataclass(frozen=True)
class PartialMap:
    """Single-valued assignment of target points to some source points."""

    source: SetSystem
    target: SetSystem
    graph: tuple  # per source point: target index or None

    @property
    def dom_mask(self) -> int:
        out = 0
        for x, y in enumerate(self.graph):
            if y is not None:
                out |= 1 << x
        return out

    def image_mask(self, mask: int) -> int:
        out = 0
        for x in bits(mask):
            y = self.graph[x]
            if y is not None:
                out |= 1 << y
        return out

    def preimage_mask(self, tmask: int) -> int:
        out = 0
        for x, y in enumerate(self.graph):
            if y is not None and (tmask >> y) & 1:
                out |= 1 << x
        return out

    def __call__(self, x: int):
        return self.graph[x]


def identity_map(X: SetSystem) -> PartialMap:
    return PartialMap(X, X, tuple(range(X.size)))


def compose_maps(f: PartialMap, g: PartialMap) -> PartialMap:
    """f then g; the domain shrinks to points whose image lies in dom(g)."""
    if f.target != g.source:
        raise ValueError("maps are not composable")
    graph = tuple(
        g.graph[y] if (y := f.graph[x]) is not None else None
        for x in range(f.source.size)
    )
    return PartialMap(f.source, g.target, graph)


@dataclass(frozen=True)
class ContinuityFlags:
    wide_continuous: bool
    closed_compact: bool

    @property
    def very(self) -> bool:
        return self.wide_continuous and self.closed_compact


def wide_open(X: SetSystem, mask: int) -> bool:
    """Is the set a union of family members?  (The empty union counts.)"""
    cover = 0
    for m in X.set_masks:
        if m & ~mask == 0:
            cover |= m
    return cover == mask


def very_continuous(phi: PartialMap) -> ContinuityFlags:
    """Wide continuity: preimages of family members are wide open (preimages
    commute with unions, so family members suffice).  Closed compactness:
    images of closed subsets of the domain are closed (compactness is
    automatic on finite spaces but checked all the same)."""
    src, tgt = phi.source, phi.target
    wide = all(wide_open(src, phi.preimage_mask(s)) for s in tgt.set_masks)
    closed_ok = True
    dom = phi.dom_mask
    for c in src.topology.closed_sets():
        if c & ~dom:
            continue
        if not subset_compact(src.topology, c, src.set_masks):
            closed_ok = False
            break
        img = phi.image_mask(c)
        if not tgt.topology.is_closed(img) or not subset_compact(
            tgt.topology, img, tgt.set_masks
        ):
            closed_ok = False
            break
    return ContinuityFlags(wide, closed_ok)
