"""Products of bounded join-semilattices: the pair semilattice with every
pair containing a top collapsed into a single class."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .bitsets import bits
from .errors import NotBounded, PreconditionViolated
from .report import PropertyReport, failed, passed
from .semilattice import Semilattice
from .spectrum import spectrum
from .topology import generate_topology


@dataclass(frozen=True)
class ProductSemilattice:
    """Collapsed pair semilattice.

    `classes[(i, j)]` maps a pair to its class index; `reps[c]` is the
    lexicographically least pair of class c; the collapsed class of pairs
    containing a top is `one_class` and is represented by (top, top).
    """

    left: Semilattice
    right: Semilattice
    semilattice: Semilattice
    pair_class: tuple[tuple[int, ...], ...]
    reps: tuple[tuple[int, int], ...]
    one_class: int

    def cls(self, i: int, j: int) -> int:
        return self.pair_class[i][j]


def product_semilattice(S: Semilattice, T: Semilattice) -> ProductSemilattice:
    if not S.is_bounded or not T.is_bounded:
        raise NotBounded("product construction needs bounded factors")
    one_pairs = [
        (i, j)
        for i, j in iproduct(range(S.n), range(T.n))
        if i == S.top or j == T.top
    ]
    plain = [
        (i, j)
        for i, j in iproduct(range(S.n), range(T.n))
        if i != S.top and j != T.top
    ]
    reps = sorted(plain)
    one_class = len(reps)
    pair_class = [[0] * T.n for _ in range(S.n)]
    for c, (i, j) in enumerate(reps):
        pair_class[i][j] = c
    for i, j in one_pairs:
        pair_class[i][j] = one_class
    reps = reps + [(S.top, T.top)]

    def name(c):
        i, j = reps[c]
        if c == one_class:
            return "ONE"
        return f"{S.names[i]}*{T.names[j]}"

    size = len(reps)
    table = []
    for c in range(size):
        i, j = reps[c]
        row = []
        for d in range(size):
            k, l = reps[d]
            row.append(pair_class[S.join[i][k]][T.join[j][l]])
        table.append(tuple(row))
    P = Semilattice(tuple(table), tuple(name(c) for c in range(size)))
    return ProductSemilattice(
        S, T, P, tuple(tuple(r) for r in pair_class), tuple(reps), one_class
    )


def glue_grills(P: ProductSemilattice, gmask: int, hmask: int) -> int:
    """The product-spectrum point built from points of the factor spectra:
    classes of pairs whose left entry lies in the first grill or whose
    right entry lies in the second."""
    if gmask not in spectrum(P.left).points or hmask not in spectrum(P.right).points:
        raise PreconditionViolated("inputs must be spectrum points of the factors")
    out = 0
    for i in range(P.left.n):
        for j in range(P.right.n):
            if (gmask >> i) & 1 or (hmask >> j) & 1:
                out |= 1 << P.cls(i, j)
    return out


def product_spectrum_check(S: Semilattice, T: Semilattice) -> PropertyReport:
    """Gluing is a homeomorphism from the product of the factor spectra onto
    the spectrum of the product semilattice, matching the canonical
    subbases on both sides."""
    P = product_semilattice(S, T)
    spl, spr = spectrum(S), spectrum(T)
    spp = spectrum(P.semilattice)

    glued = {}
    for gi, g in enumerate(spl.points):
        for hi, h in enumerate(spr.points):
            glued[(gi, hi)] = glue_grills(P, g, h)
    if len(set(glued.values())) != len(glued):
        return failed("product-spectrum", ("gluing not injective",))
    if sorted(glued.values()) != sorted(spp.points):
        return failed(
            "product-spectrum", ("image differs", len(glued), spp.size)
        )

    # pair (gi, hi) <-> product point index
    to_idx = {m: i for i, m in enumerate(spp.points)}
    pair_order = sorted(glued)  # canonical order of product-space points
    pair_pos = {pr: i for i, pr in enumerate(pair_order)}

    # canonical subbasis of the product space: cylinders over the factors
    m = len(pair_order)
    cyl = []
    for p in range(S.n):
        msk = 0
        for pr in pair_order:
            if (spl.subbasic[p] >> pr[0]) & 1:
                msk |= 1 << pair_pos[pr]
        cyl.append(("L", p, msk))
    for q in range(T.n):
        msk = 0
        for pr in pair_order:
            if (spr.subbasic[q] >> pr[1]) & 1:
                msk |= 1 << pair_pos[pr]
        cyl.append(("R", q, msk))

    # the bijection as a relabelling of product-space points
    relabel = [to_idx[glued[pr]] for pr in pair_order]

    def carry(msk):
        out = 0
        for i in bits(msk):
            out |= 1 << relabel[i]
        return out

    for side, p, msk in cyl:
        if side == "L":
            target = spp.subbasic[P.cls(p, P.right.bottom)]
        else:
            target = spp.subbasic[P.cls(P.left.bottom, p)]
        if carry(msk) != target:
            return failed("product-spectrum", ("subbasis-mismatch", side, p))

    prod_top = generate_topology([msk for _, _, msk in cyl], m)
    carried = frozenset(carry(u) for u in prod_top.opens)
    if carried != spp.topology.opens:
        return failed("product-spectrum", ("topology-mismatch",))
    return passed(
        "product-spectrum",
        {"pairs": len(glued), "classes": P.semilattice.n},
    )
