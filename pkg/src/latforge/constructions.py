"""Lattice-building operations: the frame of an order, the eleven-element
gadget, the plus-construction, interval grafting and 0-1 gluing.

Every operation returns a validated :class:`~latforge.order.Lattice`
(or a :class:`FrameLattice` wrapping one); ``as_lattice`` is always the
final gate.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from functools import lru_cache
from importlib import resources

from .congruence import principal_congruence, princ_set
from .order import (
    BoundedOrder,
    IsoMap,
    Lattice,
    OrderError,
    as_lattice,
    from_covers,
    is_order_isomorphism,
    lattice_from_json,
)

GADGET_POLICIES = ("all-pairs", "covers-only")


def _fresh(name: str, taken: set) -> str:
    while name in taken:
        name += "'"
    return name


def _load(resource: str) -> dict:
    return json.loads(resources.files("latforge.data").joinpath(resource).read_text())


# --- gadget template ----------------------------------------------------------

@dataclass(frozen=True)
class GadgetTemplate:
    lattice: Lattice
    boundary: tuple[str, ...]  # o, a_p, b_p, a_q, b_q, i
    interior: tuple[str, ...]

    def cover_pairs(self):
        return self.lattice.order.cover_pairs()


@lru_cache(maxsize=None)
def gadget_template() -> GadgetTemplate:
    """Load and validate the checked-in gadget lattice."""
    data = _load("gadget.json")
    L = lattice_from_json(data)
    t = GadgetTemplate(L, tuple(data["boundary"]), tuple(data["interior"]))
    if L.n != 11 or len(t.boundary) != 6 or len(t.interior) != 5:
        raise OrderError("gadget template must have 6 boundary and 5 interior elements")
    o, ap, bp, aq, bq, i = t.boundary
    if L.elements[L.bottom] != o or L.elements[L.top] != i:
        raise OrderError("gadget template bounds are not o and i")
    if not (L.leq(ap, bp) and L.leq(aq, bq)) or L.leq(ap, aq) or L.leq(aq, ap):
        raise OrderError("gadget template boundary order is wrong")
    return t


# --- frame ------------------------------------------------------------------

@dataclass
class FrameLattice:
    """A frame-derived lattice with its designated pairs (a_p, b_p)."""

    lattice: Lattice
    poset: BoundedOrder
    labels: dict[str, tuple[str, str]]
    o: str
    i: str
    gadgets: tuple[tuple[str, str], ...] = ()
    extra_covers: tuple[tuple[str, str], ...] = field(default=(), repr=False)

    def a(self, p: str) -> str:
        return self.labels[p][0]

    def b(self, p: str) -> str:
        return self.labels[p][1]

    def inner(self) -> list[str]:
        """Elements of the input order other than its bounds."""
        P = self.poset
        return [P.elements[k] for k in P.interior()]


@lru_cache(maxsize=None)
def anchor() -> Lattice:
    """The 7-element rigid simple lattice carrying a_0 and a_1 in every frame."""
    return lattice_from_json(_load("anchor.json"))


def frame(P: BoundedOrder) -> FrameLattice:
    """The frame lattice of ``P``.

    Bounds o and i; for each p in P^- a two-element chain a_p < b_p; the
    pairs of distinct chains meet in o and join to i.  The bounds of P get
    single elements a_0 = b_0 and a_1 = b_1, which sit inside a fixed
    7-element rigid simple lattice glued along o and i (see ``anchor``).
    """
    if P.n < 2:
        raise OrderError("frame needs an order with at least two elements")
    A = anchor()
    elements = list(A.elements)
    covers = list(A.order.cover_pairs())
    bot, top = P.elements[P.bottom], P.elements[P.top]
    labels = {bot: ("a_0", "a_0"), top: ("a_1", "a_1")}
    taken = set(elements)
    for k in P.interior():
        p = P.elements[k]
        a = _fresh(f"a[{p}]", taken)
        taken.add(a)
        b = _fresh(f"b[{p}]", taken)
        taken.add(b)
        elements += [a, b]
        covers += [("o", a), (a, b), (b, "i")]
        labels[p] = (a, b)
    L = as_lattice(from_covers(elements, covers))
    return FrameLattice(L, P, labels, "o", "i")


def gadget_insert(F: FrameLattice, p: str, q: str) -> FrameLattice:
    """Add the five gadget elements for ``p < q`` (both in P^-)."""
    P = F.poset
    inner = set(F.inner())
    if p not in inner or q not in inner:
        raise OrderError(f"gadget endpoints must lie strictly inside the order: {p!r}, {q!r}")
    if p == q or not P.leq(p, q):
        raise OrderError(f"gadget needs {p!r} < {q!r}")
    t = gadget_template()
    L = F.lattice
    taken = set(L.elements)
    o, ap, bp, aq, bq, i = t.boundary
    rename = {o: F.o, ap: F.a(p), bp: F.b(p), aq: F.a(q), bq: F.b(q), i: F.i}
    for x in t.interior:
        rename[x] = _fresh(f"{x}[{p}<{q}]", taken)
        taken.add(rename[x])
    new_covers = tuple((rename[x], rename[y]) for x, y in t.cover_pairs())
    elements = list(L.elements) + [rename[x] for x in t.interior]
    lat = as_lattice(from_covers(elements, list(L.order.cover_pairs()) + list(new_covers)))
    return replace(F, lattice=lat, gadgets=F.gadgets + ((p, q),), extra_covers=F.extra_covers + new_covers)


def gadget_pairs(P: BoundedOrder, policy: str = "all-pairs") -> list[tuple[str, str]]:
    if policy not in GADGET_POLICIES:
        raise ValueError(f"unknown gadget policy {policy!r}")
    inner = P.interior()
    pairs = []
    for x in inner:
        for y in inner:
            if not P.lt(x, y):
                continue
            if policy == "covers-only" and (x, y) not in set(P.covers):
                continue
            pairs.append((P.elements[x], P.elements[y]))
    return pairs


def build_K(P: BoundedOrder, policy: str = "all-pairs") -> FrameLattice:
    """Frame of ``P`` with a gadget for every p < q in P^- (or only covering pairs)."""
    F = frame(P)
    for p, q in gadget_pairs(P, policy):
        F = gadget_insert(F, p, q)
    return F


def representation_map(F: FrameLattice) -> dict[str, tuple[str, str]]:
    """Intended witness pair of each element of P: (o,o), (a_p,b_p), (o,i)."""
    P = F.poset
    out = {}
    for k in range(P.n):
        p = P.elements[k]
        if k == P.bottom:
            out[p] = (F.o, F.o)
        elif k == P.top:
            out[p] = (F.o, F.i)
        else:
            out[p] = F.labels[p]
    return out


class PrincMismatch(OrderError):
    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


def req_princ(F: FrameLattice) -> IsoMap:
    """Check that p -> con(a_p, b_p) is an order-isomorphism P -> Princ K.

    Returns the isomorphism (onto the member names of ``princ_set``) or
    raises :class:`PrincMismatch` with the offending pair.
    """
    K, P = F.lattice, F.poset
    ps = princ_set(K)
    names = {m.blocks: ps.name(k) for k, m in enumerate(ps.members)}
    pairs = {}
    for p, (a, b) in representation_map(F).items():
        theta = principal_congruence(K, a, b)
        if theta.blocks not in names:
            raise PrincMismatch(f"con({a},{b}) is missing from Princ K", (a, b))
        pairs[p] = names[theta.blocks]
    if len(set(pairs.values())) != P.n:
        raise PrincMismatch("two elements of P give the same principal congruence", pairs)
    if len(ps) != P.n:
        extra = [ps.witnesses[k] for k, m in enumerate(ps.members) if ps.name(k) not in pairs.values()]
        raise PrincMismatch(f"Princ K has {len(ps)} members, P has {P.n}", extra[0] if extra else None)
    if not is_order_isomorphism(P, ps.order, pairs):
        raise PrincMismatch("p -> con(a_p, b_p) does not preserve the order", pairs)
    return IsoMap("order-iso", pairs)


# --- generic constructions -----------------------------------------------------

def plus_atom(L: Lattice, a: str) -> str:
    """Name given to the atom adjoined below ``a`` by :func:`plus_construction`."""
    return _plus_names(L)[a]


def _plus_names(L: Lattice) -> dict[str, str]:
    taken = set(L.elements)
    names = {}
    for k in range(L.n):
        if k == L.bottom:
            continue
        a = L.elements[k]
        names[a] = _fresh(f"p({a})", taken)
        taken.add(names[a])
    return names


def plus_construction(L: Lattice) -> Lattice:
    """Adjoin an atom p_a < a for every a > 0; p_a <= y iff y = p_a or a <= y."""
    if L.n < 2:
        raise OrderError("plus-construction needs at least two elements")
    names = _plus_names(L)
    zero = L.elements[L.bottom]
    covers = list(L.order.cover_pairs())
    for a, pa in names.items():
        covers += [(zero, pa), (pa, a)]
    return as_lattice(from_covers(list(L.elements) + list(names.values()), covers))


def interval_graft(M: Lattice, u: str, v: str, R: Lattice, tag: str | None = None) -> Lattice:
    """Insert ``R`` into [u, v] of ``M``, identifying 0_R with u and 1_R with v.

    Interior elements w of R satisfy x <= w iff x <= u and w <= x iff v <= x
    for old elements x; they are incomparable to old elements strictly
    inside (u, v).
    """
    iu, iv = M.index[u], M.index[v]
    if iu == iv or not M.up[iu] >> iv & 1:
        raise OrderError(f"graft needs {u!r} < {v!r}")
    if R.n < 2:
        raise OrderError("grafted lattice needs at least two elements")
    tag = f"g[{u},{v}]:" if tag is None else tag
    taken = set(M.elements)
    rename = {R.elements[R.bottom]: u, R.elements[R.top]: v}
    for k in R.order.interior():
        rename[R.elements[k]] = _fresh(tag + R.elements[k], taken)
        taken.add(rename[R.elements[k]])
    covers = list(M.order.cover_pairs()) + [(rename[x], rename[y]) for x, y in R.order.cover_pairs()]
    elements = list(M.elements) + [rename[R.elements[k]] for k in R.order.interior()]
    return as_lattice(from_covers(elements, covers))


def horizontal_sum(A: Lattice, B: Lattice) -> Lattice:
    """Disjoint union of A and B with bottoms identified and tops identified.

    Names of A are kept; interior names of B that collide are primed.
    """
    if A.n < 2 or B.n < 2:
        raise OrderError("horizontal sum needs lattices with at least two elements")
    zero, one = A.elements[A.bottom], A.elements[A.top]
    taken = set(A.elements)
    rename = {B.elements[B.bottom]: zero, B.elements[B.top]: one}
    for k in B.order.interior():
        rename[B.elements[k]] = _fresh(B.elements[k], taken)
        taken.add(rename[B.elements[k]])
    covers = list(A.order.cover_pairs()) + [(rename[x], rename[y]) for x, y in B.order.cover_pairs()]
    elements = list(A.elements) + [rename[B.elements[k]] for k in B.order.interior()]
    return as_lattice(from_covers(elements, covers))
