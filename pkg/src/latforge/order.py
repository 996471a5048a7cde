"""Finite bounded orders and lattices.

Elements are opaque string identifiers.  Internally every structure works
on dense indices ``0..n-1``; the order relation is a bitmatrix stored as
one Python int per row (``up[i]`` has bit ``j`` set iff ``i <= j``).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from . import _refine
from .budget import Budget


class OrderError(ValueError):
    """Raised for malformed order or lattice input."""


class CycleError(OrderError):
    pass


class UnboundedError(OrderError):
    pass


class NotALatticeError(OrderError):
    def __init__(self, pair, which):
        self.pair = pair
        self.which = which
        super().__init__(f"not a lattice: {which} of {pair[0]!r} and {pair[1]!r} is not unique")


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class BoundedOrder:
    """A finite ordered set with a least and a greatest element."""

    def __init__(self, elements: Sequence[str], up: Sequence[int]):
        self.elements = tuple(elements)
        self.n = len(self.elements)
        if self.n == 0:
            raise OrderError("an order needs at least one element")
        self.index = {x: i for i, x in enumerate(self.elements)}
        if len(self.index) != self.n:
            raise OrderError("element identifiers must be unique")
        self.up = tuple(up)
        down = [0] * self.n
        for i, row in enumerate(self.up):
            if not row >> i & 1:
                raise OrderError(f"leq is not reflexive at {self.elements[i]!r}")
            for j in _bits(row):
                down[j] |= 1 << i
                if j != i and self.up[j] >> i & 1:
                    raise CycleError(f"cycle through {self.elements[i]!r} and {self.elements[j]!r}")
                if self.up[j] & ~row:
                    raise OrderError("leq is not transitive")
        self.down = tuple(down)
        everything = (1 << self.n) - 1
        bottoms = [i for i in range(self.n) if self.up[i] == everything]
        tops = [i for i in range(self.n) if self.down[i] == everything]
        if not bottoms or not tops:
            raise UnboundedError("order has no least or no greatest element")
        self.bottom = bottoms[0]
        self.top = tops[0]

    def __repr__(self):
        return f"<BoundedOrder n={self.n}>"

    def __eq__(self, other):
        return isinstance(other, BoundedOrder) and (self.elements, self.up) == (other.elements, other.up)

    def __hash__(self):
        return hash((self.elements, self.up))

    def leq(self, x: str, y: str) -> bool:
        return bool(self.up[self.index[x]] >> self.index[y] & 1)

    def lt(self, i: int, j: int) -> bool:
        return i != j and bool(self.up[i] >> j & 1)

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        out = []
        for i in range(self.n):
            above = self.up[i] & ~(1 << i)
            for j in _bits(above):
                between = above & self.down[j] & ~(1 << j)
                if not between:
                    out.append((i, j))
        return tuple(out)

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        res = [[] for _ in range(self.n)]
        for i, j in self.covers:
            res[i].append(j)
        return tuple(tuple(r) for r in res)

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        res = [[] for _ in range(self.n)]
        for i, j in self.covers:
            res[j].append(i)
        return tuple(tuple(r) for r in res)

    @cached_property
    def topological(self) -> tuple[int, ...]:
        return tuple(sorted(range(self.n), key=lambda i: (bin(self.down[i]).count("1"), i)))

    @cached_property
    def height(self) -> tuple[int, ...]:
        """Length of the longest chain from the bottom to each element."""
        h = [0] * self.n
        for j in self.topological:
            for i in self.lower_covers[j]:
                h[j] = max(h[j], h[i] + 1)
        return tuple(h)

    @cached_property
    def depth(self) -> tuple[int, ...]:
        d = [0] * self.n
        for i in reversed(self.topological):
            for j in self.upper_covers[i]:
                d[i] = max(d[i], d[j] + 1)
        return tuple(d)

    @property
    def length(self) -> int:
        return self.height[self.top]

    def interior(self) -> list[int]:
        """Indices other than bottom and top (the ``P^-`` of a bounded order)."""
        return [i for i in range(self.n) if i not in (self.bottom, self.top)]

    def invariants(self) -> list[tuple[int, int, int, int]]:
        return [
            (self.height[i], self.depth[i], len(self.upper_covers[i]), len(self.lower_covers[i]))
            for i in range(self.n)
        ]

    def cover_pairs(self) -> list[tuple[str, str]]:
        return [(self.elements[i], self.elements[j]) for i, j in self.covers]

    def to_json(self) -> dict:
        return {
            "elements": list(self.elements),
            "covers": [list(p) for p in self.cover_pairs()],
            "bottom": self.elements[self.bottom],
            "top": self.elements[self.top],
        }


def _closure(n: int, succ: list[list[int]], names) -> list[int]:
    indeg = [0] * n
    for i in range(n):
        for j in succ[i]:
            indeg[j] += 1
    queue = [i for i in range(n) if indeg[i] == 0]
    order = []
    while queue:
        i = queue.pop()
        order.append(i)
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                queue.append(j)
    if len(order) != n:
        stuck = [names[i] for i in range(n) if indeg[i] > 0]
        raise CycleError(f"cycle detected among {stuck[:4]}")
    up = [0] * n
    for i in reversed(order):
        row = 1 << i
        for j in succ[i]:
            row |= up[j]
        up[i] = row
    return up


def from_covers(elements: Iterable[str], cover_pairs: Iterable[Sequence[str]]) -> BoundedOrder:
    """Build the order generated by ``cover_pairs`` (any generating relation is accepted)."""
    elements = list(elements)
    index = {x: i for i, x in enumerate(elements)}
    if len(index) != len(elements):
        raise OrderError("element identifiers must be unique")
    succ = [[] for _ in elements]
    for pair in cover_pairs:
        lo, hi = pair
        if lo not in index or hi not in index:
            raise OrderError(f"cover ({lo!r}, {hi!r}) references an unknown element")
        if lo == hi:
            raise CycleError(f"self-loop at {lo!r}")
        succ[index[lo]].append(index[hi])
    up = _closure(len(elements), succ, elements)
    order = BoundedOrder(elements, up)
    return order


class Lattice:
    """A finite bounded lattice with precomputed meet and join tables."""

    def __init__(self, order: BoundedOrder, meet, join):
        self.order = order
        self.meet = meet
        self.join = join

    # convenience pass-throughs
    elements = property(lambda self: self.order.elements)
    n = property(lambda self: self.order.n)
    index = property(lambda self: self.order.index)
    bottom = property(lambda self: self.order.bottom)
    top = property(lambda self: self.order.top)
    up = property(lambda self: self.order.up)
    down = property(lambda self: self.order.down)
    covers = property(lambda self: self.order.covers)
    height = property(lambda self: self.order.height)
    length = property(lambda self: self.order.length)

    def __repr__(self):
        return f"<Lattice n={self.n}>"

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.order == other.order

    def __hash__(self):
        return hash(self.order)

    def leq(self, x: str, y: str) -> bool:
        return self.order.leq(x, y)

    def meet_of(self, x: str, y: str) -> str:
        return self.elements[self.meet[self.index[x]][self.index[y]]]

    def join_of(self, x: str, y: str) -> str:
        return self.elements[self.join[self.index[x]][self.index[y]]]

    @cached_property
    def join_irreducibles(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if len(self.order.lower_covers[i]) == 1)

    def to_json(self) -> dict:
        return self.order.to_json()


def as_lattice(order: BoundedOrder) -> Lattice:
    """Fill meet/join tables; raise :class:`NotALatticeError` naming a bad pair."""
    n = order.n
    by_up = {row: i for i, row in enumerate(order.up)}
    by_down = {row: i for i, row in enumerate(order.down)}
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for x in range(n):
        ux, dx = order.up[x], order.down[x]
        mrow, jrow = meet[x], join[x]
        for y in range(x, n):
            j = by_up.get(ux & order.up[y])
            if j is None:
                raise NotALatticeError((order.elements[x], order.elements[y]), "join")
            m = by_down.get(dx & order.down[y])
            if m is None:
                raise NotALatticeError((order.elements[x], order.elements[y]), "meet")
            jrow[y] = join[y][x] = j
            mrow[y] = meet[y][x] = m
    return Lattice(order, tuple(map(tuple, meet)), tuple(map(tuple, join)))


def lattice_from_covers(elements, cover_pairs) -> Lattice:
    return as_lattice(from_covers(elements, cover_pairs))


def interval(L: Lattice | BoundedOrder, u: str, v: str) -> set[str]:
    order = L.order if isinstance(L, Lattice) else L
    i, j = order.index[u], order.index[v]
    if not order.up[i] >> j & 1:
        raise OrderError(f"{u!r} is not below {v!r}")
    return {order.elements[k] for k in _bits(order.up[i] & order.down[j])}


@dataclass(frozen=True)
class IsoMap:
    kind: str  # "order-iso" | "lattice-embedding" | "lattice-iso"
    pairs: dict = field(hash=False)

    def __call__(self, x):
        return self.pairs[x]

    def is_identity(self) -> bool:
        return all(k == v for k, v in self.pairs.items())


def _cover_digraph(order: BoundedOrder) -> _refine.Digraph:
    return _refine.Digraph(order.n, order.covers)


def _as_order(X) -> BoundedOrder:
    return X.order if isinstance(X, Lattice) else X


def order_isomorphisms(A, B, budget: Budget | None = None) -> Iterator[IsoMap]:
    A, B = _as_order(A), _as_order(B)
    if A.n != B.n or len(A.covers) != len(B.covers):
        return
    budget = budget or Budget("order isomorphism search")
    for image in _refine.isomorphisms(
        _cover_digraph(A), _cover_digraph(B), A.invariants(), B.invariants(), budget
    ):
        yield IsoMap("order-iso", {A.elements[i]: B.elements[image[i]] for i in range(A.n)})


def order_isomorphism(A, B) -> IsoMap | None:
    return next(order_isomorphisms(A, B), None)


def order_automorphisms(A) -> list[IsoMap]:
    return list(order_isomorphisms(A, A))


def is_order_isomorphism(A, B, pairs: dict) -> bool:
    """Check directly that ``pairs`` is a bijection with x <= y iff f(x) <= f(y)."""
    A, B = _as_order(A), _as_order(B)
    if set(pairs) != set(A.elements) or sorted(pairs.values()) != sorted(B.elements):
        return False
    f = [B.index[pairs[x]] for x in A.elements]
    return all(
        bool(A.up[i] >> j & 1) == bool(B.up[f[i]] >> f[j] & 1) for i in range(A.n) for j in range(A.n)
    )


def zero_one_embedding(A: Lattice, B: Lattice, budget: Budget | None = None) -> IsoMap | None:
    """Search for a {0,1}-preserving lattice embedding of ``A`` into ``B``.

    Branches only on join-irreducibles of ``A``; every other image is then
    forced (the join of the images of the join-irreducibles below it) and
    the complete map is checked against both tables.
    """
    if A.n > B.n:
        return None
    budget = budget or Budget("embedding search")
    if A.n == 1:
        return IsoMap("lattice-embedding", {A.elements[0]: B.elements[B.bottom]}) if B.n == 1 else None
    if B.n == 1:
        return None
    ha, da, hb, db = A.height, A.order.depth, B.height, B.order.depth
    jis = sorted(A.join_irreducibles, key=lambda j: (ha[j], j))
    cand = {
        j: [b for b in range(B.n) if b != B.bottom and hb[b] >= ha[j] and db[b] >= da[j]] for j in jis
    }
    f = {A.bottom: B.bottom, A.top: B.top}
    below = {x: [j for j in jis if A.up[j] >> x & 1] for x in range(A.n)}

    def consistent(j, b):
        for k, c in f.items():
            if (A.up[k] >> j & 1) != (B.up[c] >> b & 1) or (A.up[j] >> k & 1) != (B.up[b] >> c & 1):
                return False
            m = A.meet[j][k]
            if m in f and f[m] != B.meet[b][c]:
                return False
            jn = A.join[j][k]
            if jn in f and f[jn] != B.join[b][c]:
                return False
        return True

    def finish():
        g = dict(f)
        for x in range(A.n):
            if x in g:
                continue
            img = B.bottom
            for j in below[x]:
                img = B.join[img][f[j]]
            g[x] = img
        if len(set(g.values())) != A.n:
            return None
        for x in range(A.n):
            for y in range(x + 1, A.n):
                if g[A.meet[x][y]] != B.meet[g[x]][g[y]] or g[A.join[x][y]] != B.join[g[x]][g[y]]:
                    return None
        return g

    def extend(k):
        budget.tick()
        if k == len(jis):
            return finish()
        j = jis[k]
        if j in f:  # j may coincide with the top
            return extend(k + 1) if consistent(j, f[j]) else None
        used = set(f.values())
        for b in cand[j]:
            if b in used or not consistent(j, b):
                continue
            f[j] = b
            g = extend(k + 1)
            if g is not None:
                return g
            del f[j]
        return None

    g = extend(0)
    if g is None:
        return None
    return IsoMap("lattice-embedding", {A.elements[x]: B.elements[g[x]] for x in range(A.n)})


def is_lattice_embedding(A: Lattice, B: Lattice, pairs: dict) -> bool:
    f = [B.index[pairs[x]] for x in A.elements]
    if len(set(f)) != A.n or f[A.bottom] != B.bottom or f[A.top] != B.top:
        return False
    return all(
        f[A.meet[x][y]] == B.meet[f[x]][f[y]] and f[A.join[x][y]] == B.join[f[x]][f[y]]
        for x in range(A.n)
        for y in range(A.n)
    )


# --- JSON interchange -------------------------------------------------------

def order_from_json(data: dict) -> BoundedOrder:
    try:
        elements = [str(x) for x in data["elements"]]
        covers = [(str(a), str(b)) for a, b in data.get("covers", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise OrderError(f"malformed order JSON: {exc}") from exc
    order = from_covers(elements, covers)
    for key, idx in (("bottom", order.bottom), ("top", order.top)):
        if key in data and data[key] is not None and data[key] != order.elements[idx]:
            raise OrderError(f"declared {key} {data[key]!r} is not the {key} of the order")
    return order


def lattice_from_json(data: dict) -> Lattice:
    return as_lattice(order_from_json(data))


def dumps(obj, **kw) -> str:
    return json.dumps(obj.to_json() if hasattr(obj, "to_json") else obj, **kw)


# --- small named orders used throughout tests and docs ------------------------

def chain(k: int, prefix: str = "c") -> BoundedOrder:
    names = [f"{prefix}{i}" for i in range(k)]
    return from_covers(names, zip(names, names[1:]))


def boolean_square() -> BoundedOrder:
    return from_covers(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


def diamond(k: int = 3) -> BoundedOrder:
    """M_k: k pairwise incomparable atoms between 0 and 1."""
    atoms = [chr(ord("a") + i) for i in range(k)]
    return from_covers(["0", *atoms, "1"], [("0", a) for a in atoms] + [(a, "1") for a in atoms])


def pentagon() -> BoundedOrder:
    """N_5 with 0 < a < 1 and 0 < b < c < 1."""
    return from_covers(["0", "a", "b", "c", "1"], [("0", "a"), ("a", "1"), ("0", "b"), ("b", "c"), ("c", "1")])
