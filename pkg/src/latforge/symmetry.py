"""Automorphism groups and finite permutation groups.

Permutations are tuples of images on ``range(degree)``; the product
``p * q`` is composition ``x -> p[q[x]]``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from . import _refine
from .budget import Budget
from .order import BoundedOrder, IsoMap, Lattice, order_isomorphisms


class GroupError(ValueError):
    pass


def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    return tuple(p[x] for x in q)


def _inverse(p):
    inv = [0] * len(p)
    for x, y in enumerate(p):
        inv[y] = x
    return tuple(inv)


@dataclass
class PermGroup:
    """A finite group given by the full list of its permutations."""

    degree: int
    elements: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None
    _index: dict = field(init=False, repr=False)

    def __post_init__(self):
        self.elements = tuple(tuple(p) for p in self.elements)
        self._index = {p: k for k, p in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise GroupError("duplicate permutations")
        ident = tuple(range(self.degree))
        if ident not in self._index:
            raise GroupError("identity missing")
        for p in self.elements:
            if _inverse(p) not in self._index:
                raise GroupError("not closed under inverses")
        # closure is checked while filling the table
        self.table

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> int:
        return self._index[tuple(range(self.degree))]

    def index_of(self, p) -> int:
        return self._index[tuple(p)]

    def label(self, k: int) -> str:
        return self.labels[k] if self.labels else str(k)

    @cached_property
    def table(self) -> tuple[tuple[int, ...], ...]:
        rows = []
        for p in self.elements:
            row = []
            for q in self.elements:
                r = compose(p, q)
                if r not in self._index:
                    raise GroupError("not closed under composition")
                row.append(self._index[r])
            rows.append(tuple(row))
        return tuple(rows)

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        e = self.identity
        out = []
        for g in range(len(self)):
            k, x = 1, g
            while x != e:
                x = self.table[x][g]
                k += 1
            out.append(k)
        return tuple(out)

    def generators(self) -> list[int]:
        """A small generating set, chosen greedily (largest order first, then index)."""
        gens: list[int] = []
        span = {self.identity}
        by_order = sorted(range(len(self)), key=lambda g: (-self.element_orders[g], g))
        while len(span) < len(self):
            g = next(x for x in by_order if x not in span)
            gens.append(g)
            span = self._closure_of(gens)
        return gens

    def _closure_of(self, gens) -> set[int]:
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def to_json(self) -> dict:
        return {"kind": "perm", "degree": self.degree, "generators": [list(self.elements[g]) for g in self.generators()]}


def closure(degree: int, generators, budget: Budget | None = None) -> PermGroup:
    """Group generated by permutations (orbit algorithm on the identity)."""
    budget = budget or Budget("group closure")
    gens = []
    for g in generators:
        g = tuple(int(x) for x in g)
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise GroupError(f"malformed permutation {list(g)} on {degree} points")
        gens.append(g)
    ident = tuple(range(degree))
    seen = {ident: None}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                budget.tick()
                y = compose(x, g)
                if y not in seen:
                    seen[y] = None
                    nxt.append(y)
        frontier = nxt
    return PermGroup(degree, tuple(sorted(seen)))


def group_from_table(elements: Sequence[str], table) -> PermGroup:
    """Regular representation of a group given by its multiplication table."""
    names = [str(x) for x in elements]
    n = len(names)
    idx = {x: k for k, x in enumerate(names)}
    if len(idx) != n or n == 0:
        raise GroupError("table elements must be distinct and non-empty")
    try:
        rows = [[c if isinstance(c, int) and not isinstance(c, bool) else idx[str(c)] for c in row] for row in table]
    except KeyError as exc:
        raise GroupError(f"unknown element {exc} in table") from exc
    if len(rows) != n or any(len(r) != n for r in rows):
        raise GroupError("table must be square over the listed elements")
    for r in rows:
        if sorted(r) != list(range(n)):
            raise GroupError("table is not a Latin square")
    for c in range(n):
        if sorted(rows[r][c] for r in range(n)) != list(range(n)):
            raise GroupError("table is not a Latin square")
    ident = [e for e in range(n) if rows[e] == list(range(n)) and all(rows[r][e] == r for r in range(n))]
    if not ident:
        raise GroupError("table has no identity")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
                    raise GroupError("table is not associative")
    # left multiplication x -> g x
    perms = [tuple(rows[g]) for g in range(n)]
    group = PermGroup(n, tuple(perms), labels=tuple(names))
    return group


def group_from_spec(spec: dict) -> PermGroup:
    kind = spec.get("kind")
    if kind == "table":
        return group_from_table(spec["elements"], spec["table"])
    if kind == "perm":
        degree = int(spec["degree"])
        return closure(degree, spec.get("generators", []))
    raise GroupError(f"unknown group kind {kind!r}")


def cyclic(n: int) -> PermGroup:
    return closure(n, [tuple((i + 1) % n for i in range(n))]) if n > 1 else closure(1, [])


def trivial() -> PermGroup:
    return closure(1, [])


def klein_four() -> PermGroup:
    return closure(4, [(1, 0, 3, 2), (2, 3, 0, 1)])


def symmetric3() -> PermGroup:
    return closure(3, [(1, 0, 2), (1, 2, 0)])


def lattice_automorphisms(L: Lattice, budget: Budget | None = None) -> PermGroup:
    """All automorphisms of ``L`` (order automorphisms of its Hasse diagram)."""
    budget = budget or Budget("automorphism search")
    g = _refine.Digraph(L.n, L.covers)
    inv = L.order.invariants()
    perms = [tuple(p) for p in _refine.isomorphisms(g, g, inv, inv, budget)]
    return PermGroup(L.n, tuple(sorted(perms)))


def order_automorphism_group(P: BoundedOrder) -> PermGroup:
    perms = []
    for iso in order_isomorphisms(P, P):
        perms.append(tuple(P.index[iso.pairs[x]] for x in P.elements))
    return PermGroup(P.n, tuple(sorted(perms)))


def as_isomaps(L: Lattice, group: PermGroup) -> list[IsoMap]:
    return [IsoMap("lattice-iso", {L.elements[i]: L.elements[p[i]] for i in range(L.n)}) for p in group.elements]


def is_rigid(L: Lattice) -> bool:
    g = _refine.Digraph(L.n, L.covers)
    inv = L.order.invariants()
    for k, _ in enumerate(_refine.isomorphisms(g, g, inv, inv, Budget("rigidity check"))):
        if k:
            return False
    return True


def nontrivial_automorphism(L: Lattice) -> IsoMap | None:
    g = _refine.Digraph(L.n, L.covers)
    inv = L.order.invariants()
    for p in _refine.isomorphisms(g, g, inv, inv, Budget("rigidity check")):
        if any(p[i] != i for i in range(L.n)):
            return IsoMap("lattice-iso", {L.elements[i]: L.elements[p[i]] for i in range(L.n)})
    return None


def group_isomorphism(A: PermGroup, B: PermGroup, budget: Budget | None = None) -> dict[int, int] | None:
    """An isomorphism A -> B as an index map, or None.

    Backtracks over images of a generating set of ``A`` among elements of
    ``B`` with equal order, extending each choice to a homomorphism by a
    breadth-first walk over the Cayley graph.
    """
    if len(A) != len(B) or Counter(A.element_orders) != Counter(B.element_orders):
        return None
    budget = budget or Budget("group isomorphism search")
    gens = A.generators()
    options = [[b for b in range(len(B)) if B.element_orders[b] == A.element_orders[g]] for g in gens]

    def extend(images):
        phi = {A.identity: B.identity}
        frontier = [A.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g, h in zip(gens, images):
                    y = A.table[x][g]
                    z = B.table[phi[x]][h]
                    if y in phi:
                        if phi[y] != z:
                            return None
                    else:
                        phi[y] = z
                        nxt.append(y)
            frontier = nxt
        return phi if len(set(phi.values())) == len(A) else None

    def rec(k, images):
        budget.tick()
        if k == len(gens):
            return extend(images)
        for b in options[k]:
            phi = rec(k + 1, images + [b])
            if phi is not None:
                return phi
        return None

    return rec(0, [])


def is_group_isomorphism(A: PermGroup, B: PermGroup, phi: dict[int, int]) -> bool:
    if sorted(phi) != list(range(len(A))) or sorted(phi.values()) != list(range(len(B))):
        return False
    return all(phi[A.table[x][y]] == B.table[phi[x]][phi[y]] for x in range(len(A)) for y in range(len(A)))
