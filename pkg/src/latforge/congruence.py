"""Congruences of finite lattices.

A congruence is kept as a canonical block labelling (block ids numbered by
first occurrence), so two congruences are equal iff their labellings are.

``princ_set`` avoids computing con(a, b) for all O(n^2) pairs.  In a finite
lattice every congruence is determined by the set of covering pairs it
collapses, con(a, b) is the join of con(c) over the covers c of any maximal
chain from a to b, and con(c) is join-prime in the distributive congruence
lattice.  Hence the covers collapsed by con(a, b) are the union of the
cover-sets collapsed by the con(c) along such a chain.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .budget import Budget
from .order import BoundedOrder, Lattice, OrderError


def _canonical(labels) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(b, len(seen)) for b in labels)


@dataclass(frozen=True)
class Congruence:
    carrier: Lattice
    blocks: tuple[int, ...]

    @classmethod
    def from_labels(cls, L: Lattice, labels) -> "Congruence":
        return cls(L, _canonical(labels))

    @classmethod
    def from_blocks(cls, L: Lattice, blocks) -> "Congruence":
        labels = [-1] * L.n
        for k, block in enumerate(blocks):
            for x in block:
                labels[L.index[x]] = k
        if -1 in labels:
            raise OrderError("blocks do not cover every element")
        return cls.from_labels(L, labels)

    @property
    def nblocks(self) -> int:
        return max(self.blocks) + 1

    def is_zero(self) -> bool:
        return self.nblocks == self.carrier.n

    def is_unit(self) -> bool:
        return self.nblocks == 1

    def collapses(self, x, y) -> bool:
        idx = self.carrier.index
        return self.blocks[idx[x]] == self.blocks[idx[y]]

    def __le__(self, other: "Congruence") -> bool:
        image: dict[int, int] = {}
        for a, b in zip(self.blocks, other.blocks):
            if image.setdefault(a, b) != b:
                return False
        return True

    def __lt__(self, other):
        return self <= other and self.blocks != other.blocks

    def block_lists(self) -> list[list[str]]:
        out: list[list[str]] = [[] for _ in range(self.nblocks)]
        for i, b in enumerate(self.blocks):
            out[b].append(self.carrier.elements[i])
        return out

    def signature(self) -> tuple:
        return tuple(sorted(tuple(sorted(b)) for b in self.block_lists()))

    def to_json(self) -> dict:
        return {"blocks": self.block_lists()}

    def __repr__(self):
        return f"Congruence({self.block_lists()})"


class _Tables:
    """numpy views of a lattice's operation tables, cached per lattice."""

    _cache: dict[int, tuple] = {}

    @classmethod
    def of(cls, L: Lattice):
        hit = cls._cache.get(id(L))
        if hit is not None and hit[0] is L:
            return hit[1], hit[2]
        meet = np.array(L.meet, dtype=np.int32)
        join = np.array(L.join, dtype=np.int32)
        if len(cls._cache) > 64:
            cls._cache.clear()
        cls._cache[id(L)] = (L, meet, join)
        return meet, join


def _generate(L: Lattice, pairs, budget: Budget | None = None) -> np.ndarray:
    """Smallest congruence collapsing every pair in ``pairs`` (as a label array).

    Only pairs that actually merge two blocks are propagated: the blocks are
    the equivalence generated by these merge edges, and a translate of any
    pair inside a block is a chain of translates of merge edges.
    """
    meet, join = _Tables.of(L)
    label = np.arange(L.n)
    queue = list(pairs)
    while queue:
        x, y = queue.pop()
        lx, ly = label[x], label[y]
        if lx == ly:
            continue
        if budget is not None:
            budget.tick()
        label[label == ly] = lx
        for table in (meet, join):
            rx, ry = table[x], table[y]
            diff = label[rx] != label[ry]
            if diff.any():
                queue.extend(zip(rx[diff].tolist(), ry[diff].tolist()))
    return label


def principal_congruence(L: Lattice, a: str, b: str) -> Congruence:
    """con(a, b): the smallest congruence with a and b in one block."""
    return Congruence.from_labels(L, _generate(L, [(L.index[a], L.index[b])]).tolist())


def congruence_join(x: Congruence, y: Congruence) -> Congruence:
    L = x.carrier
    parent = list(range(L.n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for blocks in (x.blocks, y.blocks):
        first: dict[int, int] = {}
        for i, b in enumerate(blocks):
            j = first.setdefault(b, i)
            parent[find(i)] = find(j)
    return Congruence.from_labels(L, [find(i) for i in range(L.n)])


def zero_congruence(L: Lattice) -> Congruence:
    return Congruence(L, tuple(range(L.n)))


def unit_congruence(L: Lattice) -> Congruence:
    return Congruence(L, (0,) * L.n)


def is_congruence(L: Lattice, part) -> bool:
    """Compatibility of a partition (labels, or list of blocks of names) with meet and join."""
    if part and isinstance(part[0], (list, tuple, set, frozenset)):
        labels = Congruence.from_blocks(L, part).blocks
    else:
        labels = tuple(part)
    lab = np.asarray(labels)
    meet, join = _Tables.of(L)
    # x ~ y must imply row(x) ~ row(y) pointwise, for both tables
    for table in (meet, join):
        images = lab[table]
        first: dict[int, int] = {}
        for i, b in enumerate(labels):
            j = first.setdefault(b, i)
            if j != i and not np.array_equal(images[i], images[j]):
                return False
    return True


def _cover_congruences(L: Lattice, budget: Budget | None = None) -> list[np.ndarray]:
    return [_generate(L, [c], budget) for c in L.covers]


def _collapsed_covers(L: Lattice, labels: np.ndarray) -> int:
    mask = 0
    for k, (x, y) in enumerate(L.covers):
        if labels[x] == labels[y]:
            mask |= 1 << k
    return mask


def _from_cover_mask(L: Lattice, mask: int) -> Congruence:
    parent = list(range(L.n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for k, (x, y) in enumerate(L.covers):
        if mask >> k & 1:
            parent[find(x)] = find(y)
    return Congruence.from_labels(L, [find(i) for i in range(L.n)])


class _CoverCalculus:
    """Principal congruences encoded as bitmasks over the covering pairs."""

    def __init__(self, L: Lattice, budget: Budget | None = None):
        self.L = L
        self.cover_index = {c: k for k, c in enumerate(L.covers)}
        self.cover_masks = [_collapsed_covers(L, lab) for lab in _cover_congruences(L, budget)]

    @cached_property
    def pair_masks(self) -> dict[tuple[int, int], int]:
        """mask of con(a, b) for every a <= b, by dynamic programming along upper covers."""
        L = self.L
        order = L.order
        masks: dict[tuple[int, int], int] = {}
        for b in range(L.n):
            masks[(b, b)] = 0
        # process a by decreasing height so chains from a's upper covers are ready
        for a in sorted(range(L.n), key=lambda i: -order.height[i]):
            for b in order.topological:
                if a == b or not order.up[a] >> b & 1:
                    continue
                for c in order.upper_covers[a]:
                    if order.up[c] >> b & 1:
                        masks[(a, b)] = self.cover_masks[self.cover_index[(a, c)]] | masks[(c, b)]
                        break
        return masks


def all_congruences(L: Lattice) -> list[Congruence]:
    """The whole congruence lattice, as the join-closure of principal congruences."""
    calc = _CoverCalculus(L)
    found = {0}
    frontier = [0]
    gens = sorted(set(calc.cover_masks))
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                u = m | g
                if u not in found:
                    found.add(u)
                    nxt.append(u)
        frontier = nxt
    return [_from_cover_mask(L, m) for m in sorted(found, key=lambda m: (bin(m).count("1"), m))]


@dataclass
class PrincSet:
    carrier: Lattice
    members: list[Congruence]
    witnesses: list[tuple[str, str]]
    order: BoundedOrder

    def name(self, k: int) -> str:
        return self.order.elements[k]

    def __len__(self):
        return len(self.members)

    def to_json(self) -> dict:
        data = self.order.to_json()
        data["witnesses"] = {self.name(k): list(w) for k, w in enumerate(self.witnesses)}
        return data


def princ_set(L: Lattice, budget: Budget | None = None) -> PrincSet:
    """The ordered set of principal congruences of ``L``, ordered by containment.

    Members are named ``con(a,b)`` after the first witness pair found
    (pairs scanned in element order); the zero congruence is ``con(x,x)``
    for the bottom x.
    """
    budget = budget or Budget("principal congruence enumeration")
    calc = _CoverCalculus(L, budget)
    first: dict[int, tuple[int, int]] = {0: (L.bottom, L.bottom)}
    for a in range(L.n):
        for b in range(L.n):
            if a != b and L.up[a] >> b & 1:
                m = calc.pair_masks[(a, b)]
                first.setdefault(m, (a, b))
    masks = sorted(first, key=lambda m: (bin(m).count("1"), first[m]))
    members = [_from_cover_mask(L, m) for m in masks]
    witnesses = [(L.elements[first[m][0]], L.elements[first[m][1]]) for m in masks]
    names = [f"con({a},{b})" for a, b in witnesses]
    up = []
    for i, mi in enumerate(masks):
        row = 0
        for j, mj in enumerate(masks):
            if mi & ~mj == 0:
                row |= 1 << j
        up.append(row)
    return PrincSet(L, members, witnesses, BoundedOrder(names, up))


def princ_signatures(L: Lattice) -> dict[tuple[str, str], tuple]:
    """Block signature of con(a, b) for every comparable pair (used for cross-checks)."""
    calc = _CoverCalculus(L)
    return {
        (L.elements[a], L.elements[b]): _from_cover_mask(L, m).signature()
        for (a, b), m in calc.pair_masks.items()
    }


def is_simple(L: Lattice, budget: Budget | None = None) -> bool:
    """True iff ``L`` has exactly two congruences.

    Every congruence is a join of congruences of covering pairs, so it is
    enough that each covering pair generates the unit congruence.
    """
    if L.n < 2:
        raise OrderError("simplicity needs at least two elements")
    for c in L.covers:
        if len(set(_generate(L, [c], budget).tolist())) != 1:
            return False
    return True


def nontrivial_congruence(L: Lattice) -> Congruence | None:
    """A witness against simplicity, if any."""
    for c in L.covers:
        lab = _generate(L, [c])
        if len(set(lab.tolist())) != 1:
            return Congruence.from_labels(L, lab.tolist())
    return None


# --- brute-force oracle (tests only; Bell(n) partitions) ------------------------

def set_partitions(n: int):
    """All partitions of range(n) as restricted-growth label tuples."""
    labels = [0] * n

    def rec(i, k):
        if i == n:
            yield tuple(labels)
            return
        for b in range(k + 1):
            labels[i] = b
            yield from rec(i + 1, max(k, b + 1))

    if n == 0:
        yield ()
        return
    yield from rec(1, 1)


def brute_force_congruences(L: Lattice) -> list[Congruence]:
    return [Congruence(L, p) for p in set_partitions(L.n) if is_congruence(L, p)]


def brute_force_principal(L: Lattice, a: str, b: str, congruences=None) -> Congruence:
    """Intersection of every congruence collapsing a and b."""
    congruences = congruences if congruences is not None else brute_force_congruences(L)
    i, j = L.index[a], L.index[b]
    keep = [c for c in congruences if c.blocks[i] == c.blocks[j]]
    # blockwise intersection = pair of labels
    labels = list(zip(*(c.blocks for c in keep)))
    return Congruence.from_labels(L, labels)

