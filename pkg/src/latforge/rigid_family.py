"""Finite families of mutually rigid simple lattices.

Lattices of size n are generated up to isomorphism from those of size
n - 1 by adjoining a new atom.  Removing an atom from a finite lattice
always leaves a lattice, so every n-element lattice arises this way; the
new atom may sit below any up-set U of the smaller lattice as long as
U ∩ ↑x has a least element for every x other than 0 (that element becomes
the join of the atom with x).
"""
from __future__ import annotations

import json
from importlib import resources
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .budget import Budget
from .congruence import is_simple, nontrivial_congruence
from .constructions import plus_construction
from .order import (
    IsoMap,
    Lattice,
    _bits,
    as_lattice,
    chain,
    from_covers,
    lattice_from_json,
    order_isomorphism,
    zero_one_embedding,
)
from .symmetry import is_rigid, nontrivial_automorphism

CATALOG_VERSION = 1
MAX_ENUM = 10

# unlabeled lattices with n elements, n = 1..11
KNOWN_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 5, 6: 15, 7: 53, 8: 222, 9: 1078, 10: 5994, 11: 37622}


class CatalogBudgetExhausted(RuntimeError):
    def __init__(self, found: int, wanted: int):
        self.found = found
        self.wanted = wanted
        super().__init__(f"budget exhausted: found {found} of {wanted} lattices")


def _antichains(M: Lattice):
    els = [i for i in M.order.topological if i != M.bottom]

    def rec(k, chosen, blocked):
        if k == len(els):
            yield chosen
            return
        yield from rec(k + 1, chosen, blocked)
        x = els[k]
        if not blocked >> x & 1:
            yield from rec(k + 1, chosen + [x], blocked | M.up[x] | M.down[x])

    yield from rec(0, [], 0)


def _atom_sites(M: Lattice) -> Iterator[int]:
    """Up-sets U under which a new atom can be adjoined to ``M``."""
    for gens in _antichains(M):
        if not gens:
            continue
        U = 0
        for x in gens:
            U |= M.up[x]
        ok = True
        for x in range(M.n):
            if x == M.bottom:
                continue
            S = U & M.up[x]
            if not any(S & ~M.up[m] == 0 for m in _bits(S)):
                ok = False
                break
        if ok:
            yield U


def _relabel(L: Lattice) -> Lattice:
    """Rename to 0, 1 and e1..e{n-2} along a canonical linear extension."""
    order = L.order
    inner = sorted(order.interior(), key=lambda i: (order.height[i], -order.depth[i], i))
    names = {order.bottom: "0", order.top: "1"}
    for k, i in enumerate(inner, 1):
        names[i] = f"e{k}"
    ordered = ["0"] + [f"e{k}" for k in range(1, L.n - 1)] + ["1"]
    return as_lattice(from_covers(ordered, [(names[a], names[b]) for a, b in L.covers]))


@lru_cache(maxsize=None)
def _level(n: int) -> tuple[Lattice, ...]:
    if n == 1:
        return (as_lattice(from_covers(["0"], [])),)
    if n == 2:
        return (as_lattice(chain(2)),)
    buckets: dict[tuple, list[Lattice]] = {}
    out = []
    budget = Budget(f"enumeration of {n}-element lattices")
    for M in _level(n - 1):
        names = [f"x{i}" for i in range(n)]
        base = [(names[a], names[b]) for a, b in M.covers]
        for U in _atom_sites(M):
            budget.tick()
            covers = base + [(names[M.bottom], names[n - 1])] + [(names[n - 1], names[m]) for m in _bits(U)]
            L = as_lattice(from_covers(names, covers))
            key = (tuple(sorted(L.order.invariants())), len(L.covers))
            bucket = buckets.setdefault(key, [])
            if any(order_isomorphism(L, X) is not None for X in bucket):
                continue
            bucket.append(L)
            out.append(L)
    return tuple(_relabel(L) for L in out)


def enumerate_lattices(n: int) -> Iterator[Lattice]:
    """All n-element lattices up to isomorphism, 2 <= n <= 10, in a fixed order."""
    if not 2 <= n <= MAX_ENUM:
        raise ValueError(f"n must be in 2..{MAX_ENUM}, got {n}")
    yield from _level(n)


def top_join_reducible(L: Lattice) -> bool:
    return len(L.order.lower_covers[L.top]) > 1


@dataclass
class RigidCatalog:
    entries: list[Lattice]
    simple: list[bool]
    rigid: list[bool]
    non_embeddability: list[list[bool]]
    provenance: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.entries)

    def to_json(self) -> dict:
        return {
            "version": CATALOG_VERSION,
            "entries": [
                {"lattice": L.to_json(), "simple": s, "rigid": r}
                for L, s, r in zip(self.entries, self.simple, self.rigid)
            ],
            "non_embeddability": self.non_embeddability,
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, data: dict) -> "RigidCatalog":
        if data.get("version") != CATALOG_VERSION:
            raise ValueError(f"unsupported catalog version {data.get('version')!r}")
        entries = [lattice_from_json(e["lattice"]) for e in data["entries"]]
        k = len(entries)
        matrix = data.get("non_embeddability") or [[i != j for j in range(k)] for i in range(k)]
        return cls(
            entries,
            [bool(e.get("simple", False)) for e in data["entries"]],
            [bool(e.get("rigid", False)) for e in data["entries"]],
            matrix,
            data.get("provenance", {}),
        )

    def save(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=1)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "RigidCatalog":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def default_catalog() -> RigidCatalog:
    """The catalog bundled with the package (12 entries)."""
    return RigidCatalog.from_json(json.loads(resources.files("latforge.data").joinpath("catalog.json").read_text()))


def _candidates(max_size: int, enum_limit: int):
    """(size, source, lattice) in nondecreasing size; ties: enumerated first."""
    for s in range(3, max_size + 1):
        if s <= enum_limit:
            for k, L in enumerate(enumerate_lattices(s)):
                yield s, f"enum:{s}:{k}", L
        base = (s + 1) // 2
        if 2 * base - 1 == s and base <= enum_limit and base >= 3:
            for k, L in enumerate(enumerate_lattices(base)):
                if top_join_reducible(L) and not is_simple(L) and is_rigid(L):
                    yield s, f"plus:{base}:{k}", plus_construction(L)


def mine_family(m: int, max_size: int = 25, enum_limit: int = MAX_ENUM) -> RigidCatalog:
    """Greedily collect ``m`` simple, rigid, pairwise non-embeddable lattices.

    Candidates are all enumerated lattices of each size, followed by
    plus-constructions of rigid non-simple lattices whose top is
    join-reducible; each is certified from scratch before acceptance.
    """
    if m < 1:
        raise ValueError("m must be positive")
    chosen: list[Lattice] = []
    sources: list[str] = []
    for size, source, L in _candidates(max_size, min(enum_limit, MAX_ENUM)):
        if not (is_rigid(L) and is_simple(L)):
            continue
        if any(
            zero_one_embedding(L, X) is not None or zero_one_embedding(X, L) is not None for X in chosen
        ):
            continue
        chosen.append(L)
        sources.append(source)
        if len(chosen) == m:
            break
    if len(chosen) < m:
        raise CatalogBudgetExhausted(len(chosen), m)
    k = len(chosen)
    return RigidCatalog(
        chosen,
        [True] * k,
        [True] * k,
        [[i != j for j in range(k)] for i in range(k)],
        {"m": m, "max_size": max_size, "enum_limit": enum_limit, "sources": sources},
    )


@dataclass
class Violation:
    kind: str  # "not-simple" | "not-rigid" | "too-small" | "embedding" | "flag-mismatch"
    entries: tuple[int, ...]
    witness: object = None

    def describe(self) -> str:
        w = self.witness
        if isinstance(w, IsoMap):
            w = w.pairs
        elif hasattr(w, "block_lists"):
            w = w.block_lists()
        return f"{self.kind} {list(self.entries)}: {w}"


@dataclass
class CatalogReport:
    violations: list[Violation]

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        return [v.describe() for v in self.violations] or ["all certifications pass"]


def verify_catalog(c: RigidCatalog) -> CatalogReport:
    """Re-certify simplicity, rigidity and mutual non-embeddability from scratch."""
    out: list[Violation] = []
    for k, L in enumerate(c.entries):
        if L.n < 3:
            out.append(Violation("too-small", (k,), L.n))
            continue
        theta = nontrivial_congruence(L)
        if theta is not None:
            out.append(Violation("not-simple", (k,), theta))
        f = nontrivial_automorphism(L)
        if f is not None:
            out.append(Violation("not-rigid", (k,), f))
    for i, A in enumerate(c.entries):
        for j, B in enumerate(c.entries):
            if i == j:
                continue
            f = zero_one_embedding(A, B)
            if f is not None:
                out.append(Violation("embedding", (i, j), f))
    return CatalogReport(out)
