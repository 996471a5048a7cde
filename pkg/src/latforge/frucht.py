"""Graphs and length-3 lattices with a prescribed automorphism group."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .budget import Budget
from .order import Lattice, OrderError, as_lattice, from_covers
from .symmetry import GroupError, PermGroup, group_isomorphism, lattice_automorphisms


class FruchtError(RuntimeError):
    """Raised when a constructed graph or lattice fails certification."""


@dataclass(frozen=True)
class SimpleGraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self):
        vs = tuple(str(v) for v in self.vertices)
        if len(set(vs)) != len(vs):
            raise ValueError("duplicate vertices")
        known = set(vs)
        seen = set()
        edges = []
        for e in self.edges:
            if len(e) != 2:
                raise ValueError(f"edge {e!r} is not a pair")
            u, v = str(e[0]), str(e[1])
            if u not in known or v not in known:
                raise ValueError(f"edge {e!r} uses an unknown vertex")
            if u == v:
                raise ValueError(f"loop at {u!r}")
            key = frozenset((u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {e!r}")
            seen.add(key)
            edges.append((u, v))
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", tuple(edges))

    @cached_property
    def incidence(self) -> dict[str, frozenset]:
        inc: dict[str, set] = {v: set() for v in self.vertices}
        for k, (u, v) in enumerate(self.edges):
            inc[u].add(k)
            inc[v].add(k)
        return {v: frozenset(s) for v, s in inc.items()}

    def degree(self, v: str) -> int:
        return len(self.incidence[v])

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> "SimpleGraph":
        return cls(tuple(data["vertices"]), tuple(tuple(e) for e in data["edges"]))


@dataclass(frozen=True)
class ColoredCayley:
    group: PermGroup
    generators: tuple[int, ...]
    arcs: tuple[tuple[int, int, int], ...]  # (g, g*s, colour index)

    @property
    def vertices(self) -> range:
        return range(len(self.group))


def cayley(G: PermGroup, gens) -> ColoredCayley:
    gens = tuple(int(g) for g in gens)
    if any(not 0 <= g < len(G) for g in gens):
        raise GroupError("generator index out of range")
    if len(G._closure_of(gens)) != len(G):
        raise GroupError("elements do not generate the group")
    arcs = tuple((g, G.table[g][s], k) for k, s in enumerate(gens) for g in range(len(G)))
    return ColoredCayley(G, gens, arcs)


# the smallest asymmetric tree: legs of length 1, 2 and 3 at a centre
_ASYMMETRIC = SimpleGraph(
    ("c", "l1", "m1", "m2", "n1", "n2", "n3"),
    (("c", "l1"), ("c", "m1"), ("m1", "m2"), ("c", "n1"), ("n1", "n2"), ("n2", "n3")),
)


def _tail(vertices, edges, root: str, length: int):
    prev = root
    for j in range(1, length + 1):
        v = f"{root}.{j}"
        vertices.append(v)
        edges.append((prev, v))
        prev = v


def frucht_graph(G: PermGroup) -> SimpleGraph:
    """An undirected graph whose automorphism group is isomorphic to ``G``.

    Every arc g -> g*s_k of the coloured Cayley graph becomes a path
    g - x - y - g*s_k, with a pendant path of length 2k at x and one of
    length 2k + 1 at y (k counted from 1), so colour and direction are
    recoverable from the graph alone.  The trivial group gets a fixed
    asymmetric tree.
    """
    if len(G) == 1:
        H = _ASYMMETRIC
    else:
        C = cayley(G, G.generators())
        vertices = [f"g{g}" for g in C.vertices]
        edges: list[tuple[str, str]] = []
        for g, h, k in C.arcs:
            x, y = f"s{g}.{k}.x", f"s{g}.{k}.y"
            vertices += [x, y]
            edges += [(f"g{g}", x), (x, y), (y, f"g{h}")]
            _tail(vertices, edges, x, 2 * k + 2)
            _tail(vertices, edges, y, 2 * k + 3)
        H = SimpleGraph(tuple(vertices), tuple(edges))
    aut = graph_automorphisms(H)
    if group_isomorphism(aut, G) is None:
        raise FruchtError(f"graph automorphism group has order {len(aut)}, expected a copy of order {len(G)}")
    return H


def graph_lattice(H: SimpleGraph) -> Lattice:
    """{0, 1} ∪ V ∪ E ordered by incidence; length 3."""
    if len(H.edges) < 2:
        raise OrderError("graph lattice needs at least two edges")
    if "0" in H.vertices or "1" in H.vertices:
        raise OrderError("vertex names '0' and '1' are reserved for the bounds")
    for v in H.vertices:
        if not H.incidence[v]:
            raise OrderError(f"isolated vertex {v!r}")
    inc = {}
    for v in H.vertices:
        if H.incidence[v] in inc:
            raise OrderError(f"vertices {inc[H.incidence[v]]!r} and {v!r} have the same edges")
        inc[H.incidence[v]] = v
    names = [f"{u}|{v}" for u, v in H.edges]
    taken = set(H.vertices)
    for k, n in enumerate(names):
        while n in taken:
            n += "'"
        names[k] = n
        taken.add(n)
    covers = [("0", v) for v in H.vertices]
    for (u, v), e in zip(H.edges, names):
        covers += [(u, e), (v, e), (e, "1")]
    return as_lattice(from_covers(["0", "1", *H.vertices, *names], covers))


def graph_automorphisms(H: SimpleGraph, budget: Budget | None = None) -> PermGroup:
    """Aut H, computed as automorphisms of the graph lattice restricted to vertices."""
    L = graph_lattice(H)
    aut = lattice_automorphisms(L, budget)
    idx = [L.index[v] for v in H.vertices]
    back = {L.index[v]: k for k, v in enumerate(H.vertices)}
    perms = sorted({tuple(back[p[i]] for i in idx) for p in aut.elements})
    return PermGroup(len(H.vertices), tuple(perms))


@dataclass(frozen=True)
class FruchtLattice:
    """A certified length-3 lattice with Aut ≅ G."""

    lattice: Lattice
    graph: SimpleGraph
    automorphisms: PermGroup
    iso: dict  # index in G -> index in automorphisms


def frucht_lattice(G: PermGroup, budget: Budget | None = None) -> FruchtLattice:
    H = frucht_graph(G)
    L = graph_lattice(H)
    if L.length != 3:
        raise FruchtError(f"lattice has length {L.length}")
    aut = lattice_automorphisms(L, budget)
    phi = group_isomorphism(G, aut, budget)
    if phi is None:
        raise FruchtError(f"Aut has order {len(aut)}, not isomorphic to the group of order {len(G)}")
    return FruchtLattice(L, H, aut, phi)
