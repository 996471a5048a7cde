"""Individualization/refinement search for isomorphisms of vertex-coloured digraphs.

Digraphs are given as out-neighbour lists over ``range(n)``.  The search
refines both colourings simultaneously with a shared colour vocabulary,
so a leaf with a discrete colouring pairs vertices by colour.
"""
from __future__ import annotations

from typing import Iterator, Sequence

from .budget import Budget


class Digraph:
    __slots__ = ("n", "out", "inn", "edges")

    def __init__(self, n: int, edges):
        self.n = n
        self.out = [[] for _ in range(n)]
        self.inn = [[] for _ in range(n)]
        es = set()
        for a, b in edges:
            if (a, b) in es:
                continue
            es.add((a, b))
            self.out[a].append(b)
            self.inn[b].append(a)
        self.edges = frozenset(es)


def _signatures(g: Digraph, col: list[int]):
    return [
        (col[v], tuple(sorted(col[w] for w in g.out[v])), tuple(sorted(col[w] for w in g.inn[v])))
        for v in range(g.n)
    ]


def refine(ga: Digraph, gb: Digraph, ca: list[int], cb: list[int]):
    """Refine both colourings to the coarsest common equitable partition.

    Returns the refined pair, or None when the colour histograms diverge
    (no isomorphism respects the input colourings).
    """
    ncol = len(set(ca))
    while True:
        sa = _signatures(ga, ca)
        sb = _signatures(gb, cb)
        vocab = {s: k for k, s in enumerate(sorted(set(sa) | set(sb)))}
        ca = [vocab[s] for s in sa]
        cb = [vocab[s] for s in sb]
        if sorted(ca) != sorted(cb):
            return None
        k = len(vocab)
        if k == ncol:
            return ca, cb
        ncol = k


def isomorphisms(
    ga: Digraph,
    gb: Digraph,
    ca: Sequence[int],
    cb: Sequence[int],
    budget: Budget | None = None,
) -> Iterator[list[int]]:
    """Yield every colour-preserving isomorphism ``ga -> gb`` as an image list.

    Each isomorphism is produced exactly once; branching follows vertex
    index order, so the sequence is deterministic.
    """
    if ga.n != gb.n or len(ga.edges) != len(gb.edges):
        return
    budget = budget or Budget("isomorphism search")
    # normalise raw invariants into a shared vocabulary
    vocab = {c: k for k, c in enumerate(sorted(set(ca) | set(cb)))}
    ca = [vocab[c] for c in ca]
    cb = [vocab[c] for c in cb]
    yield from _search(ga, gb, ca, cb, budget)


def _search(ga, gb, ca, cb, budget):
    budget.tick()
    r = refine(ga, gb, ca, cb)
    if r is None:
        return
    ca, cb = r
    n = ga.n
    cells: dict[int, list[int]] = {}
    for v in range(n):
        cells.setdefault(ca[v], []).append(v)
    target = None
    for c in sorted(cells):
        if len(cells[c]) > 1 and (target is None or len(cells[c]) < len(cells[target])):
            target = c
    if target is None:
        where = {c: v for v, c in enumerate(cb)}
        image = [where[ca[v]] for v in range(n)]
        if all((image[a], image[b]) in gb.edges for a, b in ga.edges):
            yield image
        return
    u = cells[target][0]
    fresh = max(ca) + 1
    for v in range(n):
        if cb[v] != target:
            continue
        na = list(ca)
        nb = list(cb)
        na[u] = fresh
        nb[v] = fresh
        yield from _search(ga, gb, na, nb, budget)
