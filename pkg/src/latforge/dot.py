"""Graphviz DOT output for Hasse diagrams and graphs."""
from __future__ import annotations

import json
from collections import defaultdict


def _q(name) -> str:
    # JSON string escaping is valid DOT quoted-ID escaping for our names
    return json.dumps(str(name))


def emit(nodes, edges, ranks=None, directed=True, name="G") -> str:
    """DOT text with one node per entry of ``nodes`` and one edge per pair.

    ``ranks`` maps a node to its layer; nodes of one layer share a rank.
    """
    arrow = "->" if directed else "--"
    lines = [f"{'digraph' if directed else 'graph'} {_q(name)} {{"]
    if directed:
        lines.append("  rankdir=BT;")
        lines.append("  edge [arrowhead=none];")
    if ranks:
        layers = defaultdict(list)
        for v in nodes:
            layers[ranks[v]].append(v)
        for r in sorted(layers):
            members = " ".join(_q(v) + ";" for v in layers[r])
            lines.append(f"  {{ rank=same; {members} }}")
    else:
        for v in nodes:
            lines.append(f"  {_q(v)};")
    for u, v in edges:
        lines.append(f"  {_q(u)} {arrow} {_q(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def hasse_dot(X, name="L") -> str:
    """Hasse diagram of a BoundedOrder or Lattice, ranked by height."""
    order = getattr(X, "order", X)
    ranks = {order.elements[i]: order.height[i] for i in range(order.n)}
    return emit(order.elements, order.cover_pairs(), ranks, True, name)


def graph_dot(H, name="H") -> str:
    return emit(H.vertices, H.edges, None, False, name)
