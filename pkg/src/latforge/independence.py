"""Assemble a lattice with prescribed Princ and Aut, and certify it."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from .budget import Budget
from .congruence import princ_set
from .constructions import build_K, horizontal_sum, interval_graft
from .order import BoundedOrder, Lattice, interval, order_isomorphism
from .rigid_family import RigidCatalog
from .frucht import frucht_lattice
from .symmetry import PermGroup, group_isomorphism, lattice_automorphisms, nontrivial_automorphism

CERT_VERSION = 1


class BuildError(RuntimeError):
    def __init__(self, stage: str, message: str, witness=None):
        self.stage = stage
        self.witness = witness
        super().__init__(f"{stage}: {message}")


@dataclass
class Certificate:
    lattice: Lattice
    poset: BoundedOrder
    group: PermGroup
    princ_iso: dict[str, tuple[str, str]]  # p -> witness pair of its principal congruence
    aut_iso: dict[str, tuple[str, ...]]  # group label -> images of L's elements, in order
    stats: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {
            "version": CERT_VERSION,
            "lattice": self.lattice.to_json(),
            "poset": self.poset.to_json(),
            "group": self.group.to_json(),
            "princ_iso": {p: list(w) for p, w in self.princ_iso.items()},
            "aut_iso": {g: list(img) for g, img in self.aut_iso.items()},
            "stats": self.stats,
        }


@dataclass
class VerifyReport:
    princ_ok: bool
    aut_ok: bool
    certificate: Certificate | None
    messages: list[str]

    @property
    def ok(self) -> bool:
        return self.princ_ok and self.aut_ok


def verify(L: Lattice, P: BoundedOrder, G: PermGroup, budget: Budget | None = None) -> VerifyReport:
    """Recompute Princ L and Aut L from ``L`` alone and match them with P and G."""
    t0 = time.perf_counter()
    messages = []
    ps = princ_set(L, budget)
    t1 = time.perf_counter()
    iso = order_isomorphism(P, ps.order)
    princ_iso = {}
    if iso is None:
        messages.append(f"princ: Princ L has {len(ps)} members and is not isomorphic to P ({P.n} elements)")
    else:
        wit = dict(zip(ps.order.elements, ps.witnesses))
        princ_iso = {p: wit[iso.pairs[p]] for p in P.elements}
    aut = lattice_automorphisms(L, budget)
    t2 = time.perf_counter()
    phi = group_isomorphism(G, aut, budget)
    aut_iso = {}
    if phi is None:
        messages.append(f"aut: Aut L has order {len(aut)} and is not isomorphic to G (order {len(G)})")
    else:
        for g in range(len(G)):
            perm = aut.elements[phi[g]]
            aut_iso[G.label(g)] = tuple(L.elements[perm[i]] for i in range(L.n))
    t3 = time.perf_counter()
    cert = None
    if iso is not None and phi is not None:
        stats = {"lattice_size": L.n, "princ_size": len(ps), "aut_order": len(aut), "length": L.length}
        timings = {"princ_s": t1 - t0, "aut_s": t2 - t1, "group_iso_s": t3 - t2}
        cert = Certificate(L, P, G, princ_iso, aut_iso, stats, timings)
    return VerifyReport(iso is not None, phi is not None, cert, messages)


def linear_extension(P: BoundedOrder) -> list[str]:
    """P^- listed by height, ties by position in P."""
    return [P.elements[k] for k in sorted(P.interior(), key=lambda k: (P.height[k], k))]


def build_Kbar(P: BoundedOrder, catalog: RigidCatalog, policy: str = "all-pairs"):
    """K with catalog entry k grafted into [o, a_p] for the k-th p of P^-.

    Returns (K as a FrameLattice, K-bar, graft trace).
    """
    inner = linear_extension(P)
    if len(catalog) < len(inner):
        raise BuildError("catalog", f"catalog too small: {len(catalog)} entries for {len(inner)} elements")
    F = build_K(P, policy)
    Kbar = F.lattice
    grafts = []
    for k, p in enumerate(inner):
        size = len(interval(F.lattice, F.o, F.a(p)))
        Kbar = interval_graft(Kbar, F.o, F.a(p), catalog.entries[k], tag=f"K{k}[{p}]:")
        grafts.append({"p": p, "entry": k, "entry_size": catalog.entries[k].n, "interval_size": size})
    return F, Kbar, grafts


def build(
    P: BoundedOrder,
    G: PermGroup,
    catalog: RigidCatalog,
    policy: str = "all-pairs",
    budget: Budget | None = None,
) -> Certificate:
    """Build L with Princ L ≅ P and Aut L ≅ G and return its certificate.

    K is the frame of P with gadgets; a distinct catalog lattice is grafted
    into [o, a_p] for each p in P^- to kill the automorphisms of K; the
    result is glued along its bounds to the Frucht lattice of G.  When P
    has two elements, K is the frame alone, already simple and rigid.
    """
    clock = {}
    t = time.perf_counter()
    F, Kbar, grafts = build_Kbar(P, catalog, policy)
    clock["K_s"] = time.perf_counter() - t

    t = time.perf_counter()
    pk = princ_set(Kbar, budget)
    if order_isomorphism(P, pk.order) is None:
        raise BuildError(
            "princ K-bar",
            f"Princ has {len(pk)} members, P has {P.n}",
            [list(w) for w in pk.witnesses],
        )
    f = nontrivial_automorphism(Kbar)
    if f is not None:
        moved = {x: y for x, y in f.pairs.items() if x != y}
        raise BuildError("aut K-bar", "K-bar is not rigid", moved)
    clock["gate_s"] = time.perf_counter() - t

    t = time.perf_counter()
    fr = frucht_lattice(G, budget)
    L = horizontal_sum(Kbar, fr.lattice)
    clock["frucht_s"] = time.perf_counter() - t

    report = verify(L, P, G, budget)
    if not report.ok:
        raise BuildError("verify", "; ".join(report.messages))
    cert = report.certificate
    cert.stats.update(
        {
            "K_size": F.lattice.n,
            "Kbar_size": Kbar.n,
            "frucht_size": fr.lattice.n,
            "gadgets": [list(g) for g in F.gadgets],
            "policy": policy,
            "grafts": grafts,
        }
    )
    cert.timings.update(clock)
    return cert
