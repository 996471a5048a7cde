"""Finite lattices with prescribed principal congruences and automorphisms."""
from .budget import Budget, BudgetExceeded
from .congruence import Congruence, PrincSet, is_simple, principal_congruence, princ_set
from .constructions import build_K, frame, horizontal_sum, interval_graft, plus_construction
from .frucht import SimpleGraph, frucht_graph, frucht_lattice, graph_lattice
from .independence import Certificate, build, verify
from .order import BoundedOrder, Lattice, as_lattice, from_covers, order_isomorphism, zero_one_embedding
from .rigid_family import RigidCatalog, enumerate_lattices, mine_family, verify_catalog
from .symmetry import PermGroup, group_isomorphism, lattice_automorphisms

__version__ = "0.1.0"
