"""Exact toric data for group-based phylogenetic models and checks on their lattices."""
from .errors import (
    ContainmentError, DomainError, InvalidElementError, ResourceLimitError, ToricPhyloError,
    TreeParseError,
)
from .groups import KIMURA3, Z2, Z3, Z4, AbelianGroup, GroupMorphism, all_morphisms
from .lattice import INFINITE, Sublattice
from .model import ModelPolytope, build_polytope, enumerate_sockets, vertex_matrix
from .trees import Tree, claw_tree, contract_edge, enumerate_topologies, leq, parse_tree

__version__ = "0.1.0"
