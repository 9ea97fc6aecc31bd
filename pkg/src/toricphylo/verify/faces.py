"""Faces of the model polytope and torus orbits of intersections of models."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .. import lattice, lp
from ..errors import DomainError
from ..groups import AbelianGroup
from ..lattice import Sublattice
from ..model import enumerate_sockets, is_network, network_of_socket, socket_of_network, \
    socket_index, vertex_matrix
from ..trees import Tree, as_tree


def two_vertex_tree(l: int, leaf: int) -> Tree:
    """Two inner vertices of degrees 3 and l-1, with ``leaf`` on the degree-3 one.

    The other leaf at the degree-3 vertex is the smallest remaining label.
    """
    if l < 4:
        raise DomainError("the two-vertex tree needs at least 4 leaves")
    partner = 1 if leaf != 1 else 2
    rest = tuple(a for a in range(1, l + 1) if a not in (leaf, partner))
    return Tree(((leaf, partner),) + rest)


def _network_rows(T: Tree, G: AbelianGroup, networks) -> list[int]:
    out = []
    for n in networks:
        if isinstance(n, (int, np.integer)):
            out.append(int(n))
            continue
        n = tuple(G.element(a) for a in n)
        if not is_network(T, G, n):
            raise DomainError(f"{n} is not a network on {T}")
        out.append(socket_index(G, socket_of_network(T, n)))
    return out


@dataclass
class Type1Face:
    tree: Tree
    edge: int
    element: tuple
    sockets: list[int]
    partner: Tree | None = None
    kernels_equal: bool | None = None

    @property
    def verdict(self) -> bool:
        return self.kernels_equal is not False

    def as_dict(self) -> dict:
        return {"edge": self.edge, "element": list(self.element), "size": len(self.sockets),
                "partner_tree": str(self.partner) if self.partner else None,
                "restricted_kernels_equal": self.kernels_equal}


def face_type1(T, G: AbelianGroup, e: int, g, check_lift: bool = True) -> Type1Face:
    """Networks with n(e) = g; for a pendant edge of a claw, also compare the face
    relations with those of the two-vertex tree carrying that leaf at its degree-3 vertex."""
    T = as_tree(T)
    edge = T.edge(e).index
    g = G.element(g)
    V = vertex_matrix(T, G)
    rows = [int(i) for i in np.flatnonzero(V[:, edge * G.order + G.index(g)])]
    face = Type1Face(T, edge, g, rows)
    if check_lift and T.is_claw and T.n_leaves >= 4 and T.is_pendant(edge):
        leaf = T.leaf_label[T.edge(edge).child]
        other = two_vertex_tree(T.n_leaves, leaf)
        K_claw = lattice.kernel_of(V[rows])
        K_other = lattice.kernel_of(vertex_matrix(other, G)[rows])
        face.partner = other
        face.kernels_equal = K_claw == K_other
    return face


def minimal_face(T, G: AbelianGroup, n1, n2) -> tuple[list[int], bool]:
    """Sockets of all networks agreeing edgewise with ``n1`` or ``n2``, and the diagonal flag."""
    T = as_tree(T)
    i1, i2 = _network_rows(T, G, [n1, n2])
    V = vertex_matrix(T, G)
    allowed = V[i1] | V[i2]
    rows = [int(i) for i in np.flatnonzero(~((V & ~allowed).any(axis=1)))]
    return rows, len(rows) > 2


def is_face(T, G: AbelianGroup, subset) -> bool:
    """Is ``subset`` (socket indices or networks) exactly the vertex set of a face?"""
    T = as_tree(T)
    rows = _network_rows(T, G, subset)
    if not rows:
        raise DomainError("a face needs at least one vertex")
    return lp.is_face(vertex_matrix(T, G), rows)


def supporting_functional(T, G: AbelianGroup, subset) -> list[Fraction] | None:
    T = as_tree(T)
    return lp.supporting_functional(vertex_matrix(T, G), _network_rows(T, G, subset))


@dataclass(frozen=True)
class OrbitSpec:
    """A coordinate stratum: socket coordinates in ``support`` nonzero, the rest zero."""

    support: tuple[int, ...]

    def __post_init__(self):
        s = tuple(sorted(set(int(i) for i in self.support)))
        if not s:
            raise DomainError("support must be nonempty")
        object.__setattr__(self, "support", s)


@dataclass
class OrbitResult:
    empty: bool
    components: int | None = None
    kernel_sum: Sublattice | None = None
    saturation: Sublattice | None = None
    blocking_tree: Tree | None = None

    @property
    def character_rank(self) -> int | None:
        """Rank of the character lattice of the distinguished component."""
        if self.empty:
            return None
        return self.kernel_sum.ambient - self.saturation.rank

    def as_dict(self) -> dict:
        if self.empty:
            return {"empty": True, "blocking_tree": str(self.blocking_tree)}
        return {"empty": False, "components": self.components,
                "kernel_sum_rank": self.kernel_sum.rank,
                "character_lattice_rank": self.character_rank}


def orbit_component_count(spec: OrbitSpec, G: AbelianGroup, trees: Sequence) -> OrbitResult:
    """Intersect the models of ``trees`` with the stratum of ``spec``.

    Empty if the support is not a face for some tree; otherwise the number of
    torus components is the index of the summed restricted kernels in their
    saturation.
    """
    trees = [as_tree(T) for T in trees]
    if not trees:
        raise DomainError("at least one tree is required")
    l = trees[0].n_leaves
    if any(T.n_leaves != l for T in trees):
        raise DomainError("all trees must have the same number of leaves")
    n = G.order ** (l - 1)
    rows = list(spec.support)
    if rows[-1] >= n:
        raise DomainError(f"support index {rows[-1]} out of range for {n} sockets")
    kernels = []
    for T in trees:
        V = vertex_matrix(T, G)
        if not lp.is_face(V, rows):
            return OrbitResult(True, blocking_tree=T)
        kernels.append(lattice.kernel_of(V[rows]))
    K0 = lattice.lattice_sum(kernels)
    sat = lattice.saturate(K0)
    return OrbitResult(False, lattice.index_in(K0, sat), K0, sat)
