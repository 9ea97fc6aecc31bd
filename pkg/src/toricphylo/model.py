"""Sockets, networks and the model polytope of a group-based model.

Coordinates of M_E are edge-major and element-minor: column ``e*|G| + i``
is the pair (edge ``e``, ``G.elements[i]``).  Sockets are indexed in the
order of :func:`enumerate_sockets`; that order is shared by every tree with
the same number of leaves, so socket-indexed lattices of different trees
live in one ambient space.
"""
from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Mapping, Sequence

import numpy as np

from . import lattice
from .errors import DomainError, ResourceLimitError
from .groups import AbelianGroup, GroupElement, GroupMorphism
from .lattice import Sublattice
from .trees import Tree, leq

Socket = tuple[GroupElement, ...]
Network = tuple[GroupElement, ...]

DEFAULT_MAX_SOCKETS = 1024


def max_sockets() -> int:
    """Socket-count limit; ``TORICPHYLO_MAX_SOCKETS`` overrides the default."""
    raw = os.environ.get("TORICPHYLO_MAX_SOCKETS")
    return int(raw) if raw else DEFAULT_MAX_SOCKETS


def socket_count(G: AbelianGroup, l: int) -> int:
    return G.order ** (l - 1)


def check_size(G: AbelianGroup, l: int, limit: int | None = None):
    limit = max_sockets() if limit is None else limit
    n = socket_count(G, l)
    if n > limit:
        raise ResourceLimitError(
            f"model with {l} leaves over group {G} has {n} sockets, limit is {limit}")


@lru_cache(maxsize=None)
def _sockets(G: AbelianGroup, l: int) -> tuple[Socket, ...]:
    out = []
    for head in itertools.product(G.elements, repeat=l - 1):
        out.append(head + (G.negate(G.sum(head)),))
    return tuple(out)


def enumerate_sockets(G: AbelianGroup, l: int) -> list[Socket]:
    """All leaf assignments summing to zero, lexicographic in the first ``l-1`` leaves."""
    if l < 2:
        raise DomainError(f"sockets need at least 2 leaves, got {l}")
    return list(_sockets(G, l))


def socket_index(G: AbelianGroup, s: Sequence) -> int:
    """Position of socket ``s`` in :func:`enumerate_sockets` order."""
    s = tuple(G.element(a) for a in s)
    if G.sum(s) != G.zero:
        raise DomainError(f"{s} is not a socket: its entries do not sum to zero")
    idx = 0
    for a in s[:-1]:
        idx = idx * G.order + G.index(a)
    return idx


def is_socket(G: AbelianGroup, s: Sequence) -> bool:
    return G.sum(s) == G.zero


def network_of_socket(T: Tree, G: AbelianGroup, s: Sequence) -> Network:
    """The unique network restricting to ``s`` on the pendant edges.

    Built bottom-up: an inner edge carries the sum of its child edges.
    """
    if len(s) != T.n_leaves:
        raise DomainError(f"socket of length {len(s)} on a tree with {T.n_leaves} leaves")
    s = tuple(G.element(a) for a in s)
    if G.sum(s) != G.zero:
        raise DomainError(f"{s} is not a socket")
    value = [G.zero] * T.n_vertices
    for v in reversed(range(1, T.n_vertices)):
        a = T.leaf_label[v]
        value[v] = s[a - 1] if a is not None else G.sum(value[c] for c in T.children[v])
    return tuple(value[1:])


def is_network(T: Tree, G: AbelianGroup, n: Sequence) -> bool:
    if len(n) != T.n_edges:
        return False
    try:
        n = tuple(G.element(a) for a in n)
    except ValueError:
        return False
    val = (G.zero,) + n
    for v in T.nodes:
        out = G.sum(val[c] for c in T.children[v])
        if out != val[v]:
            return False
    return True


def socket_of_network(T: Tree, n: Network) -> Socket:
    return tuple(n[e] for e in T.pendant_edges)


def socket_network_bijection(T: Tree, G: AbelianGroup) -> list[tuple[Socket, Network]]:
    return [(s, network_of_socket(T, G, s)) for s in _sockets(G, T.n_leaves)]


def vertex_of_network(T: Tree, G: AbelianGroup, n: Sequence) -> np.ndarray:
    """0/1 vector with a one at each coordinate (e, n(e))."""
    if not is_network(T, G, n):
        raise DomainError(f"{tuple(n)} is not a network on {T} over {G}")
    v = np.zeros(T.n_edges * G.order, dtype=np.int64)
    for e, a in enumerate(n):
        v[e * G.order + G.index(a)] = 1
    return v


@dataclass(frozen=True)
class ModelPolytope:
    """Vertex set of the model polytope, one row per network in socket order."""

    tree: Tree
    group: AbelianGroup
    vertices: np.ndarray

    def __eq__(self, other):
        return (isinstance(other, ModelPolytope) and self.tree == other.tree
                and self.group == other.group and np.array_equal(self.vertices, other.vertices))

    __hash__ = None

    @property
    def n_vertices(self) -> int:
        return self.vertices.shape[0]

    @property
    def dim(self) -> int:
        """Dimension of M_E."""
        return self.vertices.shape[1]

    @cached_property
    def sockets(self) -> tuple[Socket, ...]:
        return _sockets(self.group, self.tree.n_leaves)

    @cached_property
    def networks(self) -> tuple[Network, ...]:
        return tuple(network_of_socket(self.tree, self.group, s) for s in self.sockets)

    @cached_property
    def degree_matrix(self) -> np.ndarray:
        """Columns are the degree functions deg_e."""
        return lattice.block_degree_matrix(self.tree.n_edges, self.group.order)

    @cached_property
    def lattice(self) -> Sublattice:
        """The sublattice of M_E generated by the vertices."""
        return Sublattice.span(self.vertices, self.dim)

    @cached_property
    def degree_zero_lattice(self) -> Sublattice:
        """Elements of the vertex lattice with every deg_e equal to zero."""
        return lattice.restricted_kernel(self.lattice, self.degree_matrix)

    def to_json(self) -> dict:
        return {
            "tree": str(self.tree),
            "group": str(self.group),
            "vertices": self.vertices.tolist(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def vertex_matrix(T: Tree, G: AbelianGroup) -> np.ndarray:
    """Rows are the vertex vectors of all networks, in socket order.

    The value on edge e is the sum of the socket over the leaves below e, so
    each edge block is filled from one matrix product over residues.
    """
    socks = _sockets(G, T.n_leaves)
    k = G.order
    V = np.zeros((len(socks), T.n_edges * k), dtype=np.int64)
    index = {a: i for i, a in enumerate(G.elements)}
    rows = np.arange(len(socks))
    for e in range(T.n_edges):
        leaves = sorted(T.below[e])
        cols = np.fromiter(
            (index[G.sum(s[a - 1] for a in leaves)] for s in socks), dtype=np.int64, count=len(socks))
        V[rows, e * k + cols] = 1
    return V


def build_polytope(T: Tree, G: AbelianGroup, limit: int | None = None) -> ModelPolytope:
    check_size(G, T.n_leaves, limit)
    return ModelPolytope(T, G, vertex_matrix(T, G))


def socket_pushforward_matrix(m: GroupMorphism, l: int) -> np.ndarray:
    """0/1 matrix sending the basis vector of socket s to that of m∘s."""
    src = _sockets(m.domain, l)
    dst = _sockets(m.codomain, l)
    P = np.zeros((len(src), len(dst)), dtype=np.int64)
    for i, s in enumerate(src):
        P[i, socket_index(m.codomain, [m(a) for a in s])] = 1
    return P


def edge_pushforward_matrix(m: GroupMorphism, n_edges: int) -> np.ndarray:
    """h_(e,g) -> h_(e,m(g)) on M_E."""
    k1, k2 = m.domain.order, m.codomain.order
    H = np.zeros((n_edges * k1, n_edges * k2), dtype=np.int64)
    for e in range(n_edges):
        for i, a in enumerate(m.domain.elements):
            H[e * k1 + i, e * k2 + m.codomain.index(m(a))] = 1
    return H


def degree_zero_pushforward(m: GroupMorphism, l: int) -> np.ndarray:
    """The pushforward restricted to M_{S,0}, in the bases e_s - e_0 on both sides."""
    P = socket_pushforward_matrix(m, l)
    B = lattice.degree_zero_basis(P.shape[0])
    image = B @ P
    # express in the target basis e_t - e_0: drop the e_0 coordinate
    return image[:, 1:]


def edge_correspondence(T1: Tree, T2: Tree) -> list[tuple[int, int, bool]]:
    """For each edge of T1: (edge of T2 with the same split, orientation flipped?)."""
    if not leq(T1, T2):
        raise DomainError(f"{T1} is not obtained from {T2} by contractions")
    by_split = {}
    for e in range(T2.n_edges):
        by_split.setdefault(T2.split(e), e)
    out = []
    for e in range(T1.n_edges):
        f = by_split[T1.split(e)]
        out.append((e, f, T1.below[e] != T2.below[f]))
    return out


def edge_projection_matrix(T1: Tree, T2: Tree, G: AbelianGroup) -> np.ndarray:
    """Coordinate-forgetting projection M_E^{T2} -> M_E^{T1}.

    When an edge is oriented oppositely in the two rootings, the element
    index is negated so that networks still map to networks.  The image of
    the vertex set of T2 is checked to be the vertex set of T1, row by row.
    """
    k = G.order
    Pi = np.zeros((T2.n_edges * k, T1.n_edges * k), dtype=np.int64)
    for e1, e2, flipped in edge_correspondence(T1, T2):
        for i, a in enumerate(G.elements):
            j = G.index(G.negate(a)) if flipped else i
            Pi[e2 * k + i, e1 * k + j] = 1
    if not np.array_equal(vertex_matrix(T2, G) @ Pi, vertex_matrix(T1, G)):
        raise AssertionError(f"projection of P^{T2} is not P^{T1}")
    return Pi


def evaluate_psi(T: Tree, G: AbelianGroup, params) -> list[Fraction]:
    """Monomial parametrization: the socket coordinate is the product of params[e][n(e)].

    ``params`` is indexed ``[edge][element index]`` or is a mapping keyed by
    ``(edge, element)``.
    """
    if isinstance(params, Mapping):
        table = [[Fraction(params[(e, a)]) for a in G.elements] for e in range(T.n_edges)]
    else:
        table = [[Fraction(x) for x in row] for row in params]
    if len(table) != T.n_edges or any(len(r) != G.order for r in table):
        raise DomainError(f"need {T.n_edges} x {G.order} parameters")
    out = []
    for s in _sockets(G, T.n_leaves):
        val = Fraction(1)
        for e, a in enumerate(network_of_socket(T, G, s)):
            val *= table[e][G.index(a)]
        out.append(val)
    return out
