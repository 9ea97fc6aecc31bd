"""Transfer from three binary models to the 3-Kimura model.

Everything lives in socket coordinates.  (M_{S,0}^{Z2})^3 is the sublattice
of Z^{3·2^(l-1)} with zero coordinate sum in each of the three blocks, and
``f`` is the stacked pushforward along the three projections Z2xZ2 -> Z2.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .. import lattice
from ..errors import DomainError
from ..groups import KIMURA3, Z2, kimura_projections
from ..lattice import Sublattice
from ..model import (
    build_polytope, check_size, edge_pushforward_matrix, enumerate_sockets,
    socket_pushforward_matrix, vertex_matrix,
)
from ..trees import Tree, as_tree
from .kernels import _kernel

MAX_LEAVES = 6


def kimura_socket_map(l: int) -> np.ndarray:
    """f1* x f2* x f3* : M_S^{Z2xZ2} -> (M_S^{Z2})^3 as a 0/1 matrix."""
    return np.hstack([socket_pushforward_matrix(f, l) for f in kimura_projections()])


def kimura_edge_map(n_edges: int) -> np.ndarray:
    """The edgewise map M_E^{Z2xZ2} -> (M_E^{Z2})^3 induced by the projections."""
    return np.hstack([edge_pushforward_matrix(f, n_edges) for f in kimura_projections()])


def _block_diag(M: np.ndarray, copies: int = 3) -> np.ndarray:
    r, c = M.shape
    out = np.zeros((copies * r, copies * c), dtype=M.dtype)
    for i in range(copies):
        out[i * r:(i + 1) * r, i * c:(i + 1) * c] = M
    return out


@lru_cache(maxsize=None)
def binary_triple_degree_zero(l: int) -> Sublattice:
    """(M_{S,0}^{Z2})^3 inside Z^{3·2^(l-1)}."""
    n = 2 ** (l - 1)
    return lattice.restricted_kernel(Sublattice.full(3 * n), lattice.block_degree_matrix(3, n))


@lru_cache(maxsize=None)
def image_of_f(l: int) -> Sublattice:
    """f(M_{S,0}^{Z2xZ2}) inside Z^{3·2^(l-1)}."""
    F = kimura_socket_map(l)
    B0 = lattice.degree_zero_basis(F.shape[0])
    return Sublattice.span(B0 @ F, F.shape[1])


def xor_matrix(l: int) -> np.ndarray:
    """Rows are the binary sockets, three times over: the XOR map to (Z2)^l before reduction mod 2."""
    S = np.array([[a[0] for a in s] for s in enumerate_sockets(Z2, l)], dtype=np.int64)
    return np.vstack([S, S, S])


@lru_cache(maxsize=None)
def xor_kernel(l: int) -> Sublattice:
    """Elements of (M_{S,0}^{Z2})^3 whose XOR image in (Z2)^l vanishes."""
    return lattice.preimage(Sublattice.span(2 * np.eye(l, dtype=np.int64), l), xor_matrix(l),
                            domain=binary_triple_degree_zero(l))


@dataclass
class ExactSequenceResult:
    leaves: int
    is_complex: bool
    exact: bool
    index: object

    @property
    def verdict(self) -> bool:
        return self.is_complex and self.exact

    def as_dict(self) -> dict:
        return {"leaves": self.leaves, "complex": self.is_complex,
                "exact": self.exact, "cokernel_index": self.index}


def _check_leaves(l: int):
    if not 3 <= l <= MAX_LEAVES:
        raise DomainError(f"supported leaf counts are 3..{MAX_LEAVES}, got {l}")


def check_exact_sequence(l: int) -> ExactSequenceResult:
    """Exactness of M_{S,0}^{Z2xZ2} -> (M_{S,0}^{Z2})^3 -> (Z2)^l at the middle term."""
    _check_leaves(l)
    im = image_of_f(l)
    ker = xor_kernel(l)
    is_complex = lattice.is_sublattice(im, ker)
    exact = is_complex and im == ker
    index = lattice.index_in(im, binary_triple_degree_zero(l))
    return ExactSequenceResult(l, is_complex, exact, index)


@lru_cache(maxsize=None)
def binary_triple_kernel(T: Tree) -> Sublattice:
    """K = K_1 x K_2 x K_3, the kernel of g x g x g for the binary model on ``T``."""
    K1 = _kernel(T, Z2)
    return lattice.direct_sum([K1, K1, K1])


@dataclass
class KernelInImageResult:
    tree: Tree
    verdict: bool
    kernel_rank: int
    witness: tuple | None = None

    def as_dict(self) -> dict:
        return {"tree": str(self.tree), "kernel_rank": self.kernel_rank}


def check_kernel_in_image(T) -> KernelInImageResult:
    """Is every relation of the binary triple an image under ``f``?"""
    T = as_tree(T)
    _check_leaves(T.n_leaves)
    K = binary_triple_kernel(T)
    im = image_of_f(T.n_leaves)
    witness = next((row for row in K.basis if not lattice.contains(im, row)), None)
    return KernelInImageResult(T, witness is None, K.rank, witness)


@dataclass
class IndexResult:
    tree: Tree
    socket_index: object
    vertex_index: object
    commutes: bool

    @property
    def verdict(self) -> bool:
        return self.commutes and self.socket_index == self.vertex_index

    def as_dict(self) -> dict:
        from .kernels import _jsonable
        return {"tree": str(self.tree), "socket_side_index": _jsonable(self.socket_index),
                "vertex_side_index": _jsonable(self.vertex_index), "diagram_commutes": self.commutes}


def check_index_equality(T, limit: int | None = None) -> IndexResult:
    """Compare [(M_{S,0}^{Z2})^3 : im f] with the index of the 3-Kimura vertex lattice
    pushed into (M̂_{E,0}^{Z2})^3."""
    T = as_tree(T)
    l = T.n_leaves
    if l > 5:
        raise DomainError(f"index comparison is bounded to l <= 5, got {l}")
    _check_leaves(l)
    check_size(KIMURA3, l, limit)
    E = T.n_edges
    socket_side = lattice.index_in(image_of_f(l), binary_triple_degree_zero(l))

    V4 = vertex_matrix(T, KIMURA3)
    V2 = vertex_matrix(T, Z2)
    I = kimura_edge_map(E)
    F = kimura_socket_map(l)
    commutes = np.array_equal(V4 @ I, F @ _block_diag(V2))

    B0 = lattice.degree_zero_basis(V4.shape[0])
    pushed = Sublattice.span(lattice.matmul(B0 @ V4, I), I.shape[1])
    binary_hat = build_polytope(T, Z2).degree_zero_lattice
    target = lattice.direct_sum([binary_hat] * 3)
    vertex_side = lattice.index_in(pushed, target)
    return IndexResult(T, socket_side, vertex_side, commutes)


def kimura_relations_pullback(T) -> Sublattice:
    """``f^{-1}(K)`` inside M_{S,0}^{Z2xZ2}, which should be the 3-Kimura kernel of ``T``."""
    T = as_tree(T)
    F = kimura_socket_map(T.n_leaves)
    domain = lattice.restricted_kernel(Sublattice.full(F.shape[0]),
                                       np.ones((F.shape[0], 1), dtype=np.int64))
    return lattice.preimage(binary_triple_kernel(T), F, domain=domain)
