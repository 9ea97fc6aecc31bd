"""Kernel lattices of models, tree inclusion, the claw-intersection theorem,
dimension counts and fiber cardinality."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .. import lattice
from ..errors import DomainError
from ..groups import AbelianGroup
from ..lattice import INFINITE, Sublattice
from ..model import build_polytope, check_size, vertex_matrix
from ..trees import Tree, as_tree, claw_tree, enumerate_topologies, leq


@dataclass(frozen=True)
class KernelReport:
    tree: Tree
    group: AbelianGroup
    kernel: Sublattice
    rank: int
    saturation_index: int

    def as_dict(self) -> dict:
        return {
            "tree": str(self.tree),
            "group": str(self.group),
            "rank": self.rank,
            "saturation_index": self.saturation_index,
            "kernel": self.kernel.to_json(),
        }


@lru_cache(maxsize=256)
def _kernel(T: Tree, G: AbelianGroup) -> Sublattice:
    return lattice.kernel_of(vertex_matrix(T, G))


def kernel_lattice(T: Tree, G: AbelianGroup, limit: int | None = None) -> KernelReport:
    """Integer relations among the polytope vertices, indexed by sockets."""
    T = as_tree(T)
    check_size(G, T.n_leaves, limit)
    K = _kernel(T, G)
    # kernels are saturated by construction; the index is recorded, not assumed
    sat = lattice.saturation_index(K) if K.rank else 1
    return KernelReport(T, G, K, K.rank, sat)


def _kernel_job(args):
    T, G = args
    return _kernel(T, G)


def kernels_for(trees: Sequence[Tree], G: AbelianGroup, jobs: int = 1) -> list[Sublattice]:
    """Kernels of several models; results come back in input order."""
    trees = list(trees)
    if jobs > 1 and len(trees) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            out = list(pool.map(_kernel_job, [(T, G) for T in trees]))
        return out
    return [_kernel(T, G) for T in trees]


def annihilates(K: Sublattice, V: np.ndarray) -> bool:
    """Every basis vector of ``K`` is a relation among the rows of ``V``."""
    if K.rank == 0:
        return True
    return not lattice.matmul(K.matrix, V).any()


def check_inclusion(T1, T2, G: AbelianGroup, limit: int | None = None) -> bool:
    """Relations of the finer tree ``T2`` are relations of the coarser ``T1``."""
    T1, T2 = as_tree(T1), as_tree(T2)
    if not leq(T1, T2):
        raise DomainError(f"{T1} is not a contraction of {T2}")
    check_size(G, T1.n_leaves, limit)
    return lattice.is_sublattice(_kernel(T2, G), _kernel(T1, G))


@dataclass
class MainTheoremResult:
    leaves: int
    group: AbelianGroup
    mode: str
    sources: list[Tree]
    verdict: bool
    claw_kernel: Sublattice
    summed: Sublattice
    saturation_index: object
    index_in_claw: object
    witness: tuple | None = None
    sources_used: int = 0

    def as_dict(self) -> dict:
        return {
            "leaves": self.leaves,
            "group": str(self.group),
            "mode": self.mode,
            "sources": [str(T) for T in self.sources],
            "claw_kernel_rank": self.claw_kernel.rank,
            "summed_rank": self.summed.rank,
            "saturation_index": _jsonable(self.saturation_index),
            "index_in_claw": _jsonable(self.index_in_claw),
            "sources_summed_before_equality": self.sources_used,
        }


def _jsonable(x):
    return "INFINITE" if x == INFINITE else x


def non_claw_topologies(l: int) -> list[Tree]:
    return [T for T in enumerate_topologies(l) if not T.is_claw]


def check_main_theorem(l: int, G: AbelianGroup, sources: Sequence | None = None,
                       mode: str = "scheme", jobs: int = 1,
                       limit: int | None = None) -> MainTheoremResult:
    """Do the kernels of the source trees sum (scheme) or saturate (set) to the claw kernel?

    ``sources`` defaults to every non-claw topology on ``l`` leaves.
    """
    if mode not in ("scheme", "set"):
        raise DomainError(f"mode must be 'scheme' or 'set', got {mode!r}")
    check_size(G, l, limit)
    sources = non_claw_topologies(l) if sources is None else [as_tree(T) for T in sources]
    for T in sources:
        if T.n_leaves != l:
            raise DomainError(f"source {T} has {T.n_leaves} leaves, expected {l}")
        if T.is_claw:
            raise DomainError(f"source {T} is the claw tree")
    # with no sources the sum is the zero lattice; true exactly when the claw has no relations
    claw = _kernel(claw_tree(l), G)
    V_claw = vertex_matrix(claw_tree(l), G)
    kernels = kernels_for(sources, G, jobs)

    summed = Sublattice.zero(claw.ambient)
    used = 0
    for K in kernels:
        if summed == claw:
            break
        summed = lattice.lattice_sum([summed, K])
        used += 1
    # kernels not folded in still have to lie in the claw kernel for the sum to be exact
    for K in kernels[used:]:
        if not annihilates(K, V_claw):
            summed = lattice.lattice_sum([summed, K])
    sat = lattice.saturate(summed)
    sat_index = lattice.index_in(summed, sat)
    inside = lattice.is_sublattice(summed, claw)
    idx = lattice.index_in(summed, claw) if inside else None

    if mode == "scheme":
        verdict = summed == claw
        target = summed
    else:
        verdict = sat == lattice.saturate(claw)
        target = sat
    witness = None
    if not verdict:
        witness = next((row for row in claw.basis if not lattice.contains(target, row)), None)
    return MainTheoremResult(l, G, mode, sources, verdict, claw, summed, sat_index, idx,
                             witness, used)


@dataclass
class DimensionReport:
    tree: Tree
    group: AbelianGroup
    affine: int
    projective: int
    n_edges: int
    expected_affine: int | None = None
    expected_projective: int | None = None

    @property
    def holds(self) -> bool:
        ok = self.projective == self.affine - 1
        if self.expected_affine is not None:
            ok = ok and self.affine == self.expected_affine
        if self.expected_projective is not None:
            ok = ok and self.projective == self.expected_projective
        return ok

    def as_dict(self) -> dict:
        return {
            "tree": str(self.tree),
            "group": str(self.group),
            "edges": self.n_edges,
            "affine": self.affine,
            "projective": self.projective,
            "expected_affine": self.expected_affine,
            "expected_projective": self.expected_projective,
        }


def dimension_report(T, G: AbelianGroup, limit: int | None = None) -> DimensionReport:
    """Affine and projective dimension of the model, with the known closed forms."""
    T = as_tree(T)
    P = build_polytope(T, G, limit)
    affine = P.lattice.rank
    projective = P.degree_zero_lattice.rank
    E = T.n_topological_edges
    exp_a = exp_p = None
    if G.orders == (2, 2):
        exp_a, exp_p = 3 * E + 1, 3 * E
    elif G.orders == (2,):
        exp_a, exp_p = E + 1, E
    return DimensionReport(T, G, affine, projective, E, exp_a, exp_p)


def fiber_cardinality(T, G: AbelianGroup, limit: int | None = None):
    """Generic size of a fiber of the projective parametrization on the dense torus.

    It is the index of the degree-zero vertex lattice in its saturation.
    """
    T = as_tree(T)
    L = build_polytope(T, G, limit).degree_zero_lattice
    if L.rank == 0:
        return 1
    return lattice.index_in(L, lattice.saturate(L))
