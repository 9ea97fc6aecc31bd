"""Fibers of the monomial map and bounded-degree generation checks.

A monomial of degree d in the socket coordinates is a sorted tuple of d
socket indices.  Its fiber is the set of monomials with the same sum of
vertex vectors.  A binomial ideal is generated by a move set exactly when
every fiber is connected under the moves; here that is tested for all
fibers up to a fixed degree, so a positive answer is bounded-degree evidence.
"""
from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

import numpy as np

from ..errors import DomainError, ResourceLimitError
from ..groups import AbelianGroup
from ..model import check_size, enumerate_sockets, network_of_socket, vertex_matrix
from ..trees import Tree, as_tree, leq

DEFAULT_MAX_MONOMIALS = 200_000

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class FiberSpec:
    tree: Tree
    group: AbelianGroup
    degree: int
    target: tuple[int, ...]

    @classmethod
    def from_sockets(cls, T, G: AbelianGroup, sockets: Sequence[int]) -> "FiberSpec":
        """The fiber through the monomial with the given socket indices."""
        T = as_tree(T)
        V = vertex_matrix(T, G)
        u = V[list(sockets)].sum(axis=0)
        return cls(T, G, len(sockets), tuple(int(x) for x in u))


def _key(v: np.ndarray) -> bytes:
    return np.ascontiguousarray(v, dtype=np.int64).tobytes()


def enumerate_fiber_indices(spec: FiberSpec) -> list[Monomial]:
    T, G, d = as_tree(spec.tree), spec.group, spec.degree
    V = vertex_matrix(T, G)
    u = np.asarray(spec.target, dtype=np.int64)
    if u.shape != (V.shape[1],):
        raise DomainError(f"target has length {len(spec.target)}, M_E has dimension {V.shape[1]}")
    k = G.order
    degs = u.reshape(T.n_edges, k).sum(axis=1)
    if d < 0 or (degs != d).any() or (u < 0).any():
        raise DomainError(f"target is not a degree-{d} element: edge degrees {degs.tolist()}")
    out = []

    def extend(start, remaining, chosen):
        if len(chosen) == d:
            if not remaining.any():
                out.append(tuple(chosen))
            return
        for i in range(start, len(V)):
            rest = remaining - V[i]
            if (rest >= 0).all():
                chosen.append(i)
                extend(i, rest, chosen)
                chosen.pop()

    extend(0, u, [])
    return out


def enumerate_fiber(spec: FiberSpec) -> list[tuple]:
    """All multisets of ``degree`` networks whose vertex vectors sum to the target."""
    T, G = as_tree(spec.tree), spec.group
    socks = enumerate_sockets(G, T.n_leaves)
    return [tuple(network_of_socket(T, G, socks[i]) for i in m)
            for m in enumerate_fiber_indices(spec)]


def _multiset_sums(V: np.ndarray, monomials: Sequence[Monomial]) -> np.ndarray:
    idx = np.array(monomials, dtype=np.int64)
    return V[idx].sum(axis=1)


def _submultisets(m: Monomial, k: int):
    seen = set()
    for pos in itertools.combinations(range(len(m)), k):
        P = tuple(m[i] for i in pos)
        if P not in seen:
            seen.add(P)
            rest = list(m)
            for i in reversed(pos):
                del rest[i]
            yield P, tuple(rest)


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass
class DisconnectedFiber:
    degree: int
    members: list[Monomial]
    components: list[list[Monomial]]

    def as_dict(self, sockets=None) -> dict:
        def show(m):
            if sockets is None:
                return list(m)
            return [[list(a) if len(a) != 1 else a[0] for a in sockets[i]] for i in m]
        return {"degree": self.degree,
                "components": [[show(m) for m in comp] for comp in self.components]}


@dataclass
class GenerationResult:
    target: Tree
    group: AbelianGroup
    sources: list[Tree]
    move_degree: int
    test_degree: int
    verdict: bool
    fibers_checked: int
    disconnected: list[DisconnectedFiber] = field(default_factory=list)

    @property
    def witness(self) -> DisconnectedFiber | None:
        return self.disconnected[0] if self.disconnected else None

    def as_dict(self) -> dict:
        return {
            "target": str(self.target),
            "group": str(self.group),
            "sources": [str(T) for T in self.sources],
            "move_degree": self.move_degree,
            "test_degree": self.test_degree,
            "fibers_checked": self.fibers_checked,
            "disconnected_fibers": len(self.disconnected),
            "bounded_degree_evidence": True,
        }


def _bucket(V: np.ndarray, monomials: list[Monomial]) -> dict[bytes, list[Monomial]]:
    out = defaultdict(list)
    if not monomials:
        return out
    for m, s in zip(monomials, _multiset_sums(V, monomials)):
        out[_key(s)].append(m)
    return out


def check_generation(target, G: AbelianGroup, sources: Sequence, move_degree: int = 2,
                     test_degree: int = 3, limit: int | None = None,
                     max_monomials: int = DEFAULT_MAX_MONOMIALS) -> GenerationResult:
    """Are all target fibers of degree <= ``test_degree`` connected by the source moves?

    A move is a pair of monomials of degree <= ``move_degree`` with equal
    vertex sum on some source tree; it applies to a monomial containing its
    first side, replacing it by the second.
    """
    target = as_tree(target)
    sources = [as_tree(T) for T in sources]
    if not sources:
        raise DomainError("at least one source tree is required")
    for T in sources:
        if not leq(target, T):
            raise DomainError(f"source {T} does not refine target {target}")
    if not 1 <= move_degree <= test_degree:
        raise DomainError("need 1 <= move_degree <= test_degree")
    check_size(G, target.n_leaves, limit)
    Vt = vertex_matrix(target, G)
    N = len(Vt)
    total = sum(comb(N + d - 1, d) for d in range(1, test_degree + 1))
    if total > max_monomials:
        raise ResourceLimitError(f"{total} monomials up to degree {test_degree}, limit {max_monomials}")

    Vs = [vertex_matrix(T, G) for T in sources]
    moves = {}
    for k in range(2, move_degree + 1):
        monos = list(itertools.combinations_with_replacement(range(N), k))
        moves[k] = [_bucket(V, monos) for V in Vs]

    fibers_checked = 0
    bad = []
    for d in range(2, test_degree + 1):
        monos = list(itertools.combinations_with_replacement(range(N), d))
        fibers = _bucket(Vt, monos)
        # fibers in order of their smallest monomial, so witnesses are reproducible
        for members in sorted(fibers.values(), key=min):
            fibers_checked += 1
            if len(members) == 1:
                continue
            member_set = set(members)
            uf = _UnionFind(members)
            for m in members:
                for k in range(2, min(move_degree, d) + 1):
                    for P, rest in _submultisets(m, k):
                        for V, bucket in zip(Vs, moves[k]):
                            for Q in bucket[_key(V[list(P)].sum(axis=0))]:
                                if Q == P:
                                    continue
                                m2 = tuple(sorted(rest + Q))
                                if m2 not in member_set:
                                    raise AssertionError(
                                        f"move {P}->{Q} leaves the target fiber; inclusion violated")
                                uf.union(m, m2)
            comps = defaultdict(list)
            for m in members:
                comps[uf.find(m)].append(m)
            if len(comps) > 1:
                ordered = sorted((sorted(c) for c in comps.values()), key=lambda c: c[0])
                bad.append(DisconnectedFiber(d, sorted(members), ordered))
    return GenerationResult(target, G, sources, move_degree, test_degree, not bad,
                            fibers_checked, bad)


def replay_disconnected_fiber(target, G: AbelianGroup, sources: Sequence, move_degree: int,
                              components: Sequence[Sequence[Sequence[int]]]) -> bool:
    """Independently confirm a disconnection witness.

    All members must share one vertex sum on the target, and no single move
    of degree <= ``move_degree`` on any source may link two components.
    Moves are tested pairwise by brute force over sub-multisets.
    """
    target = as_tree(target)
    Vt = vertex_matrix(target, G)
    Vs = [vertex_matrix(as_tree(T), G) for T in sources]
    comps = [[tuple(sorted(m)) for m in c] for c in components]
    if len(comps) < 2:
        return False
    members = [m for c in comps for m in c]
    sums = {_key(Vt[list(m)].sum(axis=0)) for m in members}
    if len(sums) != 1:
        return False
    for a, b in itertools.combinations(range(len(comps)), 2):
        for m1 in comps[a]:
            for m2 in comps[b]:
                c1, c2 = Counter(m1), Counter(m2)
                common = c1 & c2
                P = tuple(sorted((c1 - common).elements()))
                Q = tuple(sorted((c2 - common).elements()))
                # the cheapest move from m1 to m2 replaces exactly P by Q;
                # any move that works can be shrunk to it by cancelling shared factors
                if len(P) > move_degree:
                    continue
                for V in Vs:
                    if np.array_equal(V[list(P)].sum(axis=0), V[list(Q)].sum(axis=0)):
                        return False
    return True
