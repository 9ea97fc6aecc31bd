"""Exact integer lattice algebra.

Sublattices of Z^n are kept as canonical row-style Hermite normal forms, so
two sublattices are equal exactly when their bases are equal.

Arithmetic runs on int64 numpy arrays while every row operation can be
proved overflow free; the first time a bound check fails the whole
computation is restarted on object arrays holding Python integers.  Results
never depend on which path ran.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd, inf, prod
from typing import Iterable, Sequence

import numpy as np

from .errors import ContainmentError, DomainError

INFINITE = inf

_LIMIT = 1 << 62


class _Overflow(Exception):
    pass


def _maxabs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(int(x)) for x in a.flat)
    return int(np.abs(a).max())


def as_int_array(rows, ncols: int | None = None) -> np.ndarray:
    """Exact 2-d integer array: int64 when every entry fits, object otherwise."""
    if isinstance(rows, np.ndarray) and rows.ndim == 2:
        if rows.dtype == object:
            try:
                return rows.astype(np.int64) if _maxabs(rows) < _LIMIT else rows
            except OverflowError:
                return rows
        if rows.dtype.kind in "iub":
            return rows.astype(np.int64)
        raise TypeError(f"integer matrix expected, got dtype {rows.dtype}")
    rows = [list(r) for r in rows]
    if not rows:
        return np.zeros((0, ncols or 0), dtype=np.int64)
    try:
        arr = np.array(rows, dtype=np.int64)
        if arr.size and _maxabs(arr) >= _LIMIT:
            raise OverflowError
        return arr
    except OverflowError:
        return np.array([[int(x) for x in r] for r in rows], dtype=object)


def _to_object(a: np.ndarray) -> np.ndarray:
    out = np.empty(a.shape, dtype=object)
    out[...] = [[int(x) for x in row] for row in a] if a.ndim == 2 else [int(x) for x in a]
    return out


def _guard(a: np.ndarray, *bounds: int):
    if a.dtype != object and sum(bounds) >= _LIMIT:
        raise _Overflow


def _with_fallback(fn, *arrays):
    if all(a.dtype != object for a in arrays):
        try:
            return fn(*arrays)
        except _Overflow:
            pass
    return fn(*(_to_object(a) for a in arrays))


def matmul(A, B) -> np.ndarray:
    """Exact product of two integer matrices."""
    A, B = as_int_array(A), as_int_array(B)
    if A.shape[1] != B.shape[0]:
        raise DomainError(f"shape mismatch {A.shape} @ {B.shape}")

    def run(X, Y):
        if X.dtype != object and _maxabs(X) * _maxabs(Y) * max(X.shape[1], 1) >= _LIMIT:
            raise _Overflow
        return X @ Y

    return _with_fallback(run, A, B)


def _hnf_inplace(A: np.ndarray) -> np.ndarray:
    """Row-style HNF by Euclidean row reduction, reducing above each pivot as it is found."""
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            col = A[r:, c]
            nz = np.flatnonzero(col)
            if nz.size == 0:
                break
            k = nz[np.argmin(np.abs(col[nz]))] if col.dtype != object else \
                min(nz, key=lambda i: abs(col[i]))
            if k:
                A[[r, r + k]] = A[[r + k, r]]
            p = A[r, c]
            rest = np.flatnonzero(A[r + 1:, c]) + r + 1
            if rest.size == 0:
                break
            q = A[rest, c] // p
            _guard(A, _maxabs(q) * _maxabs(A[r]), _maxabs(A[rest]))
            A[rest] -= q[:, None] * A[r]
        if r == m or A[r, c] == 0:
            continue
        if A[r, c] < 0:
            A[r] = -A[r]
        p = A[r, c]
        if r:
            q = A[:r, c] // p
            hit = np.flatnonzero(q)
            if hit.size:
                _guard(A, _maxabs(q[hit]) * _maxabs(A[r]), _maxabs(A[hit]))
                A[hit] -= q[hit, None] * A[r]
        r += 1
    return A[:r]


def hnf_array(M) -> np.ndarray:
    """Nonzero rows of the Hermite normal form of ``M`` (rows span the same lattice)."""
    M = as_int_array(M)
    return _with_fallback(lambda X: _hnf_inplace(X.copy()), M)


def _kernel_array(A: np.ndarray) -> np.ndarray:
    m, k = A.shape
    ident = np.eye(m, dtype=A.dtype) if A.dtype != object else _to_object(np.eye(m, dtype=np.int64))
    H = hnf_array(np.hstack([A, ident]))
    if H.dtype == object:
        zero = np.array([all(x == 0 for x in row[:k]) for row in H], dtype=bool)
    else:
        zero = ~H[:, :k].any(axis=1) if k else np.ones(len(H), dtype=bool)
    return H[zero, k:]


def _freeze(arr: np.ndarray) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in arr)


@dataclass(frozen=True)
class Sublattice:
    """A sublattice of Z^ambient given by its canonical HNF basis rows."""

    ambient: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def span(cls, rows, ambient: int | None = None) -> "Sublattice":
        """Lattice generated by arbitrary integer rows."""
        arr = as_int_array(rows, ambient)
        if ambient is None:
            if arr.ndim != 2 or (arr.shape[0] == 0 and arr.shape[1] == 0):
                raise DomainError("ambient dimension required for an empty generating set")
            ambient = arr.shape[1]
        if arr.shape[0] and arr.shape[1] != ambient:
            raise DomainError(f"rows have length {arr.shape[1]}, ambient is {ambient}")
        if arr.shape[0] == 0:
            return cls(ambient, ())
        return cls(ambient, _freeze(hnf_array(arr)))

    @classmethod
    def full(cls, n: int) -> "Sublattice":
        return cls(n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> "Sublattice":
        return cls(n, ())

    @property
    def rank(self) -> int:
        return len(self.basis)

    @cached_property
    def matrix(self) -> np.ndarray:
        return as_int_array(self.basis, self.ambient)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(row) if x) for row in self.basis)

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def __le__(self, other: "Sublattice") -> bool:
        return is_sublattice(self, other)

    def __add__(self, other: "Sublattice") -> "Sublattice":
        return lattice_sum([self, other])

    def coordinates(self, vectors) -> np.ndarray:
        """Coefficients expressing each row of ``vectors`` in this basis.

        Raises :class:`ContainmentError` if some row is not in the lattice.
        """
        V = as_int_array(vectors, self.ambient)
        if V.shape[0] and V.shape[1] != self.ambient:
            raise DomainError(f"vectors have length {V.shape[1]}, ambient is {self.ambient}")
        coords, rem = _with_fallback(self._solve, V, self.matrix)
        if rem:
            raise ContainmentError(f"{len(rem)} vector(s) outside the lattice, first: row {rem[0]}")
        return coords

    def _solve(self, V, B):
        V = V.copy()
        C = np.zeros((V.shape[0], len(B)), dtype=V.dtype)
        if C.dtype == object:
            C[...] = 0
        for j, (row, c) in enumerate(zip(B, self.pivots)):
            q = V[:, c] // row[c]
            hit = np.flatnonzero(q)
            if hit.size:
                _guard(V, _maxabs(q[hit]) * _maxabs(row), _maxabs(V[hit]))
                V[hit] -= q[hit, None] * row
            C[:, j] = q
        # a leftover entry in a pivot column means the pivot did not divide it
        if V.dtype == object:
            rem = [i for i, row in enumerate(V) if any(x != 0 for x in row)]
        else:
            rem = list(np.flatnonzero(V.any(axis=1))) if V.size else []
        return C, rem

    def to_json(self) -> dict:
        return {"ambient": self.ambient, "basis": [list(r) for r in self.basis]}

    @classmethod
    def from_json(cls, data: dict) -> "Sublattice":
        return cls.span(data["basis"], data["ambient"])


def hnf(A) -> Sublattice:
    """Canonical basis of the row span of ``A``."""
    A = as_int_array(A)
    return Sublattice.span(A, A.shape[1])


def kernel_of(A) -> Sublattice:
    """The (saturated) lattice ``{x : x A = 0}`` inside Z^rows(A)."""
    A = as_int_array(A)
    m = A.shape[0]
    if m == 0:
        return Sublattice.zero(0)
    return Sublattice(m, _freeze(_kernel_array(A)))


def saturate(L: Sublattice) -> Sublattice:
    """``{x : k x in L for some k >= 1}``, computed as the kernel of a kernel."""
    n = L.ambient
    if L.rank == 0:
        return Sublattice.zero(n)
    if L.rank == n:
        return Sublattice.full(n)
    perp = kernel_of(L.matrix.T)
    return kernel_of(perp.matrix.T)


def is_saturated(L: Sublattice) -> bool:
    return saturate(L) == L


def contains(L: Sublattice, v) -> bool:
    v = list(v)
    if len(v) != L.ambient:
        raise DomainError(f"vector of length {len(v)} tested against ambient {L.ambient}")
    if L.rank == 0:
        return not any(v)
    _, rem = _with_fallback(L._solve, as_int_array([v]), L.matrix)
    return not rem


def is_sublattice(L: Sublattice, M: Sublattice) -> bool:
    if L.ambient != M.ambient:
        raise DomainError(f"ambient mismatch {L.ambient} vs {M.ambient}")
    if L.rank == 0:
        return True
    if M.rank == 0:
        return False
    _, rem = _with_fallback(M._solve, L.matrix, M.matrix)
    return not rem


def lattice_sum(Ls: Sequence[Sublattice]) -> Sublattice:
    Ls = list(Ls)
    if not Ls:
        raise DomainError("lattice_sum of an empty list")
    n = Ls[0].ambient
    if any(L.ambient != n for L in Ls):
        raise DomainError("lattice_sum: ambient dimensions differ")
    acc = Ls[0]
    for L in Ls[1:]:
        if L.rank == 0 or L == acc:
            continue
        if acc.rank == 0:
            acc = L
            continue
        acc = Sublattice(n, _freeze(hnf_array(_stack(acc.matrix, L.matrix))))
    return acc


def _stack(*arrays) -> np.ndarray:
    if any(a.dtype == object for a in arrays):
        arrays = [a if a.dtype == object else _to_object(a) for a in arrays]
    return np.vstack(arrays)


def image(L: Sublattice, A) -> Sublattice:
    """The lattice ``{x A : x in L}``."""
    A = as_int_array(A)
    if A.shape[0] != L.ambient:
        raise DomainError(f"map has {A.shape[0]} rows, lattice ambient is {L.ambient}")
    if L.rank == 0:
        return Sublattice.zero(A.shape[1])
    return Sublattice.span(matmul(L.matrix, A), A.shape[1])


def restricted_kernel(L: Sublattice, A) -> Sublattice:
    """``{x in L : x A = 0}``."""
    A = as_int_array(A)
    if A.shape[0] != L.ambient:
        raise DomainError(f"map has {A.shape[0]} rows, lattice ambient is {L.ambient}")
    if L.rank == 0:
        return L
    coeffs = kernel_of(matmul(L.matrix, A))
    if coeffs.rank == 0:
        return Sublattice.zero(L.ambient)
    return Sublattice.span(matmul(coeffs.matrix, L.matrix), L.ambient)


def intersection(L: Sublattice, M: Sublattice) -> Sublattice:
    """``L ∩ M``, via the relations between the two bases."""
    if L.ambient != M.ambient:
        raise DomainError("intersection: ambient dimensions differ")
    if L.rank == 0 or M.rank == 0:
        return Sublattice.zero(L.ambient)
    rel = kernel_of(_stack(L.matrix, -M.matrix))
    if rel.rank == 0:
        return Sublattice.zero(L.ambient)
    return Sublattice.span(matmul(rel.matrix[:, :L.rank], L.matrix), L.ambient)


def preimage(M: Sublattice, A, domain: Sublattice | None = None) -> Sublattice:
    """``{x in domain : x A in M}``; ``domain`` defaults to all of Z^rows(A)."""
    A = as_int_array(A)
    dom = Sublattice.full(A.shape[0]) if domain is None else domain
    if M.rank == 0:
        return restricted_kernel(dom, A)
    # x A = y B_M  <=>  (x, -y) [A ; B_M] = 0, with x ranging over dom
    D = matmul(dom.matrix, A)
    rel = kernel_of(_stack(D, M.matrix))
    if rel.rank == 0:
        return Sublattice.zero(A.shape[0])
    return Sublattice.span(matmul(rel.matrix[:, :dom.rank], dom.matrix), A.shape[0])


def elementary_divisors(C) -> list[int]:
    """Nonzero diagonal of the Smith normal form of ``C``."""
    C = as_int_array(C)
    if C.size == 0:
        return []
    M = hnf_array(C)
    while True:
        T = hnf_array(M.T)
        M = hnf_array(T.T)
        diag = len(M) == len(T) and all(
            not any(M[i, j] for j in range(M.shape[1]) if j != i) for i in range(len(M)))
        if diag:
            break
    d = [abs(int(M[i, i])) for i in range(len(M))]
    # enforce the divisibility chain d_1 | d_2 | ...
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            d[i], d[j] = g, d[i] * d[j] // g if g else 0
    return d


def index_in(L: Sublattice, M: Sublattice):
    """``[M : L]`` for ``L ⊆ M``; :data:`INFINITE` when ``rank L < rank M``."""
    if L.ambient != M.ambient:
        raise DomainError("index_in: ambient dimensions differ")
    if not is_sublattice(L, M):
        raise ContainmentError("index_in requires L to be contained in M")
    if L.rank < M.rank:
        return INFINITE
    if M.rank == 0:
        return 1
    C = M.coordinates(L.matrix)
    return prod(elementary_divisors(C))


def saturation_index(L: Sublattice):
    return index_in(L, saturate(L))


def degree_zero_basis(n: int) -> np.ndarray:
    """Basis ``e_i - e_0`` (i >= 1) of the coordinate-sum-zero sublattice of Z^n."""
    B = np.zeros((max(n - 1, 0), n), dtype=np.int64)
    if n > 1:
        B[:, 0] = -1
        B[np.arange(n - 1), np.arange(1, n)] = 1
    return B


def block_degree_matrix(blocks: int, size: int) -> np.ndarray:
    """Column ``b`` sums the coordinates of block ``b`` (blocks of equal ``size``)."""
    D = np.zeros((blocks * size, blocks), dtype=np.int64)
    for b in range(blocks):
        D[b * size:(b + 1) * size, b] = 1
    return D


def direct_sum(Ls: Iterable[Sublattice]) -> Sublattice:
    """Block-diagonal product of sublattices."""
    Ls = list(Ls)
    n = sum(L.ambient for L in Ls)
    rows, off = [], 0
    for L in Ls:
        for r in L.basis:
            rows.append([0] * off + list(r) + [0] * (n - off - L.ambient))
        off += L.ambient
    return Sublattice.span(rows, n)


def rank_of(A) -> int:
    return len(hnf_array(A))
