"""Finite abelian groups presented as products of cyclic groups.

Elements are plain tuples of residues.  For a one-factor group a bare ``int``
is accepted wherever an element is expected and is promoted to a 1-tuple.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import gcd, prod
from typing import Iterable, Sequence, Union

from .errors import DomainError, InvalidElementError

GroupElement = tuple[int, ...]
ElementLike = Union[GroupElement, Sequence[int], int]


@dataclass(frozen=True)
class AbelianGroup:
    """The group Z_{n1} x ... x Z_{nk}; ``orders == ()`` is the trivial group."""

    orders: tuple[int, ...] = ()

    def __post_init__(self):
        orders = tuple(int(n) for n in self.orders)
        if any(n < 2 for n in orders):
            raise DomainError(f"cyclic factor orders must be >= 2, got {orders}")
        object.__setattr__(self, "orders", orders)

    @classmethod
    def parse(cls, text: str) -> "AbelianGroup":
        """Parse the comma-separated factor list used on the command line, e.g. ``"2,2"``."""
        text = text.strip()
        if text in ("", "1", "trivial"):
            return cls(())
        try:
            return cls(tuple(int(tok) for tok in text.split(",")))
        except ValueError as exc:
            raise DomainError(f"cannot parse group {text!r}") from exc

    def __str__(self):
        return ",".join(map(str, self.orders)) if self.orders else "1"

    def __len__(self):
        return prod(self.orders)

    @property
    def order(self) -> int:
        return prod(self.orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def exponent(self) -> int:
        e = 1
        for n in self.orders:
            e = e * n // gcd(e, n)
        return e

    @property
    def zero(self) -> GroupElement:
        return (0,) * len(self.orders)

    @cached_property
    def elements(self) -> tuple[GroupElement, ...]:
        """All elements, lexicographic in the residues; the neutral element comes first."""
        return tuple(itertools.product(*(range(n) for n in self.orders)))

    @cached_property
    def _positions(self) -> dict[GroupElement, int]:
        return {a: i for i, a in enumerate(self.elements)}

    def index(self, a: ElementLike) -> int:
        """Position of ``a`` in :attr:`elements`."""
        return self._positions[self.element(a)]

    def element(self, a: ElementLike) -> GroupElement:
        """Validate ``a`` and return it as a residue tuple."""
        if isinstance(a, int):
            a = (a,)
        a = tuple(int(x) for x in a)
        if len(a) != len(self.orders):
            raise InvalidElementError(
                f"element {a} has {len(a)} residues, group {self} has {len(self.orders)} factors")
        for x, n in zip(a, self.orders):
            if not 0 <= x < n:
                raise InvalidElementError(f"residue {x} out of range for Z_{n}")
        return a

    def combine(self, a: ElementLike, b: ElementLike, sign: int = 1) -> GroupElement:
        """``a + sign*b``."""
        if sign not in (1, -1):
            raise DomainError("sign must be +1 or -1")
        a, b = self.element(a), self.element(b)
        return tuple((x + sign * y) % n for x, y, n in zip(a, b, self.orders))

    def negate(self, a: ElementLike) -> GroupElement:
        return self.combine(self.zero, a, -1)

    def sum(self, items: Iterable[ElementLike]) -> GroupElement:
        total = [0] * len(self.orders)
        for a in items:
            a = self.element(a)
            for i, x in enumerate(a):
                total[i] += x
        return tuple(t % n for t, n in zip(total, self.orders))

    def scale(self, k: int, a: ElementLike) -> GroupElement:
        a = self.element(a)
        return tuple((k * x) % n for x, n in zip(a, self.orders))

    def element_order(self, a: ElementLike) -> int:
        a = self.element(a)
        o = 1
        for x, n in zip(a, self.orders):
            m = n // gcd(x, n)
            o = o * m // gcd(o, m)
        return o


def group_combine(G: AbelianGroup, a: ElementLike, b: ElementLike, sign: int = 1) -> GroupElement:
    return G.combine(a, b, sign)


def enumerate_elements(G: AbelianGroup) -> list[GroupElement]:
    return list(G.elements)


@dataclass(frozen=True)
class GroupMorphism:
    """A homomorphism fixed by the images of the standard generators of ``domain``."""

    domain: AbelianGroup
    codomain: AbelianGroup
    images: tuple[GroupElement, ...]

    def __post_init__(self):
        images = tuple(self.codomain.element(b) for b in self.images)
        if len(images) != self.domain.rank:
            raise DomainError(
                f"need {self.domain.rank} generator images, got {len(images)}")
        for n, b in zip(self.domain.orders, images):
            if n % self.codomain.element_order(b):
                raise DomainError(
                    f"image {b} has order {self.codomain.element_order(b)}, "
                    f"which does not divide the generator order {n}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, G: AbelianGroup) -> "GroupMorphism":
        gens = [tuple(int(i == j) for j in range(G.rank)) for i in range(G.rank)]
        return cls(G, G, tuple(gens))

    def __call__(self, a: ElementLike) -> GroupElement:
        a = self.domain.element(a)
        out = self.codomain.zero
        for k, b in zip(a, self.images):
            out = self.codomain.combine(out, self.codomain.scale(k, b))
        return out


def apply_morphism(m: GroupMorphism, a: ElementLike) -> GroupElement:
    return m(a)


def all_morphisms(G1: AbelianGroup, G2: AbelianGroup) -> list[GroupMorphism]:
    """Every homomorphism G1 -> G2, in lexicographic order of the generator images."""
    choices = [[b for b in G2.elements if n % G2.element_order(b) == 0] for n in G1.orders]
    return [GroupMorphism(G1, G2, imgs) for imgs in itertools.product(*choices)]


Z2 = AbelianGroup((2,))
Z3 = AbelianGroup((3,))
Z4 = AbelianGroup((4,))
KIMURA3 = AbelianGroup((2, 2))


def kimura_projections() -> tuple[GroupMorphism, GroupMorphism, GroupMorphism]:
    """The three surjections Z2xZ2 -> Z2: (a,b) -> a, (a,b) -> b, (a,b) -> a+b."""
    return (
        GroupMorphism(KIMURA3, Z2, ((1,), (0,))),
        GroupMorphism(KIMURA3, Z2, ((0,), (1,))),
        GroupMorphism(KIMURA3, Z2, ((1,), (1,))),
    )
