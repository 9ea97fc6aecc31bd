"""Rooted leaf-labelled trees, edge contraction and the refinement order.

A tree is stored as a nested tuple: a leaf is its integer label, an inner
vertex is the tuple of its children.  Children are kept sorted by their
smallest descendant leaf, which makes the depth-first pre-order of vertices
(and hence of edges) canonical.  Edge ``i`` always ends at vertex ``i + 1``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Union

from .errors import DomainError, TreeParseError

Shape = Union[int, tuple]

MAX_ENUMERATION_LEAVES = 7


def _min_leaf(node: Shape) -> int:
    if isinstance(node, int):
        return node
    return min(_min_leaf(c) for c in node)


def _canonical(node: Shape) -> Shape:
    if isinstance(node, int):
        return node
    kids = [_canonical(c) for c in node]
    return tuple(sorted(kids, key=_min_leaf))


def _serialize(node: Shape) -> str:
    if isinstance(node, int):
        return str(node)
    return "(" + ",".join(_serialize(c) for c in node) + ")"


class Edge(NamedTuple):
    index: int
    parent: int
    child: int


@dataclass(frozen=True)
class Tree:
    """A rooted tree with leaves labelled ``1..l``.

    Use :func:`parse_tree` or :func:`claw_tree` rather than building the
    nested shape by hand; the constructor canonicalises and validates.
    """

    shape: tuple

    def __post_init__(self):
        if isinstance(self.shape, int):
            raise TreeParseError("a tree needs an inner root vertex")
        object.__setattr__(self, "shape", _canonical(self.shape))
        self._validate()

    def _validate(self):
        labels = []

        def walk(node, is_root):
            if isinstance(node, int):
                labels.append(node)
                return
            if len(node) < 2:
                where = "root" if is_root else f"inner vertex {_serialize(node)}"
                raise TreeParseError(
                    f"{where} has degree {len(node) + (0 if is_root else 1)}; "
                    "degree-2 inner vertices are not allowed")
            for c in node:
                walk(c, False)

        walk(self.shape, True)
        seen = set()
        for a in labels:
            if a in seen:
                raise TreeParseError(f"duplicate leaf label {a}")
            seen.add(a)
        missing = sorted(set(range(1, len(labels) + 1)) - seen)
        if missing:
            raise TreeParseError(
                f"leaf labels must be 1..{len(labels)}; missing {missing}, "
                f"unexpected {sorted(seen - set(range(1, len(labels) + 1)))}")

    def __str__(self):
        return _serialize(self.shape)

    def __repr__(self):
        return f"Tree({str(self)!r})"

    @cached_property
    def _layout(self):
        parent, children, label = [], [], []

        def visit(node, par):
            v = len(parent)
            parent.append(par)
            children.append([])
            if par >= 0:
                children[par].append(v)
            if isinstance(node, int):
                label.append(node)
            else:
                label.append(None)
                for c in node:
                    visit(c, v)

        visit(self.shape, -1)
        return tuple(parent), tuple(tuple(c) for c in children), tuple(label)

    @property
    def parent(self) -> tuple[int, ...]:
        return self._layout[0]

    @property
    def children(self) -> tuple[tuple[int, ...], ...]:
        return self._layout[1]

    @property
    def leaf_label(self) -> tuple:
        """Label of each vertex, ``None`` for inner vertices."""
        return self._layout[2]

    @property
    def n_vertices(self) -> int:
        return len(self.parent)

    @cached_property
    def n_leaves(self) -> int:
        return sum(1 for a in self.leaf_label if a is not None)

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(range(1, self.n_leaves + 1))

    @cached_property
    def nodes(self) -> tuple[int, ...]:
        """Inner vertices in pre-order; the root is node 0."""
        return tuple(v for v, a in enumerate(self.leaf_label) if a is None)

    @property
    def n_edges(self) -> int:
        return self.n_vertices - 1

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(Edge(v - 1, self.parent[v], v) for v in range(1, self.n_vertices))

    def edge(self, e: Union[int, Edge]) -> Edge:
        i = e.index if isinstance(e, Edge) else int(e)
        if not 0 <= i < self.n_edges:
            raise DomainError(f"edge index {i} out of range for {self}")
        return self.edges[i]

    def is_pendant(self, e: Union[int, Edge]) -> bool:
        return self.leaf_label[self.edge(e).child] is not None

    @cached_property
    def inner_edges(self) -> tuple[int, ...]:
        return tuple(e.index for e in self.edges if self.leaf_label[e.child] is None)

    @cached_property
    def pendant_edges(self) -> tuple[int, ...]:
        """Pendant edge index of each leaf, ordered by label."""
        out = [0] * self.n_leaves
        for e in self.edges:
            a = self.leaf_label[e.child]
            if a is not None:
                out[a - 1] = e.index
        return tuple(out)

    def pendant_edge(self, label: int) -> int:
        return self.pendant_edges[label - 1]

    @cached_property
    def below(self) -> tuple[frozenset, ...]:
        """Leaf labels of the subtree hanging from each edge."""
        sets = [frozenset()] * self.n_vertices
        for v in reversed(range(self.n_vertices)):
            a = self.leaf_label[v]
            if a is not None:
                sets[v] = frozenset((a,))
            else:
                sets[v] = frozenset().union(*(sets[c] for c in self.children[v]))
        return tuple(sets[v] for v in range(1, self.n_vertices))

    def split(self, e: Union[int, Edge]) -> frozenset:
        """The bipartition cut by edge ``e``, as its side avoiding leaf 1."""
        side = self.below[self.edge(e).index]
        return side if 1 not in side else frozenset(self.labels) - side

    @cached_property
    def splits(self) -> frozenset:
        return frozenset(self.split(e) for e in range(self.n_edges))

    @cached_property
    def inner_splits(self) -> frozenset:
        return frozenset(s for s in self.splits if 2 <= len(s) <= self.n_leaves - 2)

    @property
    def n_topological_edges(self) -> int:
        """Edge count of the underlying unrooted tree (a degree-2 root is suppressed)."""
        return len(self.splits)

    @property
    def is_claw(self) -> bool:
        return not self.inner_splits

    def same_topology(self, other: "Tree") -> bool:
        return self.n_leaves == other.n_leaves and self.splits == other.splits

    def to_json(self) -> str:
        return str(self)


_TOKEN = re.compile(r"\s*(?:(\()|(\))|(,)|(\d+)|(\S))")


def parse_tree(text: str) -> Tree:
    """Parse a parenthesised leaf-label expression such as ``"((1,2),3,4)"``."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(5):
            raise TreeParseError(f"unexpected token {m.group(5)!r} at position {m.start(5)}")
        tokens.append((m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    if not tokens:
        raise TreeParseError("empty tree text")

    i = 0

    def expect_node():
        nonlocal i
        if i >= len(tokens):
            raise TreeParseError("unexpected end of input; unbalanced parentheses")
        tok, at = tokens[i]
        if tok.isdigit():
            i += 1
            label = int(tok)
            if label < 1:
                raise TreeParseError(f"leaf label {tok!r} at position {at} must be positive")
            return label
        if tok != "(":
            raise TreeParseError(f"unexpected token {tok!r} at position {at}")
        i += 1
        kids = [expect_node()]
        while True:
            if i >= len(tokens):
                raise TreeParseError(f"unbalanced parentheses: '(' at position {at} never closed")
            tok2, at2 = tokens[i]
            i += 1
            if tok2 == ",":
                kids.append(expect_node())
            elif tok2 == ")":
                break
            else:
                raise TreeParseError(f"unexpected token {tok2!r} at position {at2}")
        if len(kids) < 2:
            raise TreeParseError(
                f"group opened at position {at} has a single child; degree-2 inner vertices are not allowed")
        return tuple(kids)

    shape = expect_node()
    if i != len(tokens):
        tok, at = tokens[i]
        raise TreeParseError(f"trailing token {tok!r} at position {at}; unbalanced parentheses")
    if isinstance(shape, int):
        raise TreeParseError("a tree needs an inner root vertex")
    return Tree(shape)


def as_tree(t: Union[Tree, str]) -> Tree:
    return t if isinstance(t, Tree) else parse_tree(t)


def claw_tree(l: int) -> Tree:
    """K_{1,l}: one inner vertex (the root) and ``l`` pendant edges."""
    if l < 3:
        raise DomainError(f"claw tree needs at least 3 leaves, got {l}")
    return Tree(tuple(range(1, l + 1)))


def contract_edge(T: Tree, e: Union[int, Edge]) -> Tree:
    """Merge the two endpoints of an inner edge."""
    edge = T.edge(e)
    if T.leaf_label[edge.child] is not None:
        raise DomainError(f"edge {edge.index} of {T} is pendant; only inner edges contract")

    def rebuild(v):
        a = T.leaf_label[v]
        if a is not None:
            return a
        kids = []
        for c in T.children[v]:
            if c == edge.child:
                kids.extend(rebuild(g) for g in T.children[c])
            else:
                kids.append(rebuild(c))
        return tuple(kids)

    return Tree(rebuild(0))


def leq(T1: Tree, T2: Tree) -> bool:
    """True iff ``T1`` arises from ``T2`` by contracting inner edges.

    A tree is determined by its set of splits and contraction deletes exactly
    one split, so this is split-set inclusion.
    """
    if T1.n_leaves != T2.n_leaves:
        raise DomainError(f"leaf sets differ: {T1} has {T1.n_leaves} leaves, {T2} has {T2.n_leaves}")
    return T1.splits <= T2.splits


def tree_from_splits(l: int, splits, root_leaf: int | None = None) -> Tree:
    """Build the tree with the given splits, rooted at the neighbour of ``root_leaf`` (default ``l``)."""
    root_leaf = l if root_leaf is None else root_leaf
    everything = frozenset(range(1, l + 1))
    clusters = set()
    for s in splits:
        s = frozenset(s)
        side = s if root_leaf not in s else everything - s
        if 2 <= len(side) <= l - 2:
            clusters.add(side)
    clusters |= {frozenset((a,)) for a in everything if a != root_leaf}
    ordered = sorted(clusters, key=len, reverse=True)

    def build(cluster):
        if len(cluster) == 1:
            return next(iter(cluster))
        kids, covered = [], set()
        for c in ordered:
            if c < cluster and not (c & covered):
                kids.append(build(c))
                covered |= c
        return tuple(kids)

    top, covered = [root_leaf], set()
    for c in ordered:
        if not (c & covered):
            top.append(build(c))
            covered |= c
    return Tree(tuple(top))


def reroot(T: Tree, vertex: int) -> Tree:
    """The same unrooted tree, rooted at inner vertex ``vertex`` (a pre-order index of ``T``)."""
    if T.leaf_label[vertex] is not None:
        raise DomainError("cannot root a tree at a leaf")
    adj = [[] for _ in range(T.n_vertices)]
    for e in T.edges:
        adj[e.parent].append(e.child)
        adj[e.child].append(e.parent)

    def build(v, came_from):
        a = T.leaf_label[v]
        if a is not None:
            return a
        kids = [build(w, v) for w in adj[v] if w != came_from]
        if len(kids) == 1:
            # a degree-2 root of T becomes an ordinary vertex: suppress it
            return kids[0]
        return tuple(kids)

    return Tree(build(vertex, -1))


def _compatible(a: frozenset, b: frozenset) -> bool:
    return a <= b or b <= a or not (a & b)


def enumerate_topologies(l: int) -> list[Tree]:
    """All leaf-labelled trees on ``l`` leaves without degree-2 vertices.

    Each topology appears once, rooted at the neighbour of leaf ``l``.  The
    claw comes first; then trees are ordered by inner-edge count and split list.
    """
    if not 3 <= l <= MAX_ENUMERATION_LEAVES:
        raise DomainError(f"topology enumeration supports 3 <= l <= {MAX_ENUMERATION_LEAVES}, got {l}")
    # nontrivial splits, each as the side avoiding leaf 1
    rest = range(2, l + 1)
    candidates = []
    for mask in range(1, 1 << (l - 1)):
        side = frozenset(a for i, a in enumerate(rest) if mask >> i & 1)
        if 2 <= len(side) <= l - 2:
            candidates.append(side)
    candidates.sort(key=lambda s: (len(s), sorted(s)))

    families = []

    def extend(start, chosen):
        families.append(tuple(chosen))
        for j in range(start, len(candidates)):
            c = candidates[j]
            if all(_compatible(c, d) for d in chosen):
                chosen.append(c)
                extend(j + 1, chosen)
                chosen.pop()

    extend(0, [])

    def key(fam):
        return (len(fam), sorted(tuple(sorted(s)) for s in fam))

    families.sort(key=key)
    return [tree_from_splits(l, fam) for fam in families]
