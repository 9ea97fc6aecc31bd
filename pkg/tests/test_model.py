import itertools
from fractions import Fraction

import numpy as np
import pytest

from toricphylo.errors import DomainError, ResourceLimitError
from toricphylo.groups import KIMURA3, Z2, Z3, Z4, AbelianGroup, all_morphisms
from toricphylo.lattice import kernel_of
from toricphylo.model import (
    build_polytope, check_size, edge_projection_matrix, edge_pushforward_matrix,
    enumerate_sockets, evaluate_psi, is_network, network_of_socket, socket_index,
    socket_network_bijection, socket_of_network, socket_pushforward_matrix, vertex_matrix,
    vertex_of_network,
)
from toricphylo.trees import claw_tree, enumerate_topologies, leq, parse_tree, reroot

GROUPS = [Z2, Z3, Z4, KIMURA3]


def small_trees(max_leaves):
    for l in range(3, max_leaves + 1):
        yield from enumerate_topologies(l)


def brute_force_networks(T, G):
    """All edge labellings with zero signed sum at every inner vertex."""
    out = []
    for labels in itertools.product(G.elements, repeat=T.n_edges):
        val = (G.zero,) + labels
        if all(G.sum(val[c] for c in T.children[v]) == val[v] for v in T.nodes):
            out.append(labels)
    return out


def test_claw_three_binary_rows():
    P = build_polytope(claw_tree(3), Z2)
    rows = {tuple(r) for r in P.vertices.tolist()}
    assert rows == {(1, 0, 1, 0, 1, 0), (1, 0, 0, 1, 0, 1),
                    (0, 1, 1, 0, 0, 1), (0, 1, 0, 1, 1, 0)}
    assert P.vertices.shape == (4, 6)


def test_z3_socket_extends_to_network():
    # root of degree two: one inner edge above leaves 2, 3, 4 and a pendant edge to leaf 1
    T = parse_tree("((2,3,4),1)")
    s = ((1,), (1,), (2,), (2,))
    n = network_of_socket(T, Z3, s)
    assert is_network(T, Z3, n)
    inner = T.inner_edges[0]
    assert n[inner] == (2,)
    assert socket_of_network(T, n) == s


def test_sockets_order_and_index():
    socks = enumerate_sockets(Z2, 4)
    assert socks[0] == ((0,),) * 4
    assert socks[7] == ((1,),) * 4
    for i, s in enumerate(enumerate_sockets(KIMURA3, 3)):
        assert socket_index(KIMURA3, s) == i
    with pytest.raises(DomainError):
        socket_index(Z2, [1, 0, 0])


@pytest.mark.parametrize("G", GROUPS, ids=str)
@pytest.mark.parametrize("l", [3, 4, 5, 6])
def test_socket_network_bijection(G, l):
    trees = enumerate_topologies(l)
    if l == 6:
        trees = trees[:: 20]
    for T in trees:
        pairs = socket_network_bijection(T, G)
        assert len({n for _, n in pairs}) == len(pairs) == G.order ** (l - 1)
        for s, n in pairs:
            assert is_network(T, G, n)
            assert socket_of_network(T, n) == s


@pytest.mark.parametrize("G", GROUPS, ids=str)
def test_vertex_rows_match_brute_force_networks(G):
    for T in small_trees(4):
        expected = {tuple(vertex_of_network(T, G, n)) for n in brute_force_networks(T, G)}
        got = {tuple(r) for r in vertex_matrix(T, G).tolist()}
        assert got == expected


@pytest.mark.parametrize("G", [Z2, Z3, KIMURA3], ids=str)
def test_networks_closed_under_addition(G):
    for T in small_trees(4):
        nets = [n for _, n in socket_network_bijection(T, G)]
        for a, b in itertools.product(nets, repeat=2):
            assert is_network(T, G, tuple(G.combine(x, y) for x, y in zip(a, b)))


@pytest.mark.parametrize("G", GROUPS, ids=str)
def test_homogeneity(G):
    for T in small_trees(4):
        V = vertex_matrix(T, G)
        blocks = V.reshape(len(V), T.n_edges, G.order).sum(axis=2)
        assert (blocks == 1).all()
        K = kernel_of(V)
        if K.rank:
            assert (K.matrix.sum(axis=1) == 0).all()


@pytest.mark.parametrize("G1,G2", list(itertools.product(GROUPS, repeat=2)), ids=lambda G: f"Z{G}")
def test_functorial_square(G1, G2):
    for m in all_morphisms(G1, G2):
        for T in small_trees(5):
            P = socket_pushforward_matrix(m, T.n_leaves)
            H = edge_pushforward_matrix(m, T.n_edges)
            assert np.array_equal(vertex_matrix(T, G1) @ H, P @ vertex_matrix(T, G2))


def _column_permutation(T, S, G):
    """Columns of S's matrix in T's edge order, matching edges by split."""
    by_split = {S.split(f): f for f in range(S.n_edges)}
    k = G.order
    cols = []
    for e in range(T.n_edges):
        f = by_split[T.split(e)]
        cols.extend(range(f * k, f * k + k))
    return cols


@pytest.mark.parametrize("G", [Z2, KIMURA3], ids=str)
def test_rerooting_invariance_for_exponent_two(G):
    for T in small_trees(5):
        if len(T.children[0]) == 2:
            continue
        V = vertex_matrix(T, G)
        for v in T.nodes:
            S = reroot(T, v)
            W = vertex_matrix(S, G)[:, _column_permutation(T, S, G)]
            assert sorted(map(tuple, V.tolist())) == sorted(map(tuple, W.tolist()))


def test_rerooting_matters_for_z3():
    T = parse_tree("((1,2),3,4)")
    S = reroot(T, T.children[0][0])
    V = vertex_matrix(T, Z3)
    W = vertex_matrix(S, Z3)[:, _column_permutation(T, S, Z3)]
    assert sorted(map(tuple, V.tolist())) != sorted(map(tuple, W.tolist()))


@pytest.mark.parametrize("G", [Z2, Z3, KIMURA3], ids=str)
def test_projection_compatibility(G):
    for l in (4, 5):
        trees = enumerate_topologies(l)
        for T1, T2 in itertools.product(trees, repeat=2):
            if leq(T1, T2):
                Pi = edge_projection_matrix(T1, T2, G)
                # rows of T2 go to rows of T1 in the same socket order, one to one
                assert np.array_equal(vertex_matrix(T2, G) @ Pi, vertex_matrix(T1, G))


def test_projection_requires_refinement():
    with pytest.raises(DomainError):
        edge_projection_matrix(parse_tree("((1,2),3,4)"), parse_tree("((1,3),2,4)"), Z2)


def test_evaluate_psi_is_the_monomial_map():
    T = parse_tree("((1,2),3,4)")
    G = KIMURA3
    rng = np.random.default_rng(7)
    table = [[Fraction(int(x), int(y)) for x, y in zip(rng.integers(1, 9, 4), rng.integers(1, 9, 4))]
             for _ in range(T.n_edges)]
    values = evaluate_psi(T, G, table)
    flat = [x for row in table for x in row]
    for row, val in zip(vertex_matrix(T, G), values):
        expect = Fraction(1)
        for j in np.flatnonzero(row):
            expect *= flat[j]
        assert val == expect
    mapping = {(e, a): table[e][i] for e in range(T.n_edges) for i, a in enumerate(G.elements)}
    assert evaluate_psi(T, G, mapping) == values


def test_polytope_json_and_limits():
    P = build_polytope(claw_tree(3), Z2)
    doc = P.to_json()
    assert doc["tree"] == "(1,2,3)" and doc["group"] == "2"
    assert doc["vertices"] == P.vertices.tolist()
    with pytest.raises(ResourceLimitError):
        check_size(KIMURA3, 7)
    with pytest.raises(ResourceLimitError):
        build_polytope(claw_tree(5), KIMURA3, limit=100)
    check_size(KIMURA3, 7, limit=4 ** 6)


def test_limit_environment_override(monkeypatch):
    monkeypatch.setenv("TORICPHYLO_MAX_SOCKETS", "8")
    with pytest.raises(ResourceLimitError):
        check_size(Z2, 5)
    check_size(Z2, 4)


def test_trivial_group_model():
    G = AbelianGroup(())
    V = vertex_matrix(claw_tree(3), G)
    assert V.tolist() == [[1, 1, 1]]
