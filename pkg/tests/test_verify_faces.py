import itertools

import numpy as np
import pytest
from scipy.optimize import linprog

from toricphylo.errors import DomainError
from toricphylo.groups import KIMURA3, Z2, Z3, Z4
from toricphylo.model import socket_network_bijection, vertex_matrix
from toricphylo.trees import claw_tree, parse_tree
from toricphylo.verify import (
    OrbitSpec, face_type1, is_face, kernel_lattice, minimal_face, non_claw_topologies,
    orbit_component_count, two_vertex_tree, supporting_functional,
)


def bits(text):
    return tuple((int(c),) for c in text)


def scipy_is_face(V, subset):
    """Floating-point LP oracle: some c is tight on ``subset`` and at least 1 lower elsewhere."""
    subset = sorted(subset)
    outside = [i for i in range(len(V)) if i not in subset]
    if not outside:
        return True
    v0 = V[subset[0]]
    A_eq = [V[i] - v0 for i in subset[1:]] or None
    A_ub = [V[i] - v0 for i in outside]
    res = linprog(np.zeros(V.shape[1]), A_ub=A_ub, b_ub=-np.ones(len(outside)),
                  A_eq=A_eq, b_eq=np.zeros(len(subset) - 1) if A_eq else None,
                  bounds=[(None, None)] * V.shape[1], method="highs")
    return res.status == 0


def test_type1_example():
    T = claw_tree(3)
    f = face_type1(T, Z2, 0, 0)
    nets = {n for i, (_, n) in enumerate(socket_network_bijection(T, Z2)) if i in f.sockets}
    assert nets == {bits("000"), bits("011")}
    assert f.kernels_equal is None


@pytest.mark.parametrize("G", [Z2, Z3, KIMURA3], ids=str)
@pytest.mark.parametrize("l", [3, 4])
def test_type1_face_size(G, l):
    T = claw_tree(l)
    for e in T.pendant_edges:
        for g in G.elements:
            f = face_type1(T, G, e, g, check_lift=False)
            assert len(f.sockets) == G.order ** (l - 2)
            assert is_face(T, G, f.sockets)


def test_type1_lift_for_kimura_claw():
    T = claw_tree(4)
    for e in T.pendant_edges:
        for g in KIMURA3.elements:
            f = face_type1(T, KIMURA3, e, g)
            assert f.kernels_equal is True
            assert f.partner == two_vertex_tree(4, T.leaf_label[T.edge(e).child])


def test_two_vertex_tree_shape():
    assert two_vertex_tree(5, 3) == parse_tree("((3,1),2,4,5)")
    assert two_vertex_tree(4, 1) == parse_tree("((1,2),3,4)")
    with pytest.raises(DomainError):
        two_vertex_tree(3, 1)


def test_minimal_face_examples():
    T = claw_tree(4)
    rows, diagonal = minimal_face(T, Z2, bits("0000"), bits("1111"))
    assert len(rows) == 8 and diagonal
    rows, diagonal = minimal_face(T, Z2, bits("0110"), bits("0110"))
    assert len(rows) == 1 and not diagonal


def test_is_face_examples():
    T = claw_tree(4)
    assert not is_face(T, Z2, [bits("0000"), bits("1111")])
    assert is_face(T, Z2, range(8))
    assert is_face(T, Z2, face_type1(T, Z2, 1, 1).sockets)
    c = supporting_functional(T, Z2, face_type1(T, Z2, 1, 1).sockets)
    V = vertex_matrix(T, Z2)
    vals = [sum(ci * x for ci, x in zip(c, row)) for row in V.tolist()]
    top = max(vals)
    assert {i for i, v in enumerate(vals) if v == top} == set(face_type1(T, Z2, 1, 1).sockets)


def test_every_face_agrees_with_scipy_on_k14():
    T = claw_tree(4)
    V = vertex_matrix(T, Z2)
    for k in range(1, 9):
        for subset in itertools.combinations(range(8), k):
            verdict = is_face(T, Z2, subset)
            assert verdict == scipy_is_face(V, subset)
            # the functional search solves the Farkas-dual system
            assert verdict == (supporting_functional(T, Z2, subset) is not None)


def test_minimal_face_is_the_smallest_face_on_k14():
    T = claw_tree(4)
    faces = [set(s) for k in range(1, 9) for s in itertools.combinations(range(8), k)
             if is_face(T, Z2, s)]
    for i, j in itertools.combinations_with_replacement(range(8), 2):
        rows, _ = minimal_face(T, Z2, i, j)
        smallest = set(range(8))
        for f in faces:
            if i in f and j in f:
                smallest &= f
        assert set(rows) == smallest


@pytest.mark.parametrize("tree,G", [("(1,2,3,4)", Z2), ("((1,2),3,4)", Z2), ("(1,2,3)", KIMURA3),
                                    ("(1,2,3)", Z4), ("(1,2,3,4)", Z3)], ids=str)
def test_minimal_faces_are_faces(tree, G):
    T = parse_tree(tree)
    n = len(vertex_matrix(T, G))
    assert n <= 64
    for i, j in itertools.combinations_with_replacement(range(n), 2):
        rows, diagonal = minimal_face(T, G, i, j)
        assert is_face(T, G, rows)
        assert diagonal == (len(rows) > 2)


def test_orbit_full_support():
    r = orbit_component_count(OrbitSpec(tuple(range(64))), KIMURA3, non_claw_topologies(4))
    assert not r.empty and r.components == 1
    assert r.kernel_sum == kernel_lattice(claw_tree(4), KIMURA3).kernel


def test_orbit_on_type1_face_single_tree():
    T = parse_tree("((1,2),3,4)")
    rows = face_type1(T, KIMURA3, 0, (1, 0), check_lift=False).sockets
    r = orbit_component_count(OrbitSpec(tuple(rows)), KIMURA3, [T])
    assert r.components == 1


def test_orbit_empty_when_support_is_not_a_face():
    r = orbit_component_count(OrbitSpec((0, 7)), Z2, non_claw_topologies(4))
    assert r.empty and r.blocking_tree is not None


def test_orbit_input_errors():
    with pytest.raises(DomainError):
        OrbitSpec(())
    with pytest.raises(DomainError):
        orbit_component_count(OrbitSpec((0, 99)), Z2, non_claw_topologies(4))
