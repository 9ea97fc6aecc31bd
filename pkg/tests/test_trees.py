import itertools

import pytest

from oracles import all_topologies_by_contraction
from toricphylo.errors import DomainError, TreeParseError
from toricphylo.trees import (
    Tree, claw_tree, contract_edge, enumerate_topologies, leq, parse_tree, reroot,
    tree_from_splits,
)


def test_parse_and_canonical_form():
    T = parse_tree("((1,2),3,4)")
    assert str(T) == "((1,2),3,4)"
    assert T.n_leaves == 4 and T.n_edges == 5
    assert parse_tree(" ( 4 , 3, (2,1) ) ") == T
    assert parse_tree("(1,2,3)").is_claw


@pytest.mark.parametrize("text,fragment", [
    ("((1,2),3", "never closed"),
    ("(1,2))", "position 5"),
    ("(1,2,x)", "'x' at position 5"),
    ("((1),2,3)", "single child"),
    ("(1,2,2)", "label"),
    ("(1,3,4)", "label"),
    ("", "empty"),
    ("(1,,2)", "','"),
])
def test_parse_errors_name_the_problem(text, fragment):
    with pytest.raises(TreeParseError) as info:
        parse_tree(text)
    assert fragment in str(info.value)


def test_parse_error_is_a_value_error():
    with pytest.raises(ValueError):
        parse_tree("(1,2")


def test_contract_edge_example():
    T = parse_tree("((1,2),3,4)")
    inner = T.inner_edges
    assert len(inner) == 1
    assert contract_edge(T, inner[0]) == claw_tree(4)


def test_contracting_a_pendant_edge_fails():
    T = parse_tree("((1,2),3,4)")
    with pytest.raises(DomainError):
        contract_edge(T, T.pendant_edges[0])


def test_leq_examples():
    assert leq(claw_tree(4), parse_tree("((1,2),3,4)"))
    assert not leq(parse_tree("((1,2),3,4)"), parse_tree("((1,3),2,4)"))
    with pytest.raises(DomainError):
        leq(claw_tree(3), claw_tree(4))


@pytest.mark.parametrize("l", [3, 4, 5, 6, 7])
def test_enumeration_matches_stepwise_oracle(l):
    trees = enumerate_topologies(l)
    families = [T.inner_splits for T in trees]
    assert len(set(families)) == len(trees)
    assert set(families) == all_topologies_by_contraction(l)


@pytest.mark.parametrize("l,count", [(3, 1), (4, 4), (5, 26), (6, 236), (7, 2752)])
def test_topology_counts(l, count):
    assert len(enumerate_topologies(l)) == count


@pytest.mark.parametrize("l", [4, 5, 6])
def test_contraction_drops_one_edge_and_keeps_leaves(l):
    for T in enumerate_topologies(l):
        for e in T.inner_edges:
            S = contract_edge(T, e)
            assert S.n_topological_edges == T.n_topological_edges - 1
            assert S.labels == T.labels
            assert leq(S, T) and not leq(T, S)


@pytest.mark.parametrize("l", [3, 4, 5])
def test_leq_is_a_partial_order(l):
    trees = enumerate_topologies(l)
    for a in trees:
        assert leq(a, a)
    for a, b in itertools.product(trees, repeat=2):
        if leq(a, b) and leq(b, a):
            assert a.same_topology(b)
    for a, b, c in itertools.product(trees, repeat=3):
        if leq(a, b) and leq(b, c):
            assert leq(a, c)


@pytest.mark.parametrize("l", [3, 4, 5, 6])
def test_claw_is_the_unique_minimum(l):
    trees = enumerate_topologies(l)
    assert trees[0] == claw_tree(l)
    assert all(leq(claw_tree(l), T) for T in trees)
    minima = [a for a in trees if all(leq(a, b) for b in trees)]
    assert minima == [claw_tree(l)]


def test_leq_by_contraction_closure():
    # independent of splits: reachability by repeated contract_edge
    trees = enumerate_topologies(5)
    below = {}
    for T in sorted(trees, key=lambda t: t.n_edges):
        reach = {T.inner_splits}
        for e in T.inner_edges:
            reach |= below[contract_edge(T, e).inner_splits]
        below[T.inner_splits] = reach
    for a, b in itertools.product(trees, repeat=2):
        assert leq(a, b) == (a.inner_splits in below[b.inner_splits])


def test_reroot_keeps_topology():
    T = parse_tree("((1,2),(3,4),5)")
    for v in T.nodes:
        S = reroot(T, v)
        assert S.same_topology(T)
        assert S.splits == T.splits


def test_degree_two_root_is_allowed():
    T = parse_tree("((2,3,4),1)")
    assert T.n_edges == 5
    assert T.n_topological_edges == 4
    assert T.same_topology(claw_tree(4))


def test_tree_from_splits_round_trip():
    for T in enumerate_topologies(6):
        assert tree_from_splits(6, T.inner_splits).same_topology(T)


def test_splits_avoid_leaf_one():
    T = parse_tree("((1,2),3,4)")
    assert frozenset({3, 4}) in T.inner_splits
    assert all(1 not in s for s in T.splits)


def test_tree_constructor_validates():
    with pytest.raises(TreeParseError):
        Tree(((1,), 2, 3))
