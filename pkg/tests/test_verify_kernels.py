import numpy as np
import pytest

from oracles import bareiss_rank, naive_elementary_divisors
from toricphylo.errors import DomainError, ResourceLimitError
from toricphylo.groups import KIMURA3, Z2, Z3
from toricphylo.lattice import Sublattice, contains, is_saturated, is_sublattice, lattice_sum
from toricphylo.model import build_polytope, vertex_matrix
from toricphylo.trees import claw_tree, enumerate_topologies, leq, parse_tree
from toricphylo.verify import (
    annihilates, check_inclusion, check_main_theorem, dimension_report, fiber_cardinality,
    kernel_lattice, kernels_for, non_claw_topologies,
)

# pinned from the naive SNF oracle below; no published value to compare against
KIMURA_CLAW3_FIBER_CARDINALITY = 4

SPECIAL_PAIRS = {4: ["((1,2),3,4)", "((1,3),2,4)"], 5: ["((1,2),3,4,5)", "((1,3),2,4,5)"]}


def oracle_fiber_cardinality(T, G):
    V = vertex_matrix(T, G).tolist()
    diffs = [[a - b for a, b in zip(row, V[0])] for row in V[1:]]
    if not any(any(r) for r in diffs):
        return 1
    return int(np.prod(naive_elementary_divisors(diffs)))


@pytest.mark.parametrize("tree,group,rank", [
    ("(1,2,3)", Z2, 0), ("(1,2,3)", KIMURA3, 6), ("(1,2,3,4)", Z2, 3),
])
def test_kernel_rank_examples(tree, group, rank):
    assert kernel_lattice(parse_tree(tree), group).rank == rank


@pytest.mark.parametrize("G", [Z2, Z3, KIMURA3], ids=str)
def test_kernels_annihilate_and_have_oracle_rank(G):
    for l in (3, 4):
        for T in enumerate_topologies(l):
            V = vertex_matrix(T, G)
            r = kernel_lattice(T, G)
            assert annihilates(r.kernel, V)
            assert r.rank == len(V) - bareiss_rank(V.tolist())
            assert r.saturation_index == 1


def test_kernel_respects_limits():
    with pytest.raises(ResourceLimitError):
        kernel_lattice(claw_tree(5), KIMURA3, limit=64)


def test_inclusion_examples():
    T = parse_tree("((1,2),3,4)")
    assert check_inclusion(claw_tree(4), T, Z2)
    assert check_inclusion(claw_tree(4), T, KIMURA3)
    assert check_inclusion(T, T, KIMURA3)
    with pytest.raises(DomainError):
        check_inclusion(T, parse_tree("((1,3),2,4)"), Z2)


@pytest.mark.parametrize("G", [Z2, Z3], ids=str)
def test_inclusion_holds_along_every_contraction(G):
    trees = enumerate_topologies(5)
    for a in trees:
        for b in trees:
            if leq(a, b):
                assert check_inclusion(a, b, G)


def test_main_theorem_l4_both_modes():
    scheme = check_main_theorem(4, KIMURA3, mode="scheme")
    sset = check_main_theorem(4, KIMURA3, mode="set")
    assert scheme.verdict and sset.verdict
    assert scheme.claw_kernel.rank == 64 - 13
    assert scheme.saturation_index == 1 and scheme.index_in_claw == 1
    assert len(scheme.sources) == 3


@pytest.mark.parametrize("l", [4, 5])
def test_two_special_trees_suffice(l):
    r = check_main_theorem(l, Z2, SPECIAL_PAIRS[l])
    assert r.verdict


def test_vacuous_three_leaf_case():
    r = check_main_theorem(3, Z2, [])
    assert r.verdict and r.claw_kernel.rank == 0
    assert non_claw_topologies(3) == []


def test_single_source_falsifies_with_replayable_witness():
    r = check_main_theorem(4, KIMURA3, ["((1,2),3,4)"])
    assert not r.verdict
    w = np.array(r.witness)
    V = vertex_matrix(claw_tree(4), KIMURA3)
    K = kernel_lattice(parse_tree("((1,2),3,4)"), KIMURA3).kernel
    assert not (w @ V).any()
    assert not contains(K, w)


def test_main_theorem_input_errors():
    with pytest.raises(DomainError):
        check_main_theorem(4, Z2, ["((1,2),3,4,5)"])
    with pytest.raises(DomainError):
        check_main_theorem(4, Z2, ["(1,2,3,4)"])
    with pytest.raises(DomainError):
        check_main_theorem(4, Z2, mode="both")


def test_sum_is_monotone_in_sources():
    trees = non_claw_topologies(4)
    Ks = kernels_for(trees, KIMURA3)
    prev = Sublattice.zero(64)
    for k in range(1, len(Ks) + 1):
        cur = lattice_sum(Ks[:k])
        assert is_sublattice(prev, cur)
        prev = cur


def test_parallel_kernels_match_serial():
    trees = non_claw_topologies(4)
    assert kernels_for(trees, KIMURA3, jobs=2) == kernels_for(trees, KIMURA3, jobs=1)


@pytest.mark.parametrize("tree,G,affine,projective", [
    ("(1,2,3)", KIMURA3, 10, 9), ("(1,2,3,4,5)", KIMURA3, 16, 15), ("(1,2,3)", Z2, 4, 3),
])
def test_dimension_examples(tree, G, affine, projective):
    r = dimension_report(parse_tree(tree), G)
    assert (r.affine, r.projective) == (affine, projective)
    assert r.holds


@pytest.mark.parametrize("G", [Z2, KIMURA3], ids=str)
def test_dimension_formula_on_all_small_trees(G):
    for l in (3, 4):
        for T in enumerate_topologies(l):
            r = dimension_report(T, G)
            assert r.holds
            assert r.affine == bareiss_rank(vertex_matrix(T, G).tolist())


def test_fiber_cardinality_examples():
    assert fiber_cardinality(parse_tree("(1,2)"), Z2) == 1
    assert fiber_cardinality(claw_tree(3), Z2) == 2
    assert fiber_cardinality(claw_tree(3), KIMURA3) == KIMURA_CLAW3_FIBER_CARDINALITY


@pytest.mark.parametrize("G", [Z2, Z3, KIMURA3], ids=str)
def test_fiber_cardinality_matches_snf_oracle(G):
    trees = [parse_tree("(1,2)")] + enumerate_topologies(3) + enumerate_topologies(4)
    for T in trees:
        assert fiber_cardinality(T, G) == oracle_fiber_cardinality(T, G)


@pytest.mark.parametrize("G", [Z2, Z3, KIMURA3], ids=str)
def test_fiber_cardinality_one_when_saturated(G):
    for T in enumerate_topologies(4):
        if kernel_lattice(T, G).saturation_index == 1 and \
                is_saturated(build_polytope(T, G).degree_zero_lattice):
            assert fiber_cardinality(T, G) == 1
