"""
Integer lattices
================

Everything downstream reduces to exact lattice arithmetic: canonical bases
in Hermite normal form, kernels, saturation and indices.
"""

from toricphylo.lattice import (
    Sublattice, elementary_divisors, hnf, index_in, kernel_of, lattice_sum, saturate,
)

# the canonical basis is unique, so equal lattices compare equal
print(hnf([[2, 4], [6, 8]]).basis)
print(hnf([[6, 8], [2, 4]]) == hnf([[2, 4], [6, 8]]))

# integer relations among the rows of a matrix
K = kernel_of([[1], [1], [1]])
print("kernel of a column of ones:", K.basis)

# saturation and index
L = Sublattice.span([[2, 2]])
print("saturation of span{(2,2)}:", saturate(L).basis, "index", index_in(L, saturate(L)))
S = lattice_sum([Sublattice.span([[1, 1]]), Sublattice.span([[1, -1]])])
print("span{(1,1)} + span{(1,-1)} has index", index_in(S, Sublattice.full(2)), "in Z^2")
print("a rank drop gives", index_in(Sublattice.span([[1, 0]]), Sublattice.full(2)))

# Smith invariants
print(elementary_divisors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]))

# entries too large for machine integers switch to exact Python integers
big = Sublattice.span([[2 ** 70, 1], [0, 3]], 2)
print(index_in(big, Sublattice.full(2)) == 3 * 2 ** 70)
