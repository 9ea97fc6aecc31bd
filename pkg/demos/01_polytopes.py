"""
Sockets, networks and the model polytope
========================================

A group-based model on a tree is described by a 0/1 polytope.  Its vertices
are indexed by sockets, the leaf labellings that sum to zero.
"""

import numpy as np

from toricphylo import KIMURA3, Z2, Z3, build_polytope, claw_tree, parse_tree
from toricphylo.model import enumerate_sockets, network_of_socket

# the claw with three leaves and the binary group
T = claw_tree(3)
P = build_polytope(T, Z2)
print("sockets:", [tuple(a[0] for a in s) for s in P.sockets])
print(P.vertices)

# every column block (one per edge) has exactly one 1 in each row
print("row sums per edge:", P.vertices.reshape(4, 3, 2).sum(axis=2)[0])

# a Z3 socket on a tree rooted at a degree-two vertex, extended to a network
T = parse_tree("((2,3,4),1)")
n = network_of_socket(T, Z3, [1, 1, 2, 2])
print("edges (parent, child):", [(e.parent, e.child) for e in T.edges])
print("network:", [a[0] for a in n])

# 3-Kimura: four elements per edge, 4^(l-1) sockets
P = build_polytope(parse_tree("((1,2),3,4)"), KIMURA3)
print("3-Kimura on ((1,2),3,4):", P.vertices.shape, "rank", np.linalg.matrix_rank(P.vertices))
print("sockets for l=4:", len(enumerate_sockets(KIMURA3, 4)))
