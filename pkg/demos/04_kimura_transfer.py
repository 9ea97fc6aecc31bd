"""
From three binary models to the 3-Kimura model
==============================================

The three surjections Z2 x Z2 -> Z2 push 3-Kimura sockets to triples of
binary sockets.  The image is cut out by a parity condition.
"""

from toricphylo import claw_tree, parse_tree
from toricphylo.groups import KIMURA3, kimura_projections
from toricphylo.verify import (
    check_exact_sequence, check_index_equality, check_kernel_in_image, kernel_lattice,
    kimura_relations_pullback,
)

for f in kimura_projections():
    print([f(a)[0] for a in KIMURA3.elements])

# image of f equals the kernel of the XOR map, with index 2^(l-1)
for l in (3, 4, 5):
    r = check_exact_sequence(l)
    print(f"l={l}: exact {r.exact}, index {r.index}")

# binary relations lift
print(check_kernel_in_image(parse_tree("((1,2),3,4)")).verdict)

# the two indices on the socket and vertex sides agree
for T in [claw_tree(3), claw_tree(4), parse_tree("((1,2),3,4,5)")]:
    r = check_index_equality(T)
    print(T, r.socket_index, r.vertex_index, "commutes:", r.commutes)

# pulling the binary relations back gives the 3-Kimura relations
T = parse_tree("((1,2),3,4)")
print(kimura_relations_pullback(T) == kernel_lattice(T, KIMURA3).kernel)
