"""
Faces, orbits and fiber cardinality
===================================

Coordinate strata of the ambient space meet a toric model in a face of its
polytope.  When several models are intersected, the number of torus
components is a lattice index.
"""

from toricphylo import KIMURA3, Z2, claw_tree, parse_tree
from toricphylo.verify import (
    OrbitSpec, face_type1, fiber_cardinality, is_face, minimal_face, non_claw_topologies,
    orbit_component_count, supporting_functional,
)

T = claw_tree(4)

# networks taking a fixed value on one edge form a face
f = face_type1(T, KIMURA3, 0, (1, 1))
print(len(f.sockets), "vertices; lift to", f.partner, "equal kernels:", f.kernels_equal)

# the smallest face through two opposite vertices is much larger
rows, diagonal = minimal_face(T, Z2, [0, 0, 0, 0], [1, 1, 1, 1])
print(len(rows), diagonal, is_face(T, Z2, rows), is_face(T, Z2, [0, 7]))
print("supporting functional:", [str(c) for c in supporting_functional(T, Z2, rows)])

# the dense stratum meets the intersection of all non-claw models in one component
r = orbit_component_count(OrbitSpec(tuple(range(64))), KIMURA3, non_claw_topologies(4))
print("components:", r.components, "character lattice rank:", r.character_rank)

# a support that is not a face gives an empty intersection
print(orbit_component_count(OrbitSpec((0, 7)), Z2, non_claw_topologies(4)).empty)

for text, G in [("(1,2)", Z2), ("(1,2,3)", Z2), ("(1,2,3)", KIMURA3)]:
    print(text, G, "generic fiber size", fiber_cardinality(parse_tree(text), G))
