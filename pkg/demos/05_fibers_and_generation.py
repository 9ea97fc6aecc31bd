"""
Fibers and generation by moves
==============================

Monomials with the same image under the parametrization form a fiber.  A set
of binomial moves generates the ideal when it connects every fiber; here all
fibers up to a fixed degree are checked.
"""

from toricphylo import Z2, claw_tree
from toricphylo.model import enumerate_sockets, socket_index
from toricphylo.verify import (
    FiberSpec, check_generation, enumerate_fiber, replay_disconnected_fiber,
)

T = claw_tree(4)
zero, ones = socket_index(Z2, [0, 0, 0, 0]), socket_index(Z2, [1, 1, 1, 1])
for mono in enumerate_fiber(FiberSpec.from_sockets(T, Z2, [zero, ones])):
    print(["".join(str(a[0]) for a in n) for n in mono])

# two trees with leaves {1,2} and {1,3} grouped generate the claw ideal
for l in (4, 5):
    rest = ",".join(str(a) for a in range(4, l + 1))
    r = check_generation(claw_tree(l), Z2, [f"((1,2),3,{rest})", f"((1,3),2,{rest})"], 2, 3)
    print(f"l={l}: {r.verdict} over {r.fibers_checked} fibers")

# grouping {1,2} and {4,5} instead leaves a quadratic fiber disconnected
sources = ["((1,2),3,4,5)", "((4,5),1,2,3)"]
r = check_generation(claw_tree(5), Z2, sources, 2, 2)
print("verdict:", r.verdict, "disconnected fibers:", len(r.disconnected))
socks = enumerate_sockets(Z2, 5)
for comp in r.witness.components:
    print([["".join(str(a[0]) for a in socks[i]) for i in m] for m in comp])
print("replayed:", replay_disconnected_fiber(claw_tree(5), Z2, sources, 2, r.witness.components))
