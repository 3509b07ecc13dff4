"""
Roots and their representatives
===============================

Positive roots of type A and D quivers, and the fixed matrices behind them.
"""

from quivtensor import detect_shape, enumerate_positive_roots, hom_dimension, indecomposable_rep
from quivtensor.quiver import type_a_quiver, type_d_quiver

# A path on four vertices with a zigzag orientation
a4 = detect_shape(type_a_quiver(4, [0, 1, 0]))
print(a4.name, [r.id for r in enumerate_positive_roots(a4)])

# D5 with the second spur pointing into the branch vertex
d5 = detect_shape(type_d_quiver(5, [0, 1, 0, 0]))
print(d5.name, "sigma", d5.sigma, "P", sorted(d5.P))

roots = enumerate_positive_roots(d5)
for r in roots:
    if r.kind == "twin":
        print("twin", r.twin, r.vector)

# the twin x_{1,2} with its matrices; identities fill the tail
x = next(r for r in roots if r.twin == (1, 2))
m = indecomposable_rep(d5, x)
for arrow, mat in zip(d5.quiver.arrows, m.maps):
    print(f"  {arrow.name}: {mat.to_strings()}")

# indecomposable means a one-dimensional endomorphism space here
print("dim End =", hom_dimension(m, m))
