"""
Partitioning morphisms
======================

Enumerate the partitions on three vertices, keep the coassociative ones,
and watch the Delta-power totals agree.
"""

from quivtensor import (
    Decomposition,
    b_n_delta,
    delta_power_decomposition,
    detect_shape,
    enumerate_partitioning_morphisms,
    fusion_table,
    is_coassociative,
)
from quivtensor.quiver import type_a_quiver

q = type_a_quiver(3, [1, 0])
specs = enumerate_partitioning_morphisms(q)
good = [p for p in specs if is_coassociative(p)]
print(len(specs), "candidates,", len(good), "coassociative")
print("example:", good[5].to_dict())

shape = detect_shape(q)
table = fusion_table(shape)
lookup = {r.id: r for r in table.roots}
M = Decomposition({lookup["1,1,0"]: 1, lookup["0,0,1"]: 2})
for n in (1, 2, 3, 4):
    totals = {delta_power_decomposition(M, n, p, table).total() for p in good}
    print(n, totals, b_n_delta(M, n, table))
