"""
Fusion tables and tensor powers
===============================

Every pairwise product of indecomposables is decomposed once; powers are
then pure integer arithmetic.
"""

from quivtensor import Decomposition, detect_shape, fusion_table, tensor_powers
from quivtensor.quiver import type_d_quiver

d4 = detect_shape(type_d_quiver(4))
table = fusion_table(d4)

# products that split into more than one summand
for (d, e), prod in sorted(table.products.items()):
    if prod.total() > 1:
        print(f"{d.id} x {e.id} -> {dict((r.id, m) for r, m in prod.items())}")

lookup = {r.id: r for r in table.roots}
M = Decomposition({lookup["1,1,2,1"]: 1, lookup["1,0,1,1"]: 2})
for n, power in enumerate(tensor_powers(M, 6, table), start=1):
    print(n, power.total(), power.dim_vector(4))
