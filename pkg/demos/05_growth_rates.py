"""
Growth rates
============

b_n^(1/n) creeps up to the largest vertex dimension, and the Delta version
to the total dimension.  The closed forms make n = 200 instant.
"""

from quivtensor import Decomposition, b_n_delta, b_n_formula, detect_shape, fusion_table
from quivtensor.decompose import nth_root_string
from quivtensor.quiver import type_d_quiver

shape = detect_shape(type_d_quiver(5, [1, 0, 0, 1]))
table = fusion_table(shape)
lookup = {r.id: r for r in table.roots}
M = Decomposition({lookup["1,1,2,1,0"]: 1, lookup["0,0,1,1,1"]: 2, lookup["1,0,0,0,0"]: 1})
dims = M.dim_vector(shape.rank)
print("dims", dims, "max", max(dims), "total", sum(dims))

for n in (1, 5, 25, 100, 200, 1000):
    b = b_n_formula(M, n, shape)
    bd = b_n_delta(M, n, table)
    print(f"{n:5d}  {nth_root_string(b, n, 12):>14}  {nth_root_string(bd, n, 12):>14}")

# b_2 can exceed b_1 squared when twins are present
print("b_1, b_2 for a lone twin:", [b_n_formula(Decomposition({lookup["1,1,2,1,0"]: 1}), n, shape) for n in (1, 2)])
