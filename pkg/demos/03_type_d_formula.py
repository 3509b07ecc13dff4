"""
Closed form on type D
=====================

The counting formula for b_n against the fusion-table oracle, and the two
readings of the twin sums.
"""

import random

from quivtensor import b_n_formula, detect_shape, fusion_table, tensor_powers
from quivtensor.formulas import TwinSumContext, twin_sum
from quivtensor.quiver import all_orientations
from quivtensor.verify import random_decomposition

rng = random.Random(0)
for q in all_orientations("D", 5)[:4]:
    shape = detect_shape(q)
    table = fusion_table(shape)
    a = random_decomposition(table.roots, rng, max_mult=2)
    ctx = TwinSumContext.build(a, shape)
    oracle = [p.total() for p in tensor_powers(a, 4, table)]
    formula = [b_n_formula(a, n, shape) for n in range(1, 5)]
    twins = {b: [twin_sum(a, n, ctx, b) for n in range(1, 5)] for b in ("lemma", "prop")}
    print(shape.sigma, "P =", sorted(shape.P))
    print("  oracle ", oracle)
    print("  formula", formula)
    print("  twin sums", twins)
