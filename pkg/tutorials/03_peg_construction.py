"""
Progressive edge growth with forbidden shifts
=============================================

Cells are filled one at a time.  For each cell, the forbidden set holds the
shifts that would close a 4- or 6-cycle with cells already placed; the new
shift is drawn from the rest.
"""

import numpy as np

from qdyadic.cyclecount import count4_quasi, count6_quasi, girth
from qdyadic.lift import UNSET, QuasiDyadicLayout
from qdyadic.peg import PegConfig, forbidden_set, peg_construct, peg_construct_min_cycles, peg_run

# Three zero shifts in a 2 x 2 grid leave exactly one bad choice for the last cell
L = QuasiDyadicLayout(3, [[[0], [0]], [[0], UNSET]])
print("forbidden for (1, 1):", sorted(forbidden_set(L, (1, 1), 4).values))

# A 3 x 5 layout at ell = 4; every step can avoid 6-cycles, so girth reaches 8
run = peg_run(PegConfig(3, 5, 4, seed=1))
print(run.layout.shift_array())
print("girth", girth(run.layout), "levels met:", run.all_steps_at)

# When girth 6 is out of reach, ranking candidates by cycle count helps
rand = [count4_quasi(peg_construct(PegConfig(3, 6, 2, seed=s))) for s in range(20)]
best = [count4_quasi(peg_construct_min_cycles(PegConfig(3, 6, 2, strategy="min", seed=s))) for s in range(20)]
print("mean N4 random", np.mean(rand), "min-cycles", np.mean(best))

# At ell = 3 a 3 x 6 grid usually lands on girth 6; compare the 6-cycle counts
a = peg_construct_min_cycles(PegConfig(3, 6, 3, strategy="min", seed=0))
b = peg_construct(PegConfig(3, 6, 3, seed=0))
print("N6 min-cycles", count6_quasi(a), "random", count6_quasi(b))
