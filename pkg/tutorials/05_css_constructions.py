"""
CSS pairs from dyadic blocks
============================

Commutation Hx Hz^T = 0 is checked on every construction; a pair that fails
raises with a diagnostic instead of being returned.
"""

from qdyadic.css import (
    CommutationError, bicycle, construction_bbs, construction_main, construction_main_transposed,
    cross_pair, optimize_bbs, reed_muller_quasi_dyadic, search_bicycle, search_main_commuting,
)
from qdyadic.cyclecount import girth
from qdyadic.dyadic import DyadicMatrix

# Two weight-6 signatures with Dx Dz = 0 give a [[16, 4, 4]] code
Dx = DyadicMatrix.from_support(4, [0, 4, 5, 6, 10, 13])
Dz = DyadicMatrix.from_support(4, [3, 4, 5, 7, 9, 12])
print(cross_pair(Dx, Dz).params())

# Bicycle codes: the component distances are not a lower bound
D = DyadicMatrix.from_support(3, [0, 1, 2, 4, 5, 6])
print("D with itself:", bicycle(D, D).params())

# Cyclic permutations with a block circulant layout commute only for omega <= 2
try:
    construction_main(3, 3, [0, 1, 2], [0, 0, 4])
except CommutationError as err:
    print("omega=3:", err.diagnostic["first_symbolic_mismatch"])
print(construction_main_transposed(3, 3, [0, 1, 2], [0, 0, 4]).params(compute_distance=False))

# Some shift choices still commute; keep the one with the best cycle profile
pair, info = search_main_commuting(4, 4, rows=2, seed=0)
print("literal instance n, k, girth:", pair.n, pair.k, girth(pair.hx_layout), info["key"])

# Dual-containing alternating layouts always have girth 4; pick shifts with few 4-cycles
x, (n4, n6) = optimize_bbs(3, 4, rows=3, strategy="min")
bbs = construction_bbs(3, 4, 0, x, rows=3)
print("shifts", x, "N4", n4, "girth", girth(bbs.hx_layout))

# Existence searches
rm = reed_muller_quasi_dyadic(4, 2, 3, seed=0)
print("3 x 4 grid at ell=2:", rm.pair.params().as_tuple(), "tries", rm.tried)
bi = search_bicycle(5, 16, 8, seed=0)
print("bicycle at ell=5:", bi.params, bi.notes)
