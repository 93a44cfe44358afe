"""
Dyadic matrices from a signature
================================

A dyadic matrix of order 2^ell is fixed by its first row: entry (x, y)
equals signature[x ^ y].  Sums and products stay dyadic, and the ring is
commutative.
"""

import numpy as np

from qdyadic.dyadic import (
    DyadicMatrix, dyadic_code_params, dyadic_rank, expand_dense, is_subspace_or_coset, rank_census,
)

# A weight-4 signature at ell = 3; its support {0, 1, 2, 3} is a subgroup of F_2^3
D = DyadicMatrix.from_support(3, [0, 1, 2, 3])
print(expand_dense(D))
print("rank", dyadic_rank(D), "affine support:", is_subspace_or_coset(D.support))

# Products only depend on signatures and commute
A = DyadicMatrix.from_support(3, [1, 6])
B = DyadicMatrix.from_support(3, [0, 2, 5])
assert A * B == B * A
assert np.array_equal(expand_dense(A * B), expand_dense(A) @ expand_dense(B) % 2)

# How ranks distribute over all 2^(2^ell) signatures
for ell in range(1, 4):
    print(ell, rank_census(ell))

# Row code and dual code of an affine-support signature
row, dual = dyadic_code_params(DyadicMatrix.from_support(4, [0, 1, 2, 3]))
print("row code", row, "dual code", dual)

# Labels written 1-based elsewhere can be converted on input
Dv = DyadicMatrix.from_support(4, [1, 5, 6, 7, 11, 14], one_based=True)
print("support", Dv.support, "rank", dyadic_rank(Dv))
