"""
Counting short cycles without enumerating them
==============================================

For permutation layouts the 4-, 6- and 8-cycle counts follow from repetitions
among XOR sums of shifts.  We check the closed forms against an exhaustive
DFS enumeration of the expanded Tanner graph.
"""

from qdyadic.cyclecount import census, count4_single, count6_single, girth
from qdyadic.dyadic import DyadicMatrix
from qdyadic.lift import QuasiDyadicLayout, expand_layout, tanner_graph
from qdyadic.oracle import enumerate_cycles

# One dyadic block: every pair of support elements contributes 4-cycles
supp, ell = [0, 1, 2, 3], 3
G = tanner_graph(DyadicMatrix.from_support(ell, supp).expand())
inv = enumerate_cycles(G, 6)
print("closed form N4, N6:", count4_single(supp, ell), count6_single(supp, ell))
print("enumerated  N4, N6:", inv[4], inv[6])

# A 3 x 5 layout of dyadic permutations at ell = 4 (an 48 x 80 matrix)
L = QuasiDyadicLayout.from_shifts(4, [[0, 0, 0, 0, 0],
                                      [0, 1, 2, 3, 4],
                                      [0, 2, 4, 6, 8]])
print(census(L).as_dict())
inv = enumerate_cycles(tanner_graph(expand_layout(L)), 8)
print("enumerated:", {k: inv[k] for k in (4, 6, 8)}, "girth", girth(L))

# Counts above the validity limit k < 2 * girth are withheld
small = QuasiDyadicLayout.from_shifts(2, [[0, 0], [0, 0]])
print(census(small).as_dict())
