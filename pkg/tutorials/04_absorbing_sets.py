"""
Absorbing sets in boundary layouts
==================================

Layouts that split into disjoint complete bipartite pieces are full of
(a, 0) absorbing sets: inside one piece, any even set of variables works.
"""

from qdyadic.absorbing import components, count_1xn, count_allones, count_corollary, profile_from_bruteforce
from qdyadic.dyadic import DyadicMatrix
from qdyadic.lift import QuasiDyadicLayout, expand_layout, tanner_graph

# A single row of three permutations: 4 disjoint stars
row = QuasiDyadicLayout.from_shifts(2, [[0, 1, 2]])
print(components(row).shapes())
print("closed form", count_1xn(2, 3).counts)
print("brute force", profile_from_bruteforce(tanner_graph(expand_layout(row)), 3).counts)

# The all-ones dyadic is one complete bipartite graph
for ell in (1, 2, 3):
    print(ell, count_allones(ell).total)

# A subgroup support gives a block-diagonal matrix of all-ones blocks
D = DyadicMatrix.from_support(3, [0, 1, 2, 3])
print(count_corollary("block-diagonal", ell=3, k=2).per_a())
print(profile_from_bruteforce(tanner_graph(D.expand()), 4).per_a())

# Identical blocks: the multiplier is the number of components
prof = count_corollary("identical-blocks", m=2, n=3, ell=2)
print(prof.counts, prof.notes)

# Requiring a connected induced subgraph changes the totals a lot
G = tanner_graph(expand_layout(row))
print(profile_from_bruteforce(G, 4).total, profile_from_bruteforce(G, 4, connected_only=False).total)
