"""
Frame error rates under belief propagation
==========================================

Fewer short cycles pay off even at girth 4: the dual-containing layout with
the fewest 4-cycles beats a random one at the same length and dimension.
"""

from qdyadic.bpsim import ChannelModel, intervals_disjoint, simulate_classical, simulate_css
from qdyadic.css import construction_bbs, optimize_bbs
from qdyadic.lift import QuasiDyadicLayout, expand_layout

x_min, (n4_min, _) = optimize_bbs(3, 4, rows=3, strategy="min")
x_rnd = [6, 2, 0, 2]
good = construction_bbs(3, 4, 0, x_min, rows=3)
poor = construction_bbs(3, 4, 0, x_rnd, rows=3)

for p in (0.005, 0.01, 0.02):
    ch = ChannelModel("xz", p)
    a = simulate_css(good, ch, 4000, seed=7)
    b = simulate_css(poor, ch, 4000, seed=7)
    (alo, ahi), (blo, bhi) = a.wilson, b.wilson
    print(f"p={p}: min-N4 {a.fer:.4f} [{alo:.4f}, {ahi:.4f}]  random {b.fer:.4f} [{blo:.4f}, {bhi:.4f}]  "
          f"separated={intervals_disjoint(a, b)}")

# Classical decoding of a girth-6 layout over a binary symmetric channel
H = expand_layout(QuasiDyadicLayout.from_shifts(4, [[0, 0, 0, 0, 0], [0, 1, 2, 3, 4], [0, 2, 4, 6, 8]]))
for p in (0.01, 0.03, 0.05):
    print(p, simulate_classical(H, ChannelModel("bsc", p), 5000, seed=1).as_row())
