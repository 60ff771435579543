"""
Reading a reduction instance digit by digit
===========================================

The figure1 graph has three classes of four vertices and four edges per
class pair.  Reducing it gives 117 jobs whose numbers are base-508 digit
vectors.  Following the constructive schedule for the clique (1, 2, 3), we
watch the early jobs fill the blocks.
"""

from schedred import build, figure1, render_blocks
from schedred.blockint import block_digits
from schedred.reduction import witness_set

g = figure1()
red = build(g)
lay = red.layout
print(f"jobs={len(red.instance)}  radix N={lay.N}  digits D={lay.D}")
print("zero      ", render_blocks(lay.zero()))

# %%
# The vertex selection jobs come first in due-date order.  Their total
# processing time puts n = 4 on every class digit, and the L/S terms leave
# their trace in the large and small blocks.
early = witness_set(red, (1, 2, 3))
vertex = [j for j in early if red.roles[j].gadget == "vertex"]
print("P(vertex) ", render_blocks(red.instance.total("p", vertex)))
print("W(vertex) ", render_blocks(red.instance.total("w", vertex)))

# %%
# The large (2, 3) gadget is next.  It counts the edges of E_{2,3} that are
# lexicographically at least (2, 3); two of them are, so the counting digit
# reads 2.
stage = vertex + [j for j in early if red.roles[j].gadget == "large" and red.roles[j].pair == (2, 3)]
P = red.instance.total("p", stage)
W = red.instance.total("w", stage)
print("large (2,3) block of P:", "".join(map(str, block_digits(P, "large", (2, 3)))))
print("counting digit of W:   ", W.counting)

# %%
# After every gadget the counting digit holds (m + 1) per pair, which is
# exactly the threshold's counting digit.
P = red.instance.total("p", early)
W = red.instance.total("w", early)
print("W(all)    ", render_blocks(W))
print("threshold ", render_blocks(red.threshold))
print("reached:", W >= red.threshold)
