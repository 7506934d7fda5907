# %% [markdown]
# # Local triangle and quadrangle coefficients
#
# The four per-node coefficients on toy graphs, and how the sparse closed
# forms line up with direct per-node evaluation.

# %%
import numpy as np

from quadcoef import Graph, full_report, i_quad, o_quad
from quadcoef.analysis import summary

# %% [markdown]
# The diamond: a 4-cycle a-b-d-c-a with the chord b-c.  Node ``a`` is the
# middle of two open quadriads and both close, so I(a) = 1; it is the end of
# four and two close, so O(a) = 0.5.

# %%
diamond = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)], labels=list("abcd"))
report = full_report(diamond)
for row in report.rows():
    print(row.label, row.degree, "C=%.3f E=%.3f I=%.3f O=%.3f" % (row.C, row.E, row.I, row.O))

# %%
a = diamond.index_of("a")
assert i_quad(diamond, a) == report.I[a] == 1.0
assert o_quad(diamond, a) == report.O[a] == 0.5

# %% [markdown]
# A 4-cycle has no triangles but every open quadriad closes.  A path has
# open quadriads but none close, and its endpoints have undefined C.

# %%
c4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
p5 = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
for name, g in (("C4", c4), ("P5", p5)):
    r = full_report(g)
    print(name, "I", r.I, "O", r.O, "C", r.C)

# %% [markdown]
# Network averages fill undefined node values with zero.

# %%
s = summary(diamond)
print(f"C={s.C:.3f} E={s.E:.3f} I={s.I:.3f} O={s.O:.3f} I/O={s.I_over_O:.3f}")

# %% [markdown]
# Weighted variants use geometric means of edge weights.  Scaling all
# weights by a constant scales I^W and O^W by the same constant.

# %%
w = np.array([1.0, 0.5, 0.5, 1.0, 0.25])
gw = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)], weights=w)
rw = full_report(gw)
print("Iw", rw.Iw, "Ow", rw.Ow)
