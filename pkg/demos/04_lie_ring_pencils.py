"""
The graded Lie ring of a class-3 group
======================================

For a two-generator group of class 3 with |gamma_3| = p, the mod-p Lie
algebra carries structure matrices whose nonzero combinations are all
nonsingular.
"""

import numpy as np

from pcaut import build_graded_lie_ring, macdonald_analysis, mod_p_algebra, pcp, pfaffian

G = pcp.family_nonmetacyclic_example(3)
L = build_graded_lie_ring(G)
Lbar = mod_p_algebra(L)
print("graded components:", [L.component(i).order for i in (1, 2, 3)])

# %%
mac = macdonald_analysis(Lbar)
print("m =", mac.m, " n =", mac.n, " dim Cbar =", mac.cbar_dim)
print("pencil nonsingular:", mac.pencil_nonsingular, f"({mac.pencil_checked} forms)")

# %%
# Pfaffians work in characteristic 2 as long as the diagonal is zero.
a = np.ones((4, 4), dtype=int) - np.eye(4, dtype=int)
print("Pf =", pfaffian(a, 2))
