"""
Class-preserving automorphisms of small p-groups
================================================

Build a few groups from named families, count their class-preserving
automorphisms, and compare against the bound |gamma_2|^d.
"""

from pcaut import analyze, class_preserving_automorphisms, inner_automorphisms, pcp

# %%
# The unitriangular group over GF(9): order 729, four generators, and a
# commutator subgroup of order 9.
G = pcp.family_unitriangular(3, 2)
print(G, "d =", G.rank, "|gamma_2| =", G.derived.order)

# %%
# Aut_c is found by backtracking over generator images. It is strictly larger
# than Inn here and meets the bound 9^4 exactly.
A = class_preserving_automorphisms(G)
print("|Aut_c| =", A.order, "=", G.derived.order ** G.rank)
print("|Inn|   =", inner_automorphisms(G).order)
print("abelian:", A.is_abelian(), " exponent 3:", A.exponent_divides(3))

# %%
# A metacyclic group where every class-preserving automorphism is inner.
K = pcp.family_metacyclic_K(3, 2, 1, 1)
rep = analyze(K)
print(K, "|Aut_c| =", rep.autc_order, "|Inn| =", rep.inn_order)
for flag, value in rep.flags.items():
    print(f"  {flag:30s} {value}")
