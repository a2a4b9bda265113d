"""
Isoclinism families and the verification corpus
================================================
"""

from pcaut import is_isoclinic, pcp, run_suites
from pcaut.corpus import default_corpus, isoclinism_pair_suite
from pcaut.group import direct_product

# %%
# D8 and Q8 are isoclinic, and so is D8 x C2. Of the three, only the direct
# product fails to be a stem group.
D8 = pcp.family_extraspecial(2, 1, "D")
Q8 = pcp.family_extraspecial(2, 1, "Q")
P = direct_product([pcp.family_abelian(2, [1]), D8])
print("D8 ~ Q8:", is_isoclinic(D8, Q8).value, " D8 ~ C2xD8:", is_isoclinic(D8, P).value)
print(isoclinism_pair_suite(D8, P).counts())

# %%
# Each suite reports true, false, or n/a per check; n/a means the premise did
# not apply to the group.
for entry in default_corpus()[:12]:
    G = entry.build()
    reps = run_suites(G, ["A", "B", "extremal"])
    print(f"{entry.name:12s}", {k: r.counts() for k, r in reps.items()})
