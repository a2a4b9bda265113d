"""
Writing a group down as a power-commutator presentation
=======================================================
"""

from pcaut import parse_presentation, realize, render
from pcaut.errors import PcautError

# %%
# Generators are listed top to bottom. Power and commutator relations name
# words in later generators; anything left out is trivial.
text = """\
p 2
gens a b c d
ord a 2
ord b 2
ord c 2
ord d 2
pow b = d
comm [b,a] = c*d
"""
pres = parse_presentation(text)
G = realize(pres, name="two-generator")
print(G, "class", G.nilpotency_class, "centre", G.center.order)
print("lower central series:", [S.order for S in G.lower_central])

# %%
# Rendering gives back canonical text that parses to the same presentation.
assert parse_presentation(render(pres)) == pres
print(render(pres))

# %%
# Mistakes come back with a line and column.
try:
    parse_presentation("p 2\ngens a b\nord a 2\nord b 2\ncomm [b,a] = z\n")
except PcautError as exc:
    print(exc.to_dict())
