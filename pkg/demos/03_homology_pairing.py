"""Balanced vectors as mod-n homology classes.

Each balanced exponent vector defines a class in H_1(S; Z/n).  The algebraic
commutation form agrees with the edge formula and with the geometric
intersection count of representative multicurves.
"""

# %%
import random

from fgtorus import homol
from fgtorus.balanced import balanced_lattice
from fgtorus.quiver import NTriangulationQuiver
from fgtorus.surface import new_surface

q = NTriangulationQuiver(new_surface(2, 1), 3)
bl = balanced_lattice(q)
rng = random.Random(0)
k, h = homol.random_balanced(bl, rng), homol.random_balanced(bl, rng)

# %%
print("algebraic :", homol.pairing_algebraic(q, k, h))
print("edge      :", homol.pairing_edge_formula(q, k, h))
print("geometric :", homol.pairing_geometric(q, k, h))

# %% The class map hits all of H_1, which has n^(2g) elements.
print("image order", homol.image_order(bl), "= 3^4")

# %% The seeded agreement suite used in acceptance.
print(homol.agreement_suite(bl, pairs=50, seed=1).to_json_obj())
