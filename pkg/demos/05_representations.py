"""Irreducible representations of the balanced torus at a root of unity.

Picks random central character data for the punctured torus with n = 2 and
a 20th root of unity, builds the clock-and-shift representation, and runs
every check.
"""

# %%
from fgtorus import reps
from fgtorus.surface import new_surface

data = reps.random_irrep(new_surface(1, 1), 2, 20, seed=3)
print("dimension", data.dimension, " blocks", data.block_sizes)

# %%
report = reps.verify_irrep(data)
print(report.to_json_obj())

# %% Two different choices of roots give isomorphic representations.
other = reps.build_irrep(data.spec, pick=1)
print("dim Hom =", reps.intertwiner_dimension(data, other))

# %% Puncture scalars and the shadow relation.
p = data.quiver.surface.punctures[0]
vals = reps.loop_scalars(data)[p]
print("t =", [str(t) for t in vals["t"]], " s =", [str(s) for s in vals["s"]])
print("shadow ok:", reps.shadow_check(data).passed)

# %% A larger case: genus one, n = 3, dimension 125.
big = reps.random_irrep(new_surface(1, 1), 3, 20, seed=0)
print(big.dimension, reps.verify_irrep(big).passed)
