"""Triangulated surfaces and their n-triangulation quivers.

Builds the once-punctured torus, flips an edge, and prints the doubled
exchange matrix for n = 2 and n = 3.
"""

# %%
from fgtorus.quiver import NTriangulationQuiver, expected_vertex_count
from fgtorus.surface import flip, isomorphic, new_surface, validate

T1 = new_surface(1, 1)
print("triangles:", T1.triangles)
print("gluings:  ", T1.gluings)
print("valid:    ", validate(T1) == [])

# %% A flip keeps the surface type, and flipping the same edge again undoes it
# up to relabelling.
T1f = flip(T1, 0)
print("flip valid:", validate(T1f) == [], " involutive:", isomorphic(flip(T1f, 0), T1))

# %% n = 2: three edge midpoints, every pair joined by a doubled weight of 4.
q2 = NTriangulationQuiver(T1, 2)
for row in q2.Q2:
    print(row)

# %% n = 3 adds an interior vertex per triangle.
q3 = NTriangulationQuiver(T1, 3)
kinds = [v.kind for v in q3.vertices]
print(q3.size, "vertices:", kinds.count("edge"), "edge,", kinds.count("interior"), "interior")
assert q3.size == expected_vertex_count(1, 1, 3)
