"""Flips as mutation sequences, and quantum mutation of the balanced torus.

For n = 2 one mutation at the diagonal realises a flip of the quadrilateral.
For n = 3 a breadth-first search finds a sequence, which is then certified by
checking that the b-monomials of every corner are fixed.
"""

# %%
from fgtorus import balanced, mutation
from fgtorus.coeff import FORMAL
from fgtorus.qtorus import TorusContext
from fgtorus.surface import quadrilateral_piece

P = quadrilateral_piece()
for n in (2, 3):
    seq = mutation.find_flip_sequence(P, 0, n)
    print(f"n={n}: mutate at {seq.vertices}")

# %% Certification for n = 3.
n = 3
seq = mutation.find_flip_sequence(P, 0, n)
src, tgt, *_ = mutation.flip_region(P, 0, n)
for j in range(1, 5):
    bt = balanced.puncture_vectors(tgt, f"p{j}").b[1]
    img = mutation.as_monomial(mutation.theta(seq, TorusContext(tgt.Q2, FORMAL, 1).monomial(bt), n))
    print(f"p{j}:", next(iter(img.terms)), "==", balanced.puncture_vectors(src, f"p{j}").b[1])

# %% A single quantum mutation picks up a dilogarithm factor.
q = src
k = q.mutable()[0]
ctx = TorusContext(mutation.mutate_quiver(q.Q2, k), FORMAL, 1)
w = next(v for v in range(q.size) if q.Q2[k][v] and v != k)
x = ctx.monomial(tuple(n * (v == w) for v in range(q.size)))
print(mutation.nu(q.Q2, k, x, n, q.mutable()).to_json_obj())
