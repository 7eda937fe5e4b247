"""Balanced lattices, centers and ranks.

The center of the balanced quantum torus is spanned by the puncture
b-vectors when q is generic.  At a root of unity it grows, and the algebra
becomes a free module of finite rank over it.
"""

# %%
from fgtorus import balanced
from fgtorus.coeff import tower_from
from fgtorus.quiver import NTriangulationQuiver
from fgtorus.surface import new_surface

S = new_surface(1, 2)
q = NTriangulationQuiver(S, 3)
bl = balanced.balanced_lattice(q)
print("|V| =", q.size, " rank B =", bl.lattice.rank)

# %% Generic center: one b-vector for each puncture and each 1 <= i <= n-1.
rep = balanced.kernel_generators(bl)
for g in rep.generators:
    print(g)
print("kernel rank", rep.kernel_rank, "index of the b-span", rep.index)

# %% Roots of unity.  M is the order of the square root of q-hat.
for M in (20, 36, 12):
    tw = tower_from(3, M)
    r = balanced.rank_over_center(bl, tw)
    print(f"M={M:3d}  N''={tw.N2} d={tw.d} N={tw.N}  rank={r.rank}  formula={r.formula}")

# %% The pairing on B in normal form: g ones, then n's, then the central block.
nf = balanced.normal_form_B(bl)
print("s =", nf.s, " zero block", nf.zeros)
