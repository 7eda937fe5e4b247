"""Reduced power elementary polynomials.

P-bar_{m,k} rewrites e_k(c^m) in terms of e_1(c), ..., e_{n-1}(c) when the
c_i multiply to one.
"""

# %%
from fractions import Fraction

from fgtorus.coeff import cyclotomic
from fgtorus.sympoly import elementary, elementary_all, pbar, solve_shadow

for n in (2, 3):
    for m in (2, 3):
        print(f"n={n} m={m}:", [str(pbar(m, k, n)) for k in range(1, n)])

# %% Check on a rational tuple.
c = [Fraction(2), Fraction(-1, 3), Fraction(-3, 2)]
ys = elementary_all(c)
print(pbar(4, 1, 3).evaluate(ys, Fraction(1)), "==", elementary([x**4 for x in c], 1))

# %% Inverting the relation inside a cyclotomic field.
F = cyclotomic(20)
print(len(solve_shadow(5, (F.one(),) * 3)), "solutions for n=3, m=5, s=(1,1,1)")
