from fractions import Fraction
from math import prod

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from fgtorus.coeff import cyclotomic
from fgtorus.sympoly import ProductNotOne, Unrepresentable, elementary, elementary_all, field_roots, pbar, solve_shadow

y1 = sympy.Symbol("y1")

nonzero = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(lambda x: x != 0)


@st.composite
def unit_tuples(draw, max_n=5):
    n = draw(st.integers(2, max_n))
    c = draw(st.lists(nonzero, min_size=n - 1, max_size=n - 1))
    return c + [1 / prod(c, start=Fraction(1))]


@pytest.mark.parametrize("n", range(2, 6))
def test_first_power(n):
    for k in range(1, n):
        assert pbar(1, k, n).as_dict() == {tuple(int(i == k - 1) for i in range(n - 1)): 1}


def test_pbar_examples():
    assert sympy.expand(pbar(2, 1, 2).to_sympy() - (y1**2 - 2)) == 0
    assert str(pbar(2, 1, 2)) == "y1**2 - 2"
    assert sympy.expand(pbar(3, 1, 2).to_sympy() - (y1**3 - 3 * y1)) == 0


def test_pbar_range():
    with pytest.raises(ValueError):
        pbar(2, 0, 3)
    with pytest.raises(ValueError):
        pbar(0, 1, 3)


@settings(max_examples=50, deadline=None)
@given(unit_tuples(), st.integers(1, 6))
def test_evaluation_identity(c, m):
    n = len(c)
    ys = elementary_all(c)
    for k in range(1, n):
        assert pbar(m, k, n).evaluate(ys, Fraction(1)) == elementary([x**m for x in c], k)


@settings(max_examples=25, deadline=None)
@given(unit_tuples(max_n=4), st.integers(1, 3), st.integers(1, 3))
def test_composition(c, a, b):
    # P̄_{ab} = P̄_a ∘ P̄_b
    n = len(c)
    ys = elementary_all(c)
    inner = [pbar(b, k, n).evaluate(ys, Fraction(1)) for k in range(1, n)]
    for k in range(1, n):
        assert pbar(a * b, k, n).evaluate(ys, Fraction(1)) == pbar(a, k, n).evaluate(inner, Fraction(1))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=1, max_size=5))
def test_elementary_vs_expansion(c):
    x = sympy.Symbol("x")
    coeffs = sympy.Poly(prod((x - v for v in c), start=sympy.Integer(1)), x).all_coeffs()
    for k in range(len(c) + 1):
        assert elementary(c, k) == (-1) ** k * coeffs[k]


def test_elementary_edges():
    assert elementary([2, 3, 5], 3) == 30
    assert elementary([1] * 4, 1) == 4
    assert elementary([7, 8], 0) == 1


def test_shadow_m1():
    F = cyclotomic(4)
    s = (F.zeta(1), F.zeta(-1))
    assert solve_shadow(1, s) == [(F.zero(),)]


def test_shadow_square_ones():
    F = cyclotomic(4)
    sols = solve_shadow(2, (F.one(), F.one()))
    # c ∈ {±1, ±i} with c₁c₂ = 1 and c_i² = 1 forces c = ±(1, 1)
    assert sorted(int(x[0].rational()) for x in sols) == [-2, 2]
    for (x,) in sols:
        assert pbar(2, 1, 2).evaluate((x,), F.one()) == F.from_rational(2)


def test_shadow_product_not_one():
    F = cyclotomic(4)
    with pytest.raises(ProductNotOne):
        solve_shadow(2, (F.one(), F.from_rational(2)))


def test_field_roots():
    F = cyclotomic(8)
    roots = field_roots(F.zeta(2), 2)
    assert len(roots) == 2 and all(r**2 == F.zeta(2) for r in roots)
    with pytest.raises(Unrepresentable):
        field_roots(cyclotomic(4).zeta(1), 2)
    with pytest.raises(Unrepresentable):
        field_roots(F.from_rational(2), 2)


def test_shadow_rank3():
    F = cyclotomic(20)
    sols = solve_shadow(5, (F.one(),) * 3)
    assert len(sols) == 7
