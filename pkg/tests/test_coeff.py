from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from fgtorus.coeff import FORMAL, DivisionByZero, cyclotomic, order_of, tower_from

F20 = cyclotomic(20)


@pytest.mark.parametrize(
    "n,M,orders",
    [(2, 20, (5, 5, 1, 5)), (3, 36, (9, 3, 3, 1)), (3, 20, (5, 5, 1, 5))],
)
def test_towers(n, M, orders):
    tw = tower_from(n, M)
    assert (tw.N2, tw.N1, tw.d, tw.N) == orders


def test_tower_eta_half():
    assert tower_from(2, 20).eta_half_exponent % 20 == 5
    assert tower_from(3, 20).r2 and not tower_from(3, 36).r2


def test_field_basics():
    F4 = cyclotomic(4)
    assert F4.zeta() ** 2 == -F4.one()
    assert order_of(F20.zeta(4)) == 5
    assert order_of(F20.from_rational(2)) is None
    x = sympy.Symbol("x")
    coeffs = sympy.Poly(sympy.cyclotomic_poly(20, x), x).all_coeffs()
    z = F20.zeta()
    val = F20.zero()
    for c in coeffs:
        val = val * z + int(c)
    assert val.is_zero()


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        F20.zero().inverse()
    with pytest.raises(DivisionByZero):
        FORMAL.zero().inverse()


def test_rational_detection():
    assert (F20.zeta(5) ** 2).rational() == -1
    assert F20.zeta(1).rational() is None
    assert F20.from_rational(Fraction(3, 4)).rational() == Fraction(3, 4)


elems = st.lists(st.integers(-4, 4), min_size=8, max_size=8).map(
    lambda cs: sum((F20.zeta(i) * c for i, c in enumerate(cs)), F20.zero())
)


@settings(max_examples=60, deadline=None)
@given(elems, elems, elems)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    if not a.is_zero():
        assert a * a.inverse() == F20.one()
        assert (b / a) * a == b


@settings(max_examples=60, deadline=None)
@given(st.integers(-50, 50), st.integers(-50, 50))
def test_zeta_powers(i, j):
    assert F20.zeta(i) * F20.zeta(j) == F20.zeta(i + j)
    assert F20.half(i) == F20.zeta(i)


laurent = st.dictionaries(st.integers(-5, 5), st.integers(-3, 3), max_size=4).map(
    lambda d: sum((FORMAL.half(e) * c for e, c in d.items()), FORMAL.zero())
)


@settings(max_examples=60, deadline=None)
@given(laurent, laurent, laurent)
def test_formal_ring(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * (b * c) == (a * b) * c
    assert FORMAL.half(3) * FORMAL.half(-3) == FORMAL.one()
