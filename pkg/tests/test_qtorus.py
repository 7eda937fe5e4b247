import random

import pytest
from hypothesis import given, settings, strategies as st

from fgtorus import intlat, qtorus
from fgtorus.coeff import cyclotomic, tower_from
from fgtorus.qtorus import LatticeMismatch, TorusContext, context

from conftest import built

Q3 = ((0, 2, -4), (-2, 0, 6), (4, -6, 0))
exps = st.lists(st.integers(-2, 2), min_size=3, max_size=3).map(tuple)


def word_product(ctx, k, t):
    """Z^k Z^t by expanding both monomials into generator words.

    Z^k = ω̂^{-Σ_{i<j} k_i k_j Q_ij} Z_1^{k_1} ... Z_r^{k_r}; the concatenated
    word is sorted one adjacent swap at a time using Z_i Z_j = ω̂^{2 Q_ij} Z_j Z_i.
    """
    Q2, r = ctx.Q2, ctx.size
    word = [i for i in range(r) for _ in range(abs(k[i]))] + [i for i in range(r) for _ in range(abs(t[i]))]
    signs = [1 if k[i] > 0 else -1 for i in range(r) for _ in range(abs(k[i]))]
    signs += [1 if t[i] > 0 else -1 for i in range(r) for _ in range(abs(t[i]))]
    # half-exponent of ω̂ accumulated
    phase = 0
    for v in (k, t):
        phase -= sum(v[i] * v[j] * Q2[i][j] for i in range(r) for j in range(i + 1, r))
    # bubble sort into generator order
    w = list(zip(word, signs))
    changed = True
    while changed:
        changed = False
        for a in range(len(w) - 1):
            (i, si), (j, sj) = w[a], w[a + 1]
            if i > j:
                # Z_i^si Z_j^sj = ω̂^{2 si sj Q_ij} Z_j^sj Z_i^si
                phase += 2 * si * sj * Q2[i][j]
                w[a], w[a + 1] = w[a + 1], w[a]
                changed = True
    total = tuple(a + b for a, b in zip(k, t))
    # Weyl normalisation of the ordered word
    phase += sum(total[i] * total[j] * Q2[i][j] for i in range(r) for j in range(i + 1, r))
    return ctx.monomial(total).scale(ctx.ring.half(phase * ctx.level))


def test_unit_and_inverse():
    ctx = context(Q3)
    t = (1, -2, 1)
    assert ctx.monomial((0, 0, 0)) * ctx.monomial(t) == ctx.monomial(t)
    assert ctx.monomial(t) * ctx.monomial(tuple(-x for x in t)) == ctx.one()


@settings(max_examples=80, deadline=None)
@given(exps, exps)
def test_word_oracle(k, t):
    ctx = context(Q3)
    assert ctx.monomial(k) * ctx.monomial(t) == word_product(ctx, k, t)


@settings(max_examples=50, deadline=None)
@given(exps, exps, exps)
def test_associative(a, b, c):
    ctx = TorusContext(Q3, cyclotomic(12), 1)
    x, y, z = (ctx.monomial(v) + ctx.one() for v in (a, b, c))
    assert (x * y) * z == x * (y * z)


def test_commutation_check():
    ctx = context(Q3)
    assert qtorus.commutation_check(ctx, (1, 2, 0), (1, 2, 0)) == 0
    assert qtorus.commutation_check(ctx, (1, 0, 0), (0, 1, 0)) == 2


@pytest.mark.parametrize("g,m,n", [(1, 1, 2), (1, 1, 3), (0, 4, 3)])
def test_balanced_phase_divisible(g, m, n):
    _, q, bl = built(g, m, n)
    ctx = context(q)
    rng = random.Random(0)
    for _ in range(50):
        k, t = (intlat.vecmat([rng.randint(-2, 2) for _ in bl.basis], bl.basis) for _ in range(2))
        assert qtorus.commutation_check(ctx, k, t) % (2 * n) == 0


def test_lattice_mismatch():
    a = context(Q3).monomial((1, 0, 0))
    b = context(((0, 2), (-2, 0))).monomial((1, 0))
    with pytest.raises(LatticeMismatch):
        a * b


def test_frobenius():
    tw = tower_from(2, 20)
    _, q, bl = built(1, 1, 2)
    src = TorusContext(q.Q2, tw.field, tw.N**2)
    dst = TorusContext(q.Q2, tw.field, 1)
    assert qtorus.frobenius(5, src.one(), dst) == dst.one()
    assert qtorus.frobenius(5, src.monomial((1, 0, 0)), dst) == dst.monomial((5, 0, 0))
    rng = random.Random(4)
    for _ in range(100):
        k, t = (intlat.vecmat([rng.randint(-3, 3) for _ in bl.basis], bl.basis) for _ in range(2))
        x, y = src.monomial(k), src.monomial(t)
        assert qtorus.frobenius(5, x * y, dst) == qtorus.frobenius(5, x, dst) * qtorus.frobenius(5, y, dst)


def test_center_lattice_modes():
    L = intlat.Lattice.full(3)
    zero = ((0,) * 3,) * 3
    assert qtorus.center_lattice(L, zero) == L
    _, q, bl = built(1, 1, 3)
    assert qtorus.center_lattice(bl.lattice, q.Q2) == bl.kernel
    tw = tower_from(3, 20)
    root = qtorus.center_lattice(bl.lattice, q.Q2, "root", tw.N2)
    assert root == bl.B_d(tw.d).scaled(tw.N) + bl.kernel


def test_torus_loop_image():
    _, q, _ = built(1, 1, 2)
    li = qtorus.loop_image(q, q.surface.punctures[0], 1)
    ctx = context(q)
    assert li.element == ctx.monomial((2, 2, 2)) + ctx.monomial((-2, -2, -2))
    assert li.passed


@pytest.mark.parametrize("g,m,n", [(1, 1, 3), (0, 3, 3), (1, 2, 2), (1, 1, 4)])
def test_loop_images_central(g, m, n):
    _, q, _ = built(g, m, n)
    for p in q.surface.punctures:
        for k in range(1, n):
            assert qtorus.loop_image(q, p, k).passed


@pytest.mark.parametrize("n,total", [(2, 4), (3, 8)])
def test_p4_check(n, total):
    rep = qtorus.p4_corner_check(n)
    assert rep.identities == rep.passed_identities == total
    assert rep.noncommuting_pairs == 0


def test_json_round_trip():
    ctx = TorusContext(Q3, cyclotomic(20), 1)
    x = ctx.monomial((1, 2, -1)).scale(cyclotomic(20).zeta(3)) + ctx.monomial((0, 0, 1))
    assert qtorus.torus_from_json(ctx, x.to_json_obj()) == x
