import itertools
import random

import pytest

from fgtorus import balanced, intlat
from fgtorus.balanced import is_balanced
from fgtorus.coeff import order_for, tower_from
from fgtorus.intlat import Lattice
from fgtorus.quiver import quadrilateral_quiver, triangle_quiver
from fgtorus.surface import standard_surfaces

from conftest import built

GRID = [(g, m, n) for g, m in standard_surfaces() for n in (2, 3)]


@pytest.mark.parametrize("g,m,n", GRID)
def test_contains_n_lattice(g, m, n):
    _, q, bl = built(g, m, n)
    assert Lattice.full(q.size, n) <= bl.lattice


def test_membership_matches_definition():
    _, q, bl = built(1, 1, 3)
    rng = random.Random(0)
    for _ in range(200):
        k = [rng.randint(-3, 3) for _ in range(q.size)]
        assert is_balanced(q, k) == (intlat.solve_left(bl.basis, k) is not None)


def test_sphere_kernel():
    rep = balanced.kernel_generators(built(0, 3, 3)[2])
    assert rep.kernel_rank == (3 - 1) * 3 == 6
    # n = 2: Q vanishes, so the whole balanced lattice is central
    bl = built(0, 3, 2)[2]
    assert bl.kernel == bl.lattice


def test_torus_puncture_vectors():
    _, q, _ = built(1, 1, 2)
    pv = balanced.puncture_vectors(q, q.surface.punctures[0])
    assert pv.a[1] == pv.b[1] == (2, 2, 2)
    assert pv.d[1] == (2, 2, 2) and pv.d[2] == (-2, -2, -2)


@pytest.mark.parametrize("g,m,n", GRID + [(1, 1, 4)])
def test_a_vectors_central(g, m, n):
    _, q, _ = built(g, m, n)
    for p in q.surface.punctures:
        pv = balanced.puncture_vectors(q, p)
        for i in range(1, n):
            assert intlat.vecmat(list(pv.a[i]), q.Q2) == [0] * q.size
        assert [sum(col) for col in zip(*pv.d.values())] == [0] * q.size


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_hk_polygon(n):
    for q in (triangle_quiver(n), quadrilateral_quiver(n)):
        H, K = balanced.hk_matrices(q)
        prod = [[sum(H[i][t] * K[t][j] for t in range(q.size)) for j in range(q.size)] for i in range(q.size)]
        assert prod == [[n * (i == j) for j in range(q.size)] for i in range(q.size)]


@pytest.mark.parametrize("n", [2, 3])
def test_hk_balanced_criterion(n):
    rng = random.Random(n)
    for q in (triangle_quiver(n), quadrilateral_quiver(n)):
        H, _ = balanced.hk_matrices(q)
        for _ in range(200):
            k = [rng.randint(-n, n) for _ in range(q.size)]
            assert balanced.hk_balanced_agrees(q, H, k)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_p4_rows(n):
    rows = balanced.p4_boundary_rows(n)
    assert len(rows) == 4 * (n - 1)
    assert len({r.vertex for r in rows}) == len(rows)


def test_kernel_generators_examples():
    rep = balanced.kernel_generators(built(1, 1, 2)[2])
    assert rep.generators == [(2, 2, 2)] and rep.kernel_rank == 1 and rep.index == 1
    rep = balanced.kernel_generators(built(0, 3, 2)[2])
    assert len(rep.generators) == 3 == rep.kernel_rank


@pytest.mark.parametrize("g,m,n", GRID)
def test_kernel_is_b_span(g, m, n):
    rep = balanced.kernel_generators(built(g, m, n)[2])
    assert rep.passed and rep.independent
    assert rep.kernel_rank == (n - 1) * m


@pytest.mark.parametrize("g,m,n", GRID)
def test_index_Bd(g, m, n):
    bl = built(g, m, n)[2]
    for d in balanced.gcd_divisors(n):
        assert balanced.index_Bd(bl, d) == d ** (2 * g)


@pytest.mark.parametrize(
    "g,m,n,M,rank",
    [(1, 1, 2, 20, 25), (0, 3, 2, 20, 1), (1, 1, 3, 20, 5**6), (1, 1, 3, 36, 9), (1, 2, 2, 8, 1), (1, 2, 2, 20, 5**4)],
)
def test_rank_values(g, m, n, M, rank):
    tw = tower_from(n, M)
    rep = balanced.rank_over_center(built(g, m, n)[2], tw)
    assert (rep.rank, rep.formula, rep.passed) == (rank, rank, True)


@pytest.mark.parametrize("n2,n", [(5, 2), (2, 2), (9, 3), (5, 3), (6, 3)])
def test_rank_grid(n2, n):
    tw = tower_from(n, order_for(n2))
    assert tw.N2 == n2
    for g, m in standard_surfaces():
        assert balanced.rank_over_center(built(g, m, n)[2], tw).passed


def test_normal_form_examples():
    nf = balanced.normal_form_B(built(1, 1, 2)[2])
    assert (nf.s, nf.zeros) == ([1], 1)
    nf = balanced.normal_form_B(built(1, 1, 3)[2])
    assert (nf.s, nf.zeros) == ([1, 3, 3], 2)
    nf = balanced.normal_form_B(built(0, 3, 2)[2])
    assert (nf.s, nf.zeros) == ([], 3)


@pytest.mark.parametrize("g,m,n", GRID)
def test_normal_form_grid(g, m, n):
    nf = balanced.normal_form_B(built(g, m, n)[2])
    assert len(nf.s) == nf.expected_r == (n * n - 1) * (g - 1) + n * (n - 1) * m // 2


def test_mbl_lattice_brute_force():
    _, q, bl = built(1, 1, 2)
    L = balanced.mbl_lattice(q, bl)
    assert Lattice.full(q.size, 2) <= L and bl.lattice <= L
    for x in itertools.product(range(4), repeat=3):
        ok = all(sum(q.Q2[u][v] * x[v] for v in range(3)) % 4 == 0 for u in range(3))
        assert (intlat.solve_left(L.rows(), list(x)) is not None) == ok
