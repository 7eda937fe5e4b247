import random

import pytest

from fgtorus import homol
from fgtorus.balanced import NotBalanced

from conftest import built


def test_residues_of_n_lattice():
    _, q, _ = built(1, 1, 3)
    k = [3 * (i == 0) for i in range(q.size)]
    assert homol.residues(q, k) == [(0, 0, 0)] * q.surface.n_triangles
    assert not any(homol.edge_cochain(q, k))


def test_not_balanced():
    _, q, _ = built(1, 1, 3)
    with pytest.raises(NotBalanced):
        homol.residues(q, [1] + [0] * (q.size - 1))


@pytest.mark.parametrize("g,m,n", [(1, 1, 2), (1, 1, 3), (2, 1, 2), (0, 4, 3)])
def test_pairings_basic(g, m, n):
    _, q, bl = built(g, m, n)
    rng = random.Random(1)
    for _ in range(20):
        k = homol.random_balanced(bl, rng)
        e = [n * (i == 0) for i in range(q.size)]
        for f in (homol.pairing_algebraic, homol.pairing_edge_formula, homol.pairing_geometric):
            assert f(q, k, k) == 0
            assert f(q, k, e) == 0


@pytest.mark.parametrize("g,m,n", [(1, 1, 2), (1, 1, 3), (1, 2, 3), (2, 1, 2)])
def test_three_way_agreement(g, m, n):
    rep = homol.agreement_suite(built(g, m, n)[2], pairs=40, seed=5)
    assert rep.passed, rep.to_json_obj()


def test_geometric_bilinear():
    _, q, bl = built(1, 1, 3)
    rng = random.Random(2)
    for _ in range(30):
        k, k2, h = (homol.random_balanced(bl, rng) for _ in range(3))
        s = [a + b for a, b in zip(k, k2)]
        lhs = homol.pairing_geometric(q, s, h)
        assert lhs == (homol.pairing_geometric(q, k, h) + homol.pairing_geometric(q, k2, h)) % 3


@pytest.mark.parametrize("g,m,n,order", [(1, 1, 2, 4), (0, 3, 2, 1), (0, 4, 3, 1), (2, 1, 2, 16), (1, 2, 3, 9)])
def test_image_order(g, m, n, order):
    assert homol.image_order(built(g, m, n)[2]) == order
