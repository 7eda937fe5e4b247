import random

import pytest

from fgtorus.quiver import NTriangulationQuiver, expected_vertex_count, quadrilateral_quiver, triangle_quiver
from fgtorus.surface import standard_surfaces

from conftest import built


def test_triangle_n2():
    q = triangle_quiver(2)
    assert q.size == 3
    nonzero = sorted(abs(x) for r in q.Q2 for x in r if x)
    # a 3-cycle of doubled weight 2, no half-arrows
    assert nonzero == [2] * 6
    for i in range(3):
        assert sum(1 for x in q.Q2[i] if x > 0) == 1


def test_triangle_n3():
    q = triangle_quiver(3)
    assert q.size == 7
    assert sum(v.kind == "interior" for v in q.vertices) == 1


def test_n_too_small(t1):
    with pytest.raises(ValueError):
        NTriangulationQuiver(t1, 1)


def test_torus_n2(t1):
    q = NTriangulationQuiver(t1, 2)
    assert q.size == 3
    for i in range(3):
        for j in range(3):
            assert abs(q.Q2[i][j]) == (4 if i != j else 0)


def test_sphere_n2(sphere3):
    q = NTriangulationQuiver(sphere3, 2)
    assert q.size == 3
    assert all(x == 0 for r in q.Q2 for x in r)


@pytest.mark.parametrize("gm", list(standard_surfaces()))
@pytest.mark.parametrize("n", [2, 3, 4])
def test_vertex_count(gm, n):
    g, m = gm
    q = built(g, m, n)[1]
    assert q.size == expected_vertex_count(g, m, n) == 2 * (n * n - 1) * (g - 1) + (n * n - 1) * m


@pytest.mark.parametrize("n", [2, 3, 4])
def test_antisymmetric_integer(n):
    for q in (triangle_quiver(n), quadrilateral_quiver(n), built(1, 2, n)[1]):
        for i in range(q.size):
            for j in range(q.size):
                assert q.Q2[i][j] == -q.Q2[j][i]


def test_pullback_zero_and_indicator(t1):
    q = NTriangulationQuiver(t1, 3)
    zero = [0] * q.size
    for t in range(2):
        assert not any(q.pullback(zero, t))
    v = next(i for i, info in enumerate(q.vertices) if info.kind == "edge")
    ind = [int(i == v) for i in range(q.size)]
    total = sum(sum(q.pullback(ind, t)) for t in range(2))
    assert total == len(q.vertices[v].preimages)


def test_pullback_multiplicity():
    q = built(1, 2, 3)[1]
    rng = random.Random(3)
    vec = [rng.randint(-5, 5) for _ in range(q.size)]
    total = sum(sum(q.pullback(vec, t)) for t in range(q.surface.n_triangles))
    assert total == sum(x * len(info.preimages) for x, info in zip(vec, q.vertices))


def test_json_has_triplets(t1):
    obj = NTriangulationQuiver(t1, 2).to_json_obj()
    assert len(obj["vertices"]) == 3
    assert all(len(t) == 3 for t in obj["doubledQ"])
