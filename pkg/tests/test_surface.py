import json

import pytest
from hypothesis import given, settings, strategies as st

from fgtorus.surface import (
    NotFlippable,
    NotTriangulable,
    SurfaceData,
    canonical_form,
    cut_quadrilateral,
    flip,
    isomorphic,
    new_surface,
    standard_surfaces,
    validate,
)


def test_torus_counts(t1):
    assert t1.n_triangles == 2
    assert t1.n_edges == 3
    assert len(t1.punctures) == 1
    corners = [c for tri in t1.triangles for c in tri]
    assert len(corners) == 6 and len(set(corners)) == 1


def test_sphere_counts(sphere3):
    assert (sphere3.n_triangles, sphere3.n_edges) == (2, 3)
    assert all(len(set(tri)) == 3 for tri in sphere3.triangles)


@pytest.mark.parametrize("gm", [(0, 1), (0, 2), (-1, 3), (1, 0)])
def test_not_triangulable(gm):
    with pytest.raises(NotTriangulable):
        new_surface(*gm)


@pytest.mark.parametrize("gm", list(standard_surfaces()))
def test_standard_surfaces_valid(gm):
    S = new_surface(*gm)
    assert validate(S) == []
    g, m = gm
    assert S.n_triangles == 4 * g - 4 + 2 * m
    assert S.n_edges == 6 * g - 6 + 3 * m


def test_json_round_trip(t1):
    text = t1.to_json()
    assert json.loads(text)["genus"] == 1
    assert SurfaceData.from_json(text) == t1


def test_validate_unglued(t1):
    broken = SurfaceData(t1.genus, t1.punctures, t1.triangles, t1.gluings[1:])
    assert "unglued side" in validate(broken)


def test_validate_self_folded(t1):
    (a, _), *rest = t1.gluings
    bad = SurfaceData(t1.genus, t1.punctures, t1.triangles, (((a[0], 0), (a[0], 1)),) + tuple(rest))
    assert "self-folded edge" in validate(bad)


@pytest.mark.parametrize("e", range(3))
def test_flip_torus_valid_and_involutive(t1, e):
    once = flip(t1, e)
    assert validate(once) == []
    assert isomorphic(flip(once, e), t1)


def test_flip_degree_one_rejected(sphere3):
    # every flip of the two-triangle sphere leaves a degree-1 puncture
    for e in range(sphere3.n_edges):
        with pytest.raises(NotFlippable):
            flip(sphere3, e)


def test_cut_quadrilateral_torus(t1):
    for e in range(3):
        quad = cut_quadrilateral(t1, e)
        assert set(quad.corner_map.values()) == set(t1.punctures)
        assert set(quad.corner_map) == {"p1", "p2", "p3", "p4"}


def test_cut_quadrilateral_sphere(sphere3):
    quad = cut_quadrilateral(sphere3, 0)
    assert len(set(quad.corner_map.values())) <= 3


def test_cut_bad_edge(t1):
    with pytest.raises((IndexError, ValueError)):
        cut_quadrilateral(t1, 17)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(list(standard_surfaces())), st.integers(0, 1000), st.lists(st.integers(0, 20), max_size=6))
def test_random_flips_stay_valid(gm, seed, edges):
    S = new_surface(*gm, seed=seed)
    for e in edges:
        e %= S.n_edges
        try:
            S = flip(S, e)
        except NotFlippable:
            continue
    assert validate(S) == []
    assert canonical_form(SurfaceData.from_json(S.to_json())) == canonical_form(S)
