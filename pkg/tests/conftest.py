from functools import lru_cache

import pytest

from fgtorus.balanced import balanced_lattice
from fgtorus.quiver import NTriangulationQuiver
from fgtorus.surface import new_surface


@lru_cache(maxsize=None)
def built(g: int, m: int, n: int):
    """(surface, quiver, balanced lattice) for the standard triangulation."""
    S = new_surface(g, m)
    q = NTriangulationQuiver(S, n)
    return S, q, balanced_lattice(q)


@pytest.fixture
def t1():
    return new_surface(1, 1)


@pytest.fixture
def sphere3():
    return new_surface(0, 3)
