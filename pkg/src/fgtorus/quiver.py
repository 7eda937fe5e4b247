"""The n-triangulation quiver of a triangulated surface.

The signed adjacency matrix is stored doubled (``Q2 = 2Q``) so that every
entry is an integer: boundary half-arrows contribute ±1, interior arrows ±2.

Local coordinates in a triangle are barycentric triples ``(i, j, k)`` with
``i + j + k = n``; slot ``a`` of the triple belongs to corner ``a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .surface import SideRef, SurfaceData, triangle_piece, quadrilateral_piece

Coord = tuple[int, int, int]

# arrow directions: k1 decreases toward corner 2, and cyclically
DIRECTIONS: tuple[Coord, ...] = ((-1, 1, 0), (0, -1, 1), (1, 0, -1))


def local_vertices(n: int) -> list[Coord]:
    """Lattice points of the triangle minus its three corners, lexicographic."""
    if n < 2:
        raise ValueError("n must be at least 2")
    out = []
    for i in range(n, -1, -1):
        for j in range(n - i, -1, -1):
            k = n - i - j
            if max(i, j, k) < n:
                out.append((i, j, k))
    return out


def side_of(c: Coord) -> int | None:
    """Side index holding an edge vertex (side s has a zero in slot s + 2)."""
    zeros = [a for a in range(3) if c[a] == 0]
    if not zeros:
        return None
    return (zeros[0] + 1) % 3


def side_coord(n: int, s: int, r: int) -> Coord:
    """The r-th vertex along side s: n - r at corner s, r at corner s + 1."""
    c = [0, 0, 0]
    c[s] = n - r
    c[(s + 1) % 3] = r
    return tuple(c)  # type: ignore[return-value]


def triangle_arrows(n: int) -> list[tuple[Coord, Coord, int]]:
    """Arrows of the triangle quiver as (source, target, doubled weight)."""
    verts = set(local_vertices(n))
    out = []
    for v in sorted(verts, reverse=True):
        for d in DIRECTIONS:
            w = (v[0] + d[0], v[1] + d[1], v[2] + d[2])
            if w not in verts:
                continue
            sv, sw = side_of(v), side_of(w)
            same_side = sv is not None and sv == sw and (
                v[(sv + 2) % 3] == 0 and w[(sv + 2) % 3] == 0
            )
            out.append((v, w, 1 if same_side else 2))
    return out


@dataclass(frozen=True)
class VertexInfo:
    """A global small vertex.

    ``kind`` is ``"edge"`` (then ``key = (edge id, position)``) or
    ``"interior"`` (then ``key = (triangle, coords)``).  ``boundary`` names the
    unglued edge holding the vertex, if any.
    """

    kind: str
    key: tuple
    preimages: tuple[tuple[int, Coord], ...]
    boundary: int | None = None


class NTriangulationQuiver:
    """Quiver Γ_λ on the small vertices of an n-triangulation."""

    def __init__(self, surface: SurfaceData, n: int):
        if n < 2:
            raise ValueError("n must be at least 2")
        self.n = n
        self.surface = surface
        self._build()

    def _build(self) -> None:
        S, n = self.surface, self.n
        edges: list[SideRef] = [a for a, _ in S.gluings]
        unglued = S.unglued_sides()
        edges += unglued
        n_glued = len(S.gluings)
        part = S.partner()
        local: dict[tuple[int, Coord], int] = {}
        infos: list[VertexInfo] = []
        for e, (t, s) in enumerate(edges):
            for r in range(1, n):
                pre = [(t, side_coord(n, s, r))]
                if (t, s) in part:
                    u, q = part[(t, s)]
                    pre.append((u, side_coord(n, q, n - r)))
                vid = len(infos)
                for x in pre:
                    local[x] = vid
                infos.append(
                    VertexInfo("edge", (e, r), tuple(pre), None if e < n_glued else e)
                )
        for t in range(S.n_triangles):
            for c in local_vertices(n):
                if min(c) > 0:
                    local[(t, c)] = len(infos)
                    infos.append(VertexInfo("interior", (t, c), ((t, c),)))
        self.vertices: tuple[VertexInfo, ...] = tuple(infos)
        self._local = local
        size = len(infos)
        q2 = [[0] * size for _ in range(size)]
        arrows = triangle_arrows(n)
        for t in range(S.n_triangles):
            for v, w, wt in arrows:
                a, b = local[(t, v)], local[(t, w)]
                q2[a][b] += wt
                q2[b][a] -= wt
        self.Q2: tuple[tuple[int, ...], ...] = tuple(tuple(r) for r in q2)

    # -- accessors ---------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.vertices)

    def q2_rows(self) -> list[list[int]]:
        return [list(r) for r in self.Q2]

    def vertex_id(self, t: int, c: Coord) -> int:
        return self._local[(t, c)]

    def triangle_map(self, t: int) -> list[int]:
        """Global id of each local vertex of triangle ``t``, in local order."""
        return [self._local[(t, c)] for c in local_vertices(self.n)]

    @cached_property
    def boundary_vertices(self) -> list[int]:
        return [i for i, v in enumerate(self.vertices) if v.boundary is not None]

    def mutable(self) -> list[int]:
        return [i for i, v in enumerate(self.vertices) if v.boundary is None]

    def pullback(self, vec: Sequence[int], t: int) -> list[int]:
        """Values of ``vec`` on the local vertices of triangle ``t``."""
        return [vec[g] for g in self.triangle_map(t)]

    def pushforward(self, local_vec: Sequence[int], t: int) -> list[int]:
        """Sum a local vector into global coordinates (contributions add)."""
        out = [0] * self.size
        for g, x in zip(self.triangle_map(t), local_vec):
            out[g] += x
        return out

    def from_local_sum(self, per_triangle: dict[int, Sequence[int]]) -> list[int]:
        """The unique global vector whose pullbacks are the given local vectors.

        Missing triangles are read as zero.  Raises if the local values on the
        copies of a glued vertex disagree.
        """
        out: list[int | None] = [None] * self.size
        for t in range(self.surface.n_triangles):
            vals = per_triangle.get(t)
            for c, g in zip(local_vertices(self.n), self.triangle_map(t)):
                x = 0 if vals is None else vals[local_index(self.n, c)]
                if out[g] is None:
                    out[g] = x
                elif out[g] != x:
                    raise ValueError("local vectors disagree on a glued vertex")
        return [0 if x is None else x for x in out]

    def same_boundary_edge(self, a: int, b: int) -> bool:
        ea, eb = self.vertices[a].boundary, self.vertices[b].boundary
        return ea is not None and ea == eb

    def to_json_obj(self) -> dict:
        verts = []
        for i, v in enumerate(self.vertices):
            verts.append(
                {
                    "id": i,
                    "kind": v.kind,
                    "key": [v.key[0], list(v.key[1]) if v.kind == "interior" else v.key[1]],
                    "coords": [[t, list(c)] for t, c in v.preimages],
                    "boundary": v.boundary,
                }
            )
        trip = [[i, j, x] for i, r in enumerate(self.Q2) for j, x in enumerate(r) if x]
        return {"n": self.n, "vertices": verts, "doubledQ": trip}


_LOCAL_INDEX: dict[int, dict[Coord, int]] = {}


def local_index(n: int, c: Coord) -> int:
    tab = _LOCAL_INDEX.get(n)
    if tab is None:
        tab = {v: i for i, v in enumerate(local_vertices(n))}
        _LOCAL_INDEX[n] = tab
    return tab[c]


def build_quiver(surface: SurfaceData, n: int) -> NTriangulationQuiver:
    return NTriangulationQuiver(surface, n)


def triangle_quiver(n: int) -> NTriangulationQuiver:
    """The quiver of a single triangle (all sides boundary)."""
    return NTriangulationQuiver(triangle_piece(), n)


def quadrilateral_quiver(n: int) -> NTriangulationQuiver:
    return NTriangulationQuiver(quadrilateral_piece(), n)


def expected_vertex_count(genus: int, m: int, n: int) -> int:
    return 2 * (n * n - 1) * (genus - 1) + (n * n - 1) * m


def k_vector(n: int, j: int) -> list[int]:
    """The local function k_j (j = 0, 1, 2) on triangle vertices."""
    return [c[j] for c in local_vertices(n)]
