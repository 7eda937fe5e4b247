"""Punctured surfaces with ideal triangulations.

A triangle has corner slots 0, 1, 2 in counterclockwise order.  Side ``s``
runs from corner ``s`` to corner ``s + 1`` (mod 3).  Gluing side ``(t, s)`` to
``(t2, s2)`` identifies corner ``s`` of ``t`` with corner ``s2 + 1`` of ``t2`` and
corner ``s + 1`` with corner ``s2``; this is the only orientation reversing
identification, so no orientation flag is stored.

Edges of a triangulation are indexed by position in ``gluings``.
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Iterable

SideRef = tuple[int, int]
Gluing = tuple[SideRef, SideRef]


class NotTriangulable(ValueError):
    pass


class NotFlippable(ValueError):
    pass


class InvalidEdge(ValueError):
    pass


@dataclass(frozen=True)
class SurfaceData:
    """An ideal triangulation: triangles with corner labels plus side gluings.

    Disc pieces (the quadrilateral cut out around an edge, or a single
    triangle) are represented the same way with some sides left unglued.
    """

    genus: int
    punctures: tuple[str, ...]
    triangles: tuple[tuple[str, str, str], ...]
    gluings: tuple[Gluing, ...]
    triangle_ids: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.triangle_ids:
            object.__setattr__(self, "triangle_ids", tuple(range(len(self.triangles))))

    # -- basic queries -----------------------------------------------------

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    @property
    def n_edges(self) -> int:
        return len(self.gluings) + len(self.unglued_sides())

    def partner(self) -> dict[SideRef, SideRef]:
        out: dict[SideRef, SideRef] = {}
        for a, b in self.gluings:
            out[a] = b
            out[b] = a
        return out

    def unglued_sides(self) -> list[SideRef]:
        p = self.partner()
        return [(t, s) for t in range(self.n_triangles) for s in range(3) if (t, s) not in p]

    def side_ends(self, side: SideRef) -> tuple[str, str]:
        t, s = side
        c = self.triangles[t]
        return c[s], c[(s + 1) % 3]

    def edge_sides(self, e: int) -> Gluing:
        if not 0 <= e < len(self.gluings):
            raise InvalidEdge(f"no interior edge with id {e}")
        return self.gluings[e]

    def puncture_degree(self, p: str) -> int:
        """Number of distinct edges incident to ``p`` (a loop counts once)."""
        edges = [self.side_ends(a) for a, _ in self.gluings]
        edges += [self.side_ends(sd) for sd in self.unglued_sides()]
        return sum(1 for ends in edges if p in ends)

    def corner_preimages(self, p: str) -> list[tuple[int, int]]:
        return [(t, j) for t, c in enumerate(self.triangles) for j in range(3) if c[j] == p]

    # -- serialization -----------------------------------------------------

    def to_json_obj(self) -> dict[str, Any]:
        ids = self.triangle_ids

        def ref(x: SideRef) -> list[int]:
            return [ids[x[0]], x[1]]

        return {
            "genus": self.genus,
            "punctures": list(self.punctures),
            "triangles": [{"id": i, "corners": list(c)} for i, c in zip(ids, self.triangles)],
            "gluings": [{"a": ref(a), "b": ref(b)} for a, b in self.gluings],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict[str, Any]) -> "SurfaceData":
        tris = obj["triangles"]
        ids = tuple(int(t["id"]) for t in tris)
        index = {tid: i for i, tid in enumerate(ids)}
        if len(index) != len(ids):
            raise ValueError("duplicate triangle id")

        def ref(x: list[int]) -> SideRef:
            return index[int(x[0])], int(x[1])

        return cls(
            genus=int(obj["genus"]),
            punctures=tuple(str(p) for p in obj["punctures"]),
            triangles=tuple(tuple(str(c) for c in t["corners"]) for t in tris),  # type: ignore[misc]
            gluings=tuple((ref(g["a"]), ref(g["b"])) for g in obj["gluings"]),
            triangle_ids=ids,
        )

    @classmethod
    def from_json(cls, text: str) -> "SurfaceData":
        return cls.from_json_obj(json.loads(text))


def dumps(surface: SurfaceData) -> str:
    return surface.to_json()


def loads(text: str) -> SurfaceData:
    return SurfaceData.from_json(text)


# ---------------------------------------------------------------------------
# validation


def validate(surface: SurfaceData, closed: bool = True) -> list[str]:
    """Names of violated invariants; empty iff valid.

    With ``closed=False`` unglued sides are allowed (disc pieces) and the
    Euler count checks are skipped.
    """
    msgs: list[str] = []
    S = surface
    seen: dict[SideRef, int] = {}
    for a, b in S.gluings:
        for x in (a, b):
            t, s = x
            if not (0 <= t < S.n_triangles and 0 <= s < 3):
                msgs.append("invalid side reference")
                continue
            seen[x] = seen.get(x, 0) + 1
    if any(c > 1 for c in seen.values()):
        msgs.append("side glued twice")
    if any(a == b for a, b in S.gluings):
        msgs.append("side glued to itself")
    if any(a[0] == b[0] for a, b in S.gluings):
        msgs.append("self-folded edge")
    if closed and len(seen) < 3 * S.n_triangles:
        msgs.append("unglued side")
    if msgs:
        return msgs
    for a, b in S.gluings:
        if a in seen and b in seen and a[0] < S.n_triangles and b[0] < S.n_triangles:
            pa, qa = S.side_ends(a)
            pb, qb = S.side_ends(b)
            if (pa, qa) != (qb, pb):
                msgs.append("corner labels disagree across gluing")
                break
    labels = {c for tri in S.triangles for c in tri}
    if labels - set(S.punctures):
        msgs.append("unknown puncture label")
    if closed:
        if set(S.punctures) - labels:
            msgs.append("puncture without corners")
        g, m = S.genus, len(S.punctures)
        if m < 1 or (g, m) in {(0, 1), (0, 2)}:
            msgs.append("not triangulable")
        if S.n_triangles != 4 * g - 4 + 2 * m:
            msgs.append("triangle count")
        if len(S.gluings) != 6 * g - 6 + 3 * m:
            msgs.append("edge count")
        if not msgs and not _is_connected(S):
            msgs.append("disconnected")
    if not msgs:
        for p in S.punctures:
            if p in labels and S.puncture_degree(p) < 2:
                msgs.append(f"puncture degree < 2 at {p}")
    if closed and not msgs and _vertex_classes(S) != len(S.punctures):
        msgs.append("corner identification does not match puncture labels")
    return msgs


def _is_connected(S: SurfaceData) -> bool:
    if S.n_triangles == 0:
        return True
    adj: dict[int, set[int]] = {t: set() for t in range(S.n_triangles)}
    for a, b in S.gluings:
        adj[a[0]].add(b[0])
        adj[b[0]].add(a[0])
    seen = {0}
    todo = [0]
    while todo:
        t = todo.pop()
        for u in adj[t] - seen:
            seen.add(u)
            todo.append(u)
    return len(seen) == S.n_triangles


def _vertex_classes(S: SurfaceData) -> int:
    """Number of vertex classes from the gluing itself (ignores labels)."""
    parent = {(t, j): (t, j) for t in range(S.n_triangles) for j in range(3)}

    def find(x: tuple[int, int]) -> tuple[int, int]:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (t, s), (u, r) in S.gluings:
        for x, y in (((t, s), (u, (r + 1) % 3)), ((t, (s + 1) % 3), (u, r))):
            parent[find(x)] = find(y)
    return len({find(x) for x in parent})


# ---------------------------------------------------------------------------
# construction


def _polygon_surface(genus: int) -> SurfaceData:
    """Fan triangulation of the 4g-gon with word a1 b1 a1^-1 b1^-1 ..."""
    k = 4 * genus
    tris = [("p0", "p0", "p0") for _ in range(k - 2)]

    # polygon side i runs from vertex i to i+1; find (triangle, side) holding it
    def side_of(i: int) -> SideRef:
        if i == 0:
            return (0, 0)
        if i == k - 1:
            return (k - 3, 2)
        return (i - 1, 1)

    gl: list[Gluing] = []
    for t in range(k - 3):
        gl.append(((t, 2), (t + 1, 0)))
    for blk in range(genus):
        base = 4 * blk
        gl.append((side_of(base), side_of(base + 2)))
        gl.append((side_of(base + 1), side_of(base + 3)))
    return SurfaceData(genus, ("p0",), tuple(tris), tuple(gl))


def _three_punctured_sphere() -> SurfaceData:
    tris = (("p0", "p1", "p2"), ("p0", "p2", "p1"))
    gl = (((0, 0), (1, 2)), ((0, 1), (1, 1)), ((0, 2), (1, 0)))
    return SurfaceData(0, ("p0", "p1", "p2"), tris, gl)


def cone(S: SurfaceData, t: int, label: str) -> SurfaceData:
    """Replace triangle ``t`` by three triangles meeting at a new puncture."""
    a, b, c = S.triangles[t]
    F = S.n_triangles
    t0, t1, t2 = t, F, F + 1
    tris = list(S.triangles) + [("", "", "")] * 2
    tris[t0] = (a, b, label)
    tris[t1] = (b, c, label)
    tris[t2] = (c, a, label)
    moved = {(t, 0): (t0, 0), (t, 1): (t1, 0), (t, 2): (t2, 0)}
    gl = [(moved.get(x, x), moved.get(y, y)) for x, y in S.gluings]
    gl += [((t0, 1), (t1, 2)), ((t1, 1), (t2, 2)), ((t2, 1), (t0, 2))]
    return SurfaceData(S.genus, S.punctures + (label,), tuple(tris), tuple(gl))


def new_surface(genus: int, m: int, seed: int = 0) -> SurfaceData:
    """A valid triangulation of the genus ``genus`` surface with ``m`` punctures."""
    if genus < 0 or m < 1 or (genus, m) in {(0, 1), (0, 2)}:
        raise NotTriangulable(f"(g, m) = ({genus}, {m}) is not triangulable")
    if genus == 0:
        S = _three_punctured_sphere()
    else:
        S = _polygon_surface(genus)
    while len(S.punctures) < m:
        S = cone(S, 0, f"p{len(S.punctures)}")
    rng = random.Random(seed)
    for _ in range(200):
        if not validate(S):
            return S
        e = rng.randrange(len(S.gluings))
        try:
            S = flip(S, e, check=False)
        except NotFlippable:
            pass
    raise NotTriangulable("repair by flips did not converge")


# ---------------------------------------------------------------------------
# flips and quadrilaterals


def _quad(S: SurfaceData, e: int) -> tuple[int, int, int, int]:
    (t, s), (u, r) = S.edge_sides(e)
    return t, s, u, r


def flip(S: SurfaceData, e: int, check: bool = True) -> SurfaceData:
    """Replace edge ``e`` by the other diagonal of its quadrilateral.

    The edge keeps its index.  With diagonal side ``s`` of ``t`` from P to Q
    and apex R, and side ``r`` of ``u`` from Q to P with apex S', the new
    triangles are ``t = (R, P, S')`` and ``u = (S', Q, R)``.
    """
    t, s, u, r = _quad(S, e)
    if t == u:
        raise NotFlippable("edge bounds a self-folded triangle")
    P, Q, R = (S.triangles[t][(s + i) % 3] for i in range(3))
    Sp = S.triangles[u][(r + 2) % 3]
    tris = list(S.triangles)
    tris[t] = (R, P, Sp)
    tris[u] = (Sp, Q, R)
    moved = {
        (t, (s + 2) % 3): (t, 0),
        (u, (r + 1) % 3): (t, 1),
        (u, (r + 2) % 3): (u, 0),
        (t, (s + 1) % 3): (u, 1),
    }
    gl: list[Gluing] = []
    for i, (x, y) in enumerate(S.gluings):
        if i == e:
            gl.append(((t, 2), (u, 2)))
        else:
            gl.append((moved.get(x, x), moved.get(y, y)))
    out = SurfaceData(S.genus, S.punctures, tuple(tris), tuple(gl), S.triangle_ids)
    if check:
        bad = validate(out)
        if bad:
            raise NotFlippable("; ".join(bad))
    return out


@dataclass(frozen=True)
class Quadrilateral:
    """The two triangles on either side of an edge, cut out as a disc.

    ``piece`` has corners p1..p4 counterclockwise, triangle 0 = (p1, p2, p3)
    and triangle 1 = (p1, p3, p4) glued along the diagonal p1 p3.
    ``host_triangles[i]`` is the host triangle of piece triangle ``i`` and
    ``host_rotation[i]`` the host corner slot of piece slot 0.
    """

    piece: SurfaceData
    edge: int
    host_triangles: tuple[int, int]
    host_rotation: tuple[int, int]
    corner_map: dict[str, str]


def quadrilateral_piece() -> SurfaceData:
    tris = (("p1", "p2", "p3"), ("p1", "p3", "p4"))
    return SurfaceData(0, ("p1", "p2", "p3", "p4"), tris, (((0, 2), (1, 0)),))


def triangle_piece() -> SurfaceData:
    return SurfaceData(0, ("v1", "v2", "v3"), (("v1", "v2", "v3"),), ())


def cut_quadrilateral(S: SurfaceData, e: int) -> Quadrilateral:
    t, s, u, r = _quad(S, e)
    # host t = (P, Q, R) from slot s; piece tau = (p1, p2, p3) = (Q, R, P)
    rot_t = (s + 1) % 3
    # host u = (Q, P, S') from slot r; piece tau' = (p1, p3, p4) = (Q, P, S')
    rot_u = r
    cmap = {
        "p1": S.triangles[t][rot_t],
        "p2": S.triangles[t][(rot_t + 1) % 3],
        "p3": S.triangles[t][(rot_t + 2) % 3],
        "p4": S.triangles[u][(rot_u + 2) % 3],
    }
    return Quadrilateral(quadrilateral_piece(), e, (t, u), (rot_t, rot_u), cmap)


# ---------------------------------------------------------------------------
# isomorphism


def canonical_form(S: SurfaceData) -> tuple:
    """Relabeling invariant encoding: minimum over all starting darts."""
    p = S.partner()
    best: tuple | None = None
    for t0 in range(S.n_triangles):
        for r0 in range(3):
            order = {t0: 0}
            rot = {t0: r0}
            q = deque([t0])
            code: list[tuple] = []
            names: dict[str, int] = {}
            while q:
                t = q.popleft()
                row = []
                for i in range(3):
                    s = (rot[t] + i) % 3
                    lab = S.triangles[t][s]
                    names.setdefault(lab, len(names))
                    y = p.get((t, s))
                    if y is None:
                        row.append((names[lab], -1, -1))
                        continue
                    u, su = y
                    if u not in order:
                        # enter the neighbour so that the glued side becomes its slot 0
                        order[u] = len(order)
                        rot[u] = su
                        q.append(u)
                    row.append((names[lab], order[u], (su - rot[u]) % 3))
                code.append(tuple(row))
            key = (len(order), tuple(code))
            if best is None or key < best:
                best = key
    return (S.genus, len(S.punctures), best)


def isomorphic(a: SurfaceData, b: SurfaceData) -> bool:
    return canonical_form(a) == canonical_form(b)


def standard_surfaces() -> Iterable[tuple[int, int]]:
    return [(0, 3), (0, 4), (1, 1), (1, 2), (2, 1)]
