"""Quantum tori on a doubled signed adjacency matrix.

Elements are finite sums of Weyl-normalized monomials Z^k with
Z^k Z^t = q^{k (2Q) tᵀ} Z^{k+t}, where q = ring.half(level) is the chosen
square root of the quantum parameter (level 1 for ω̂, level N² for η̂).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from . import intlat
from .balanced import TheoremViolation, puncture_vectors
from .coeff import FORMAL, Ring, Scalar
from .intlat import Lattice, kernel_mod, left_kernel
from .quiver import NTriangulationQuiver, quadrilateral_quiver

Exp = tuple[int, ...]


class LatticeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class TorusContext:
    """The data two elements must share to be multiplied."""

    Q2: tuple[tuple[int, ...], ...]
    ring: Ring
    level: int = 1
    tag: str = "full"
    lattice: Lattice | None = None

    @property
    def size(self) -> int:
        return len(self.Q2)

    def phase(self, k: Sequence[int], t: Sequence[int]) -> int:
        return intlat.bilinear(k, self.Q2, t)

    def check(self, k: Sequence[int]) -> None:
        if len(k) != self.size:
            raise LatticeMismatch("exponent vector has the wrong length")
        if self.lattice is not None and list(k) not in self.lattice:
            raise LatticeMismatch(f"exponent {tuple(k)} not in the {self.tag} lattice")

    def monomial(self, k: Sequence[int], coeff=None) -> "TorusElement":
        c = self.ring.one() if coeff is None else self.ring.coerce(coeff)
        self.check(k)
        return TorusElement(self, {tuple(k): c})

    def zero(self) -> "TorusElement":
        return TorusElement(self, {})

    def one(self) -> "TorusElement":
        return self.monomial((0,) * self.size)

    def retag(self, tag: str = "full", lattice: Lattice | None = None) -> "TorusContext":
        return TorusContext(self.Q2, self.ring, self.level, tag, lattice)


def context(quiver_or_q2, ring: Ring = FORMAL, level: int = 1, tag: str = "full", lattice=None) -> TorusContext:
    q2 = quiver_or_q2.Q2 if isinstance(quiver_or_q2, NTriangulationQuiver) else quiver_or_q2
    return TorusContext(tuple(tuple(r) for r in q2), ring, level, tag, lattice)


class TorusElement:
    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: TorusContext, terms: Mapping[Exp, Scalar]):
        self.ctx = ctx
        self.terms = {k: c for k, c in terms.items() if not c.is_zero()}

    def _same(self, other: "TorusElement") -> None:
        if not isinstance(other, TorusElement):
            raise TypeError("expected a torus element")
        a, b = self.ctx, other.ctx
        if a.Q2 != b.Q2 or a.ring != b.ring or a.level != b.level:
            raise LatticeMismatch("elements live in different tori")
        if a.tag != b.tag:
            raise LatticeMismatch(f"lattice tags differ: {a.tag} vs {b.tag}")

    def __add__(self, other: "TorusElement") -> "TorusElement":
        self._same(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t[k] + c if k in t else c
        return TorusElement(self.ctx, t)

    def __neg__(self) -> "TorusElement":
        return TorusElement(self.ctx, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "TorusElement") -> "TorusElement":
        return self + (-other)

    def scale(self, c) -> "TorusElement":
        c = self.ctx.ring.coerce(c)
        return TorusElement(self.ctx, {k: c * x for k, x in self.terms.items()})

    def __mul__(self, other: "TorusElement") -> "TorusElement":
        return weyl_mul(self, other)

    def __pow__(self, e: int) -> "TorusElement":
        if e < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials can be inverted")
            (k, c), = self.terms.items()
            return self.ctx.monomial(tuple(-x for x in k), c.inverse()) ** (-e)
        out = self.ctx.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self.ctx.Q2 == other.ctx.Q2 and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms)))

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def support(self) -> list[Exp]:
        return sorted(self.terms)

    def to_json_obj(self) -> list[dict]:
        return [{"exponents": list(k), "coeff": c.to_json()} for k, c in sorted(self.terms.items())]

    def __repr__(self) -> str:
        return " + ".join(f"({c})Z^{list(k)}" for k, c in sorted(self.terms.items())) or "0"


def weyl_mul(a: TorusElement, b: TorusElement) -> TorusElement:
    a._same(b)
    ctx = a.ctx
    ring = ctx.ring
    out: dict[Exp, Scalar] = {}
    for k, x in a.terms.items():
        kq = intlat.vecmat(k, ctx.Q2)
        for t, y in b.terms.items():
            e = intlat.dot(kq, t)
            s = tuple(i + j for i, j in zip(k, t))
            c = x * y * ring.half(ctx.level * e)
            out[s] = out[s] + c if s in out else c
    return TorusElement(ctx, out)


def commutation_check(ctx: TorusContext, k: Sequence[int], t: Sequence[int]) -> int:
    """Return k (2Q) tᵀ after checking Z^k Z^t = ω̂^{k (2Q) tᵀ} Z^t Z^k."""
    e = ctx.phase(k, t)
    zk, zt = ctx.monomial(k), ctx.monomial(t)
    lhs = zk * zt
    rhs = (zt * zk).scale(ctx.ring.half(2 * ctx.level * e))
    if lhs != rhs:
        raise TheoremViolation("monomial commutation relation fails")
    return e


def is_central(x: TorusElement, generators: Iterable[Sequence[int]]) -> bool:
    ctx = x.ctx.retag()
    y = TorusElement(ctx, x.terms)
    for g in generators:
        z = ctx.monomial(g)
        if y * z != z * y:
            return False
    return True


def frobenius(N: int, x: TorusElement, target: TorusContext) -> TorusElement:
    """Z^k at level N² ↦ Z^{Nk} at the target level."""
    if x.ctx.Q2 != target.Q2 or x.ctx.level != target.level * N * N:
        raise LatticeMismatch("source must sit at level N² over the target")
    return TorusElement(target, {tuple(N * i for i in k): c for k, c in x.terms.items()})


def center_lattice(lattice: Lattice, Q2: Sequence[Sequence[int]], mode: str = "generic", order: int | None = None) -> Lattice:
    """Exponents in ``lattice`` whose monomials are central in its torus.

    ``mode='generic'``: k Q tᵀ = 0 for all t.  ``mode='root'``: k Q tᵀ = 0 mod
    ``order`` (the order N'' of ω̂²).
    """
    B = lattice.rows()
    if not B:
        return lattice
    gram = intlat.matmul(intlat.matmul(B, Q2), intlat.transpose(B))
    if mode == "generic":
        coords = Lattice.span(len(B), left_kernel(gram))
    elif mode == "root":
        if not order:
            raise ValueError("root mode needs the order of ω̂²")
        coords = kernel_mod(gram, 2 * order)
    else:
        raise ValueError(mode)
    rows = intlat.matmul(coords.rows(), B) if coords.rank else []
    return Lattice.span(lattice.dim, rows)


# ---------------------------------------------------------------------------
# peripheral loops


@dataclass(frozen=True)
class LoopImage:
    element: TorusElement
    central: bool
    d_form_matches: bool

    @property
    def passed(self) -> bool:
        return self.central and self.d_form_matches


def loop_image(quiver: NTriangulationQuiver, p: str, k: int, ring: Ring = FORMAL, level: int = 1) -> LoopImage:
    """Σ_{|I| = k} Z^{n c(I) − k c}, with its two checks."""
    n = quiver.n
    if not 1 <= k <= n - 1:
        raise ValueError("k must lie in 1..n-1")
    pv = puncture_vectors(quiver, p)
    ctx = context(quiver, ring, level)
    ctot = pv.c_total()
    elem = ctx.zero()
    via_d = ctx.zero()
    for I in itertools.combinations(range(1, n + 1), k):
        cI = pv.c_set(I)
        elem = elem + ctx.monomial(tuple(n * x - k * y for x, y in zip(cI, ctot)))
        prod = ctx.one()
        for i in I:
            prod = prod * ctx.monomial(pv.d[i])
        via_d = via_d + prod
    gens = [tuple(int(i == j) for j in range(quiver.size)) for i in range(quiver.size)]
    return LoopImage(elem, is_central(elem, gens), elem == via_d)


# ---------------------------------------------------------------------------
# corner arcs of the quadrilateral


@dataclass(frozen=True)
class P4Check:
    n: int
    identities: int
    passed_identities: int
    commuting_pairs: int
    noncommuting_pairs: int

    @property
    def passed(self) -> bool:
        return self.identities == self.passed_identities and self.noncommuting_pairs == 0

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "identities": self.identities,
            "passed": self.passed_identities,
            "commuting_pairs": self.commuting_pairs,
            "noncommuting_pairs": self.noncommuting_pairs,
            "pass": self.passed,
        }


def p4_vertex(quiver: NTriangulationQuiver, j: int, i: int) -> int:
    """v_i^{(j)}: the i-th vertex from p_j on the boundary side p_j → p_{j+1}."""
    sides = quiver.surface.unglued_sides()
    wanted = len(quiver.surface.gluings) + sides.index(_P4_SIDES[j - 1])
    for vid, info in enumerate(quiver.vertices):
        if info.boundary == wanted and info.key[1] == i:
            return vid
    raise KeyError((j, i))


# side of the quadrilateral piece starting at p_j
_P4_SIDES = ((0, 0), (0, 1), (1, 1), (1, 2))


def p4_corner_check(n: int, ring: Ring = FORMAL) -> P4Check:
    from .balanced import hk_matrices

    q = quadrilateral_quiver(n)
    _, K = hk_matrices(q)
    ctx = context(q, ring)
    total = ok = comm = noncomm = 0
    for j in range(1, 5):
        pv = puncture_vectors(q, f"p{j}")
        ctot = pv.c_total()
        mons = {
            t: tuple(n * x - y for x, y in zip(pv.c[t], ctot)) for t in range(1, n + 1)
        }
        for t1, t2 in itertools.combinations(range(1, n + 1), 2):
            if ctx.phase(mons[t1], mons[t2]) == 0:
                comm += 1
            else:
                noncomm += 1
        for i in range(1, n):
            prod = ctx.one()
            for t in range(i + 1, n + 1):
                prod = prod * ctx.monomial(mons[t])
            total += 1
            if prod == ctx.monomial(K[p4_vertex(q, j, i)]):
                ok += 1
    return P4Check(n, total, ok, comm, noncomm)


def torus_from_json(ctx: TorusContext, obj: list[dict]) -> TorusElement:
    ring = ctx.ring
    terms = {}
    for item in obj:
        c = item["coeff"]
        if isinstance(c, dict):
            from .coeff import FormalLaurent

            coeff = FormalLaurent({int(e): int(v) for e, v in c.items()})
        else:
            from fractions import Fraction

            from .coeff import Cyc

            coeff = Cyc(ring, tuple(Fraction(x) for x in c))
        terms[tuple(item["exponents"])] = coeff
    return TorusElement(ctx, terms)


