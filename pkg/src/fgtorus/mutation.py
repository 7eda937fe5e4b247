"""Quiver mutation, flip sequences and quantum mutations of balanced tori.

Quivers are handled as doubled signed adjacency matrices ``Q2 = 2Q``.  A
mutable vertex only meets whole arrows, so ``Q(v, k)`` is an integer whenever
``k`` is mutable.

Quantum mutation ``ν_k = ν♯_k ∘ ν′_k`` maps the torus of ``μ_k(D)`` into the
skew field of the torus of ``D``.  Its values are kept as
``SkewFraction``s: a torus element times the inverse of a product of binomials
``1 + c·Y^p`` in a single commuting monomial ``Y``.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import intlat
from .balanced import TheoremViolation
from .coeff import Ring, Scalar
from .intlat import Lattice, kernel_mod
from .qtorus import TorusContext, TorusElement
from .quiver import NTriangulationQuiver
from .surface import SurfaceData, flip

Q2Matrix = tuple[tuple[int, ...], ...]
Exp = tuple[int, ...]


class FrozenVertex(ValueError):
    pass


class NotFound(LookupError):
    pass


class Incompatible(ValueError):
    pass


class NotMbl(ValueError):
    pass


class NotMonomial(ValueError):
    """A fraction whose denominator does not cancel (or could not be decided)."""


# ---------------------------------------------------------------------------
# quiver mutation


def _q(Q2: Sequence[Sequence[int]], u: int, k: int) -> int:
    x = Q2[u][k]
    if x % 2:
        raise FrozenVertex(f"vertex {k} meets a half-arrow")
    return x // 2


def mutate_quiver(Q2: Sequence[Sequence[int]], k: int, mutable: Sequence[int] | None = None) -> Q2Matrix:
    """μ_k on a doubled matrix; involutive on mutable vertices."""
    if mutable is not None and k not in mutable:
        raise FrozenVertex(f"vertex {k} is frozen")
    size = len(Q2)
    col = [_q(Q2, u, k) for u in range(size)]
    out = []
    for u in range(size):
        row = []
        for v in range(size):
            if k in (u, v):
                row.append(-Q2[u][v])
            else:
                a, b = col[u], -col[v]  # Q(u,k), Q(k,v)
                row.append(Q2[u][v] + a * abs(b) + abs(a) * b)
        out.append(tuple(row))
    return tuple(out)


def mutation_matrix(Q2: Sequence[Sequence[int]], k: int) -> list[list[int]]:
    """Exponent map of ν′_k: row v is the image of the v-th unit vector."""
    size = len(Q2)
    L = intlat.identity(size)
    L[k][k] = -1
    for v in range(size):
        if v != k:
            L[v][k] = max(_q(Q2, v, k), 0)
    return L


@dataclass(frozen=True)
class MutationSeq:
    """Mutations μ_{v_1}, …, μ_{v_r} (applied in this order) and the matching.

    ``matching[i]`` is the vertex of the target quiver corresponding to vertex
    ``i`` of the mutated source.
    """

    vertices: tuple[int, ...]
    matching: tuple[int, ...]
    quivers: tuple[Q2Matrix, ...]
    target: Q2Matrix

    @property
    def source(self) -> Q2Matrix:
        return self.quivers[0]

    def __len__(self) -> int:
        return len(self.vertices)

    def to_json_obj(self) -> dict:
        return {
            "length": len(self.vertices),
            "vertices": list(self.vertices),
            "matching": {str(i): j for i, j in enumerate(self.matching)},
        }


def apply_sequence(Q2: Sequence[Sequence[int]], seq: Sequence[int]) -> list[Q2Matrix]:
    qs = [tuple(tuple(r) for r in Q2)]
    for k in seq:
        qs.append(mutate_quiver(qs[-1], k))
    return qs


# ---------------------------------------------------------------------------
# flip sequences


def _vertex_keys(q: NTriangulationQuiver, region_tris: Sequence[int], diag: int) -> list:
    """Flip-invariant label of each vertex, or None for the flip region."""
    S, n = q.surface, q.n
    unglued = S.unglued_sides()
    ng = len(S.gluings)
    keys: list = []
    for info in q.vertices:
        if info.kind == "interior":
            t, c = info.key
            keys.append(None if t in region_tris else ("i", t, c))
        elif info.boundary is not None:
            a, b = S.side_ends(unglued[info.boundary - ng])
            r = info.key[1]
            keys.append(("b", a, b, r) if a < b else ("b", b, a, n - r))
        else:
            e, r = info.key
            keys.append(None if e == diag else ("e", e, r))
    return keys


def _match(Q: Q2Matrix, T: Q2Matrix, fixed: Mapping[int, int], free_src: list[int], free_tgt: list[int]) -> tuple[int, ...] | None:
    """A bijection extending ``fixed`` under which Q becomes T, if any."""
    for i, j in fixed.items():
        for i2, j2 in fixed.items():
            if Q[i][i2] != T[j][j2]:
                return None
    sigma = dict(fixed)
    used: set[int] = set()

    def ok(i: int, j: int) -> bool:
        if Q[i][i] != T[j][j]:
            return False
        return all(Q[i][i2] == T[j][j2] for i2, j2 in sigma.items())

    def go(pos: int) -> bool:
        if pos == len(free_src):
            return True
        i = free_src[pos]
        for j in free_tgt:
            if j not in used and ok(i, j):
                sigma[i] = j
                used.add(j)
                if go(pos + 1):
                    return True
                del sigma[i]
                used.discard(j)
        return False

    if not go(0):
        return None
    return tuple(sigma[i] for i in range(len(Q)))


def flip_region(S: SurfaceData, e: int, n: int) -> tuple[NTriangulationQuiver, NTriangulationQuiver, list[int], list[int], dict[int, int]]:
    src = NTriangulationQuiver(S, n)
    tgt = NTriangulationQuiver(flip(S, e, check=False), n)
    (t, _), (u, _) = S.edge_sides(e)
    ks = _vertex_keys(src, (t, u), e)
    kt = _vertex_keys(tgt, (t, u), e)
    where = {k: j for j, k in enumerate(kt) if k is not None}
    fixed = {i: where[k] for i, k in enumerate(ks) if k is not None}
    free_src = [i for i, k in enumerate(ks) if k is None]
    free_tgt = [j for j, k in enumerate(kt) if k is None]
    return src, tgt, free_src, free_tgt, fixed


def find_flip_sequence(S: SurfaceData, e: int, n: int, max_len: int = 12, all_shortest: bool = False):
    """Breadth-first search for mutations realising the flip of edge ``e``.

    Only vertices of the flip region (diagonal plus the two triangle
    interiors) are mutated; every other vertex must match its own copy.
    With ``all_shortest`` a list of every shortest sequence is returned.
    """
    src, tgt, free_src, free_tgt, fixed = flip_region(S, e, n)
    if len(free_src) != len(free_tgt):
        raise TheoremViolation("flip region sizes differ")
    start = src.Q2
    T = tgt.Q2
    seen = {start: 0}
    queue: deque[tuple[Q2Matrix, tuple[int, ...]]] = deque([(start, ())])
    found: list[MutationSeq] = []
    best: int | None = None
    while queue:
        Q, seq = queue.popleft()
        if best is not None and len(seq) > best:
            break
        if seq:
            sigma = _match(Q, T, fixed, free_src, free_tgt)
            if sigma is not None:
                found.append(MutationSeq(seq, sigma, tuple(apply_sequence(start, seq)), T))
                best = len(seq)
                if not all_shortest:
                    break
                continue
        if len(seq) >= max_len:
            continue
        for k in free_src:
            if seq and seq[-1] == k:
                continue
            Q1 = mutate_quiver(Q, k)
            if all_shortest:
                if seen.get(Q1, len(seq) + 1) < len(seq) + 1:
                    continue
            elif Q1 in seen:
                continue
            seen[Q1] = len(seq) + 1
            queue.append((Q1, seq + (k,)))
    if not found:
        raise NotFound(f"no flip sequence of length <= {max_len}")
    return found if all_shortest else found[0]


# ---------------------------------------------------------------------------
# skew fractions


@dataclass(frozen=True)
class SkewFraction:
    """``num · Π (1 + c·Y^p)^{-1}`` with ``Y = Z^direction``.

    All denominator factors are polynomials in the same monomial, so they
    commute with each other and common denominators are plain multisets.
    """

    num: TorusElement
    direction: Exp | None = None
    den: tuple[tuple[Scalar, int], ...] = field(default=())

    @property
    def ctx(self) -> TorusContext:
        return self.num.ctx

    @classmethod
    def of(cls, x: TorusElement) -> "SkewFraction":
        return cls(x)

    def _y(self, p: int) -> TorusElement:
        assert self.direction is not None
        return self.ctx.monomial(tuple(p * g for g in self.direction))

    def factor_element(self, c: Scalar, p: int) -> TorusElement:
        return self.ctx.one() + self._y(p).scale(c)

    def den_element(self, factors: Sequence[tuple[Scalar, int]] | None = None) -> TorusElement:
        out = self.ctx.one()
        for c, p in self.den if factors is None else factors:
            out = out * self.factor_element(c, p)
        return out

    def _joint_direction(self, other: "SkewFraction") -> Exp | None:
        if self.den and other.den and self.direction != other.direction:
            raise NotMonomial("denominators in different directions")
        return self.direction if self.den else other.direction

    def __add__(self, other: "SkewFraction") -> "SkewFraction":
        g = self._joint_direction(other)
        a, b = Counter(self.den), Counter(other.den)
        lcm = a | b
        sa = SkewFraction(self.num, g, ())
        xa = self.num * sa.den_element(list((lcm - a).elements())) if g else self.num
        xb = other.num * sa.den_element(list((lcm - b).elements())) if g else other.num
        return SkewFraction(xa + xb, g, tuple(sorted(lcm.elements(), key=_factor_key)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SkewFraction):
            return NotImplemented
        g = self._joint_direction(other)
        probe = SkewFraction(self.num, g, ())
        lhs = self.num * probe.den_element(other.den) if other.den else self.num
        rhs = other.num * probe.den_element(self.den) if self.den else other.num
        return lhs == rhs

    def __hash__(self) -> int:
        return hash((tuple(sorted(self.num.terms)), len(self.den)))

    def left_mul(self, x: TorusElement) -> "SkewFraction":
        return SkewFraction(x * self.num, self.direction, self.den)

    def right_mul_monomial(self, s: Sequence[int]) -> "SkewFraction":
        """Push Z^s to the left of the denominator."""
        ctx = self.ctx
        new = []
        for c, p in self.den:
            y = tuple(p * g for g in self.direction)  # type: ignore[union-attr]
            # (1 + cY) Z^s = Z^s (1 + c q^{2 Y·2Q·s} Y)
            new.append((c * ctx.ring.half(2 * ctx.level * ctx.phase(y, s)), p))
        return SkewFraction(self.num * ctx.monomial(s), self.direction, tuple(new))

    def reduce(self) -> "SkewFraction":
        """Cancel every denominator factor that divides the numerator."""
        cur = self
        changed = True
        while cur.den and changed:
            changed = False
            for i, (c, p) in enumerate(cur.den):
                q = _right_divide(cur.num, cur._y(p), c)
                if q is not None:
                    rest = cur.den[:i] + cur.den[i + 1 :]
                    cur = SkewFraction(q, cur.direction if rest else None, rest)
                    changed = True
                    break
        return cur

    def is_polynomial(self) -> bool:
        return not self.den

    def to_json_obj(self) -> dict:
        return {
            "numerator": self.num.to_json_obj(),
            "direction": list(self.direction) if self.direction else None,
            "denominator": [{"coeff": c.to_json(), "power": p} for c, p in self.den],
        }


def _factor_key(f: tuple[Scalar, int]):
    c, p = f
    return (p, repr(c))


def _right_divide(x: TorusElement, Y: TorusElement, c: Scalar) -> TorusElement | None:
    """x · (1 + cY)^{-1} as a torus element, or None if it is not one."""
    ctx = x.ctx
    (y, _), = Y.terms.items()
    i0 = next(i for i, a in enumerate(y) if a)
    cosets: dict[Exp, dict[int, Scalar]] = {}
    for s, a in x.terms.items():
        j = s[i0] // y[i0]
        rep = tuple(si - j * yi for si, yi in zip(s, y))
        # Z^s = q^{-j rep·2Q·y} Z^rep Y^j
        coef = a * ctx.ring.half(-ctx.level * j * ctx.phase(rep, y))
        cosets.setdefault(rep, {})[j] = coef
    out: dict[Exp, Scalar] = {}
    for rep, poly in cosets.items():
        lo, hi = min(poly), max(poly)
        if lo == hi:
            return None
        b: dict[int, Scalar] = {}
        b[hi - 1] = poly[hi] / c
        for j in range(hi - 1, lo, -1):
            b[j - 1] = (poly.get(j, ctx.ring.zero()) - b[j]) / c
        if poly[lo] != b[lo]:
            return None
        for j, bj in b.items():
            if bj.is_zero():
                continue
            s = tuple(r + j * yi for r, yi in zip(rep, y))
            out[s] = bj * ctx.ring.half(ctx.level * j * ctx.phase(rep, y))
    return TorusElement(ctx, out)


def as_monomial(fr: SkewFraction) -> TorusElement:
    red = fr.reduce()
    if red.den or not red.num.is_monomial():
        raise NotMonomial("fraction does not reduce to a monomial")
    return red.num


def frobenius_fraction(N: int, fr: SkewFraction, target: TorusContext) -> SkewFraction:
    from .qtorus import frobenius

    num = frobenius(N, fr.num, target)
    return SkewFraction(num, fr.direction, tuple((c, N * p) for c, p in fr.den))


# ---------------------------------------------------------------------------
# quantum mutation


def _check_form(Q2: Q2Matrix, Q2p: Q2Matrix, L: list[list[int]]) -> None:
    img = intlat.matmul(intlat.matmul(L, Q2), intlat.transpose(L))
    if [list(r) for r in Q2p] != img:
        raise TheoremViolation("ν′ does not intertwine the commutation forms")


def nu_prime(Q2: Sequence[Sequence[int]], k: int, x: TorusElement) -> TorusElement:
    """ν′_k from the torus of μ_k(Q) to the torus of Q (monomial substitution)."""
    Q2 = tuple(tuple(r) for r in Q2)
    Q2p = mutate_quiver(Q2, k)
    if x.ctx.Q2 != Q2p:
        raise ValueError("argument must live on the mutated quiver")
    L = mutation_matrix(Q2, k)
    _check_form(Q2, Q2p, L)
    ctx = TorusContext(Q2, x.ctx.ring, x.ctx.level)
    return TorusElement(ctx, {tuple(intlat.vecmat(t, L)): c for t, c in x.terms.items()})


def dilog_factor(ctx: TorusContext, k: int, m: int, n: int) -> tuple[TorusElement | None, tuple[tuple[Scalar, int], ...]]:
    """F^ω(X_k, m) with X_k = Z_k^n: (polynomial, denominator factors)."""
    ring = ctx.ring
    s = 1 if m > 0 else -1
    omega = lambda e: ring.half(2 * ctx.level * n * n * e)  # noqa: E731
    if m == 0:
        return ctx.one(), ()
    factors = tuple((omega((2 * r - 1) * s), n) for r in range(1, abs(m) + 1))
    if m > 0:
        X = ctx.monomial(tuple(n * int(v == k) for v in range(ctx.size)))
        poly = ctx.one()
        for c, _ in factors:
            poly = poly * (ctx.one() + X.scale(c))
        return poly, ()
    return None, factors


def in_mbl(Q2: Sequence[Sequence[int]], t: Sequence[int], n: int, mutable: Sequence[int]) -> bool:
    return all(intlat.dot(Q2[u], t) % (2 * n) == 0 for u in mutable)


def mbl_lattice_of(Q2: Sequence[Sequence[int]], n: int, mutable: Sequence[int]) -> Lattice:
    cols = [[Q2[u][v] for u in mutable] for v in range(len(Q2))]
    return kernel_mod(cols, 2 * n) if mutable else Lattice.full(len(Q2))


def nu_sharp(k: int, x: TorusElement, n: int, mutable: Sequence[int] | None = None) -> SkewFraction:
    """Z^t ↦ Z^t F^ω(X_k, m) with m = (1/n) Σ_v Q(k, v) t_v."""
    ctx = x.ctx
    direction = tuple(int(v == k) for v in range(ctx.size))
    total: SkewFraction | None = None
    for t, c in x.terms.items():
        if mutable is not None and not in_mbl(ctx.Q2, t, n, mutable):
            raise NotMbl(f"exponent {t} is not mutable-balanced")
        twice = intlat.dot(ctx.Q2[k], t)
        if twice % (2 * n):
            raise NotMbl(f"m is not an integer for exponent {t}")
        m = twice // (2 * n)
        mono = ctx.monomial(t, c)
        poly, den = dilog_factor(ctx, k, m, n)
        fr = SkewFraction(mono * poly, direction, ()) if poly is not None else SkewFraction(mono, direction, den)
        total = fr if total is None else total + fr
    return total if total is not None else SkewFraction(ctx.zero())


def nu(Q2: Sequence[Sequence[int]], k: int, x: TorusElement, n: int, mutable: Sequence[int] | None = None) -> SkewFraction:
    """ν_k = ν♯_k ∘ ν′_k."""
    return nu_sharp(k, nu_prime(Q2, k, x), n, mutable)


def theta(seq: MutationSeq, x: TorusElement, n: int, mutable: Sequence[int] | None = None) -> SkewFraction:
    """ν_{v_1} ∘ ⋯ ∘ ν_{v_r} applied to an element of the target torus.

    Between steps the running value must clear to a torus element;
    otherwise NotMonomial is raised (undecided, not claimed false).
    """
    if x.ctx.Q2 != seq.target:
        raise ValueError("argument must live on the target quiver")
    final = seq.quivers[-1]
    ctx = TorusContext(final, x.ctx.ring, x.ctx.level)
    cur = TorusElement(ctx, {tuple(t[seq.matching[i]] for i in range(len(t))): c for t, c in x.terms.items()})
    fr = SkewFraction(cur)
    for step in range(len(seq.vertices) - 1, -1, -1):
        if not fr.is_polynomial():
            fr = fr.reduce()
            if not fr.is_polynomial():
                raise NotMonomial("intermediate denominator does not clear")
        fr = nu(seq.quivers[step], seq.vertices[step], fr.num, n, mutable)
    return fr


# ---------------------------------------------------------------------------
# explicit X-level formula (independent of the ν machinery)


def mu_x_generator(Q2: Sequence[Sequence[int]], k: int, v: int, ring: Ring, level: int) -> SkewFraction:
    """μ^ω_k(X′_v) written out on generators of the X-torus.

    The X-torus has X_a X_b = ω^{2Q(a,b)} X_b X_a; here it is realised with
    unit exponents at ``level``.
    """
    Q2 = tuple(tuple(r) for r in Q2)
    ctx = TorusContext(Q2, ring, level)
    size = len(Q2)
    e = lambda a: tuple(int(i == a) for i in range(size))  # noqa: E731
    Xk = ctx.monomial(e(k))
    if v == k:
        return SkewFraction(Xk ** -1)
    q = _q(Q2, v, k)
    a = max(q, 0)
    # [X_v X_k^a] = ω^{-a Q(v,k)} X_v X_k^a
    w = ctx.monomial(e(v)) * Xk**a
    w = w.scale(ring.half(-level * a * Q2[v][k]))
    m = -q  # Q(k, v)
    omega = lambda x: ring.half(2 * level * x)  # noqa: E731
    s = 1 if m > 0 else -1
    if m >= 0:
        for r in range(1, m + 1):
            w = w * (ctx.one() + Xk.scale(omega((2 * r - 1) * s)))
        return SkewFraction(w)
    den = tuple((omega((2 * r - 1) * s), 1) for r in range(1, -m + 1))
    return SkewFraction(w, e(k), den)


# ---------------------------------------------------------------------------
# classical point mutation


@dataclass(frozen=True)
class PointChar:
    """Values f(X_v) of a character of the η-level X-torus."""

    values: tuple

    def __post_init__(self) -> None:
        if any(_is_zero(x) for x in self.values):
            raise ValueError("character values must be nonzero")


def _is_zero(x) -> bool:
    return x.is_zero() if hasattr(x, "is_zero") else x == 0


def mutate_point(Q2: Sequence[Sequence[int]], f: PointChar, k: int, eta: int) -> PointChar:
    """f ↦ f ∘ μ^η_k on generators.

    The Weyl normalisation of [X_v X_k^{[Q(v,k)]₊}] contributes the sign
    η^{-Q(v,k)[Q(v,k)]₊}; with it the update is an involution.
    """
    if eta not in (1, -1):
        raise ValueError("η must be ±1")
    fk = f.values[k]
    one = fk * 0 + 1
    base = one + fk * eta
    if _is_zero(base):
        raise Incompatible(f"f(X_{k}) = -η")
    out = []
    for v, fv in enumerate(f.values):
        if v == k:
            out.append(one / fk)
            continue
        q = _q(Q2, v, k)
        a = max(q, 0)
        val = fv * fk**a * (base ** (-q) if q <= 0 else one / base**q)
        if eta == -1 and (q * a) % 2:
            val = -val
        out.append(val)
    return PointChar(tuple(out))


def mutate_point_sequence(Q2: Sequence[Sequence[int]], f: PointChar, seq: Sequence[int], eta: int) -> PointChar:
    """Compose point mutations; Incompatible names the failing step."""
    Q = tuple(tuple(r) for r in Q2)
    for i, k in enumerate(seq):
        try:
            f = mutate_point(Q, f, k, eta)
        except Incompatible as exc:
            raise Incompatible(f"step {i}: {exc}") from None
        Q = mutate_quiver(Q, k)
    return f


def random_quiver(size: int, rng, frozen: int = 0, bound: int = 3) -> Q2Matrix:
    """Random doubled matrix; the last ``frozen`` vertices may carry half-arrows."""
    Q = [[0] * size for _ in range(size)]
    for i, j in itertools.combinations(range(size), 2):
        both_frozen = i >= size - frozen and j >= size - frozen
        x = rng.randint(-bound, bound)
        Q[i][j] = x if both_frozen else 2 * x
        Q[j][i] = -Q[i][j]
    return tuple(tuple(r) for r in Q)
