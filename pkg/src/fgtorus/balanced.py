"""Balanced lattices, puncture vectors and the lattice-level center theorems."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from . import intlat
from .intlat import Lattice, kernel_mod, left_kernel, matmul, transpose
from .quiver import (
    NTriangulationQuiver,
    k_vector,
    local_index,
    local_vertices,
    quadrilateral_quiver,
    triangle_quiver,
)


class TheoremViolation(AssertionError):
    """An identity that should hold by a theorem failed to hold."""


class Singular(ValueError):
    pass


class NotBalanced(ValueError):
    pass


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise TheoremViolation(msg)


# ---------------------------------------------------------------------------
# the balanced lattice


def _triangle_dual(n: int) -> list[list[int]]:
    """Basis of {w : k_j . w = 0 mod n for j = 1, 2, 3} on one triangle."""
    ks = [k_vector(n, j) for j in range(3)]
    return kernel_mod(transpose(ks), n).rows()


def balanced_conditions(quiver: NTriangulationQuiver) -> list[list[int]]:
    """Columns c with: k balanced iff k . c = 0 mod n for each c."""
    cols = []
    for t in range(quiver.surface.n_triangles):
        for w in _triangle_dual(quiver.n):
            cols.append(quiver.pushforward(w, t))
    return cols


@dataclass
class BalancedLattice:
    quiver: NTriangulationQuiver
    lattice: Lattice
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)
    _bd: dict[int, Lattice] = field(default_factory=dict, repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.quiver.n

    @property
    def size(self) -> int:
        return self.quiver.size

    def __contains__(self, k) -> bool:
        return list(k) in self.lattice

    @cached_property
    def basis(self) -> list[list[int]]:
        return self.lattice.rows()

    @cached_property
    def doubled_gram(self) -> list[list[int]]:
        """B (2Q) Bᵀ for the basis B of the lattice."""
        b = self.basis
        return matmul(matmul(b, self.quiver.Q2), transpose(b))

    @cached_property
    def pairing(self) -> list[list[int]]:
        """(1/n) k Q tᵀ on basis pairs, asserted integral."""
        two_n = 2 * self.n
        out = []
        for row in self.doubled_gram:
            _check(all(x % two_n == 0 for x in row), "kQt not divisible by n on balanced vectors")
            out.append([x // two_n for x in row])
        return out

    def _from_coords(self, coords: Lattice) -> Lattice:
        rows = matmul(coords.rows(), self.basis) if coords.rank else []
        return Lattice.span(self.size, rows)

    def pairing_kernel_mod(self, modulus: int) -> Lattice:
        """{k in B : k Q tᵀ = 0 mod ``modulus`` for all t in B}."""
        coords = kernel_mod(self.doubled_gram, 2 * modulus)
        return self._from_coords(coords)

    def B_d(self, d: int) -> Lattice:
        """The sublattice written B_{λ,d} (pairing condition mod dn)."""
        with self._lock:
            if d not in self._bd:
                self._bd[d] = self.pairing_kernel_mod(d * self.n)
            return self._bd[d]

    @cached_property
    def kernel(self) -> Lattice:
        """{k in B : k Q = 0}, the lattice written B°."""
        ker = left_kernel(self.doubled_gram)
        return self._from_coords(Lattice.span(len(self.basis), ker))


def balanced_lattice(quiver: NTriangulationQuiver) -> BalancedLattice:
    lat = kernel_mod(transpose(balanced_conditions(quiver)), quiver.n)
    bl = BalancedLattice(quiver, lat)
    _check(Lattice.full(quiver.size, quiver.n) <= lat, "nZ^V not contained in B")
    return bl


def is_balanced(quiver: NTriangulationQuiver, k) -> bool:
    n = quiver.n
    return all(intlat.dot(k, c) % n == 0 for c in balanced_conditions(quiver))


# ---------------------------------------------------------------------------
# puncture vectors


@dataclass(frozen=True)
class PunctureVectors:
    """a(i), b(i) for 1 <= i <= n-1 and c(i), d(i) for 1 <= i <= n (1-based keys)."""

    puncture: str
    n: int
    a: dict[int, tuple[int, ...]]
    b: dict[int, tuple[int, ...]]
    c: dict[int, tuple[int, ...]]
    d: dict[int, tuple[int, ...]]

    def c_total(self) -> tuple[int, ...]:
        return _comb({i: 1 for i in self.c}, self.c)

    def c_set(self, subset) -> tuple[int, ...]:
        return _comb({i: 1 for i in subset}, self.c)


def _comb(coefs: dict[int, int], vecs: dict[int, tuple[int, ...]]) -> tuple[int, ...]:
    size = len(next(iter(vecs.values())))
    out = [0] * size
    for i, c in coefs.items():
        if c:
            for j, x in enumerate(vecs[i]):
                out[j] += c * x
    return tuple(out)


def local_a(n: int, corners: list[int], i: int) -> list[int]:
    """a(τ, p, i) on one triangle, summed over the corner slots occupied by p."""
    out = [0] * len(local_vertices(n))
    for v in local_vertices(n):
        for j in corners:
            if v[j] == n - i:
                out[local_index(n, v)] += 1
    return out


def b_coefficients(n: int, i: int) -> dict[int, int]:
    """b(i) = Σ_t coef[t] a(t), from the defining formula with k_j = Σ (n-t) a(t)."""
    coef = {}
    for t in range(1, n):
        c = (n - i) * (n - t)
        if t <= n - i - 1:
            c += n * (t + i - n)
        coef[t] = c
    return coef


def puncture_vectors(quiver: NTriangulationQuiver, p: str) -> PunctureVectors:
    S, n = quiver.surface, quiver.n
    slots: dict[int, list[int]] = {}
    for t, j in S.corner_preimages(p):
        slots.setdefault(t, []).append(j)
    if not slots:
        raise ValueError(f"unknown puncture {p!r}")
    a = {
        i: tuple(quiver.from_local_sum({t: local_a(n, js, i) for t, js in slots.items()}))
        for i in range(1, n)
    }
    b = {i: _comb(b_coefficients(n, i), a) for i in range(1, n)}
    c = {i: _comb({t: 1 for t in range(1, i)}, a) if i > 1 else (0,) * quiver.size for i in range(1, n + 1)}
    ctot = _comb({i: 1 for i in c}, c)
    d = {
        i: tuple(n * x - y for x, y in zip(c[n + 1 - i], ctot))
        for i in range(1, n + 1)
    }
    zero = (0,) * quiver.size
    for i in range(1, n + 1):
        lo = b.get(i - 1, zero)
        hi = b.get(i, zero)
        _check(d[i] == tuple(x - y for x, y in zip(hi, lo)), "d(i) != b(i) - b(i-1)")
    for i in range(1, n):
        # b = (n-i) Σ_t c(t) - n Σ_{t <= n-i} c(t)
        alt = tuple(
            (n - i) * x - n * y for x, y in zip(ctot, _comb({t: 1 for t in range(1, n - i + 1)}, c))
        )
        _check(alt == b[i], "the two b-vector formulas disagree")
    return PunctureVectors(p, n, a, b, c, d)


def all_puncture_vectors(quiver: NTriangulationQuiver) -> dict[str, PunctureVectors]:
    return {p: puncture_vectors(quiver, p) for p in quiver.surface.punctures}


def b_vectors(quiver: NTriangulationQuiver) -> list[tuple[int, ...]]:
    out = []
    for p in quiver.surface.punctures:
        pv = puncture_vectors(quiver, p)
        out += [pv.b[i] for i in range(1, quiver.n)]
    return out


# ---------------------------------------------------------------------------
# kernel, index and rank theorems


@dataclass(frozen=True)
class KernelReport:
    generators: list[tuple[int, ...]]
    kernel_rank: int
    independent: bool
    index: int | float
    passed: bool


def kernel_generators(bl: BalancedLattice) -> KernelReport:
    q = bl.quiver
    gens = b_vectors(q)
    for g in gens:
        _check(list(g) in bl.lattice, "b-vector is not balanced")
        _check(not any(intlat.vecmat(g, q.Q2)), "b-vector does not lie in the kernel of Q")
    span = Lattice.span(q.size, gens)
    independent = span.rank == len(gens)
    expected = (q.n - 1) * len(q.surface.punctures)
    idx = intlat.quotient_order(bl.kernel, span)
    ok = independent and idx == 1 and bl.kernel.rank == expected
    _check(independent, "b-vectors are linearly dependent")
    _check(idx == 1, f"b-vectors span a sublattice of index {idx} in the kernel")
    return KernelReport(gens, bl.kernel.rank, independent, idx, ok)


def index_Bd(bl: BalancedLattice, d: int) -> int | float:
    return intlat.quotient_order(bl.lattice, bl.B_d(d))


@dataclass(frozen=True)
class RankReport:
    rank: int | float
    formula: int
    center_matches: bool
    passed: bool

    def to_json_obj(self) -> dict:
        return {
            "rank": self.rank,
            "formula": self.formula,
            "center_matches": self.center_matches,
            "pass": self.passed,
        }


def rank_formula(genus: int, m: int, n: int, d: int, N: int) -> int:
    return d ** (2 * genus) * N ** (2 * (n * n - 1) * (genus - 1) + n * (n - 1) * m)


def rank_over_center(bl: BalancedLattice, tower, check: bool = True) -> RankReport:
    """|B / (N B_{λ,d} + B°)| compared with the closed formula.

    Also checks that N B_{λ,d} + B° equals the full centralizing lattice
    {k : k Q tᵀ = 0 mod N''}.
    """
    q = bl.quiver
    if tower.n != q.n:
        raise ValueError("tower and quiver disagree on n")
    center = bl.B_d(tower.d).scaled(tower.N) + bl.kernel
    rank = intlat.quotient_order(bl.lattice, center)
    full = bl.pairing_kernel_mod(tower.N2)
    S = q.surface
    formula = rank_formula(S.genus, len(S.punctures), q.n, tower.d, tower.N)
    same = full == center
    ok = same and rank == formula
    if check:
        _check(same, "center lattice differs from N B_d + B°")
        _check(rank == formula, f"rank {rank} != formula {formula}")
    return RankReport(rank, formula, same, ok)


@dataclass(frozen=True)
class NormalForm:
    basis: list[list[int]]
    s: list[int]
    zeros: int
    expected_r: int
    passed: bool

    def to_json_obj(self) -> dict:
        return {
            "s": self.s,
            "zeros": self.zeros,
            "r": len(self.s),
            "expected_r": self.expected_r,
            "basis": self.basis,
            "pass": self.passed,
        }


def expected_r(genus: int, m: int, n: int) -> int:
    return (n * n - 1) * (genus - 1) + n * (n - 1) * m // 2


def normal_form_B(bl: BalancedLattice, check: bool = True) -> NormalForm:
    q = bl.quiver
    S = q.surface
    g, m, n = S.genus, len(S.punctures), q.n
    u, s, z = intlat.antisym_normal_form(bl.pairing)
    h = matmul(u, bl.basis)
    r = expected_r(g, m, n)
    want = [1] * g + [n] * (r - g)
    tail = Lattice.span(q.size, h[2 * len(s):])
    ok = s == want and z == (n - 1) * m and tail == bl.kernel
    if check:
        _check(s == want, f"invariant factors {s} != {want}")
        _check(z == (n - 1) * m, "zero block has the wrong size")
        _check(tail == bl.kernel, "zero block is not spanned by the b-vectors")
    return NormalForm(h, s, z, r, ok)


def mbl_lattice(quiver: NTriangulationQuiver, bl: BalancedLattice | None = None) -> Lattice:
    """{t : Σ_v Q(u, v) t_v = 0 mod n for every mutable u}."""
    mut = quiver.mutable()
    cols = [[quiver.Q2[u][v] for u in mut] for v in range(quiver.size)]
    lat = kernel_mod(cols, 2 * quiver.n) if mut else Lattice.full(quiver.size)
    if bl is None and not quiver.boundary_vertices:
        bl = balanced_lattice(quiver)
    if bl is not None:
        _check(bl.lattice <= lat, "balanced lattice not inside the mbl lattice")
    return lat


# ---------------------------------------------------------------------------
# H and K on polygons


def h_matrix(quiver: NTriangulationQuiver) -> list[list[Fraction]]:
    size = quiver.size
    Q2 = quiver.Q2
    H = [[Fraction(0)] * size for _ in range(size)]
    for v in range(size):
        for w in range(size):
            if quiver.same_boundary_edge(v, w):
                if v == w:
                    H[v][w] = Fraction(1)
                elif Q2[v][w] > 0:
                    H[v][w] = Fraction(-1)
            else:
                H[v][w] = Fraction(-Q2[v][w], 2)
    return H


def _inverse(a: list[list[Fraction]]) -> list[list[Fraction]]:
    size = len(a)
    m = [list(r) + [Fraction(int(i == j)) for j in range(size)] for i, r in enumerate(a)]
    for c in range(size):
        p = next((r for r in range(c, size) if m[r][c] != 0), None)
        if p is None:
            raise Singular("H is not invertible")
        m[c], m[p] = m[p], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(size):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [r[size:] for r in m]


def hk_matrices(quiver: NTriangulationQuiver) -> tuple[list[list[Fraction]], list[list[int]]]:
    """(H, K) with H K = n I and K integral."""
    H = h_matrix(quiver)
    Hi = _inverse(H)
    n = quiver.n
    K = []
    for row in Hi:
        kr = [n * x for x in row]
        _check(all(x.denominator == 1 for x in kr), "K is not integral")
        K.append([int(x) for x in kr])
    size = quiver.size
    for i in range(size):
        for j in range(size):
            v = sum(H[i][t] * K[t][j] for t in range(size))
            _check(v == (n if i == j else 0), "H K != n I")
    return H, K


def hk_balanced_agrees(quiver: NTriangulationQuiver, H, k) -> bool:
    """Compare "kH in nZ" with per-triangle balancedness for one vector."""
    n = quiver.n
    kh = [sum(k[v] * H[v][w] for v in range(quiver.size)) for w in range(quiver.size)]
    lhs = all(x.denominator == 1 and int(x) % n == 0 for x in kh)
    return lhs == is_balanced(quiver, k)


@dataclass(frozen=True)
class P4Row:
    puncture: str
    i: int
    vertex: int
    edge: int | None
    position: int


def p4_boundary_rows(n: int) -> list[P4Row]:
    """Match each b(P4, p_j, n-i) with the boundary vertex whose K row it is.

    Raises if some b-vector is not a boundary row of K or the map is not
    injective.
    """
    q = quadrilateral_quiver(n)
    _, K = hk_matrices(q)
    rows = {tuple(K[v]): v for v in q.boundary_vertices}
    out = []
    used = set()
    for j in range(1, 5):
        p = f"p{j}"
        pv = puncture_vectors(q, p)
        for i in range(1, n):
            b = pv.b[n - i]
            _check(b in rows, f"b(P4, {p}, {n - i}) is not a boundary row of K")
            v = rows[b]
            _check(v not in used, "two b-vectors share a boundary row")
            used.add(v)
            info = q.vertices[v]
            out.append(P4Row(p, i, v, info.boundary, info.key[1]))
    _check(len(used) == len(q.boundary_vertices), "boundary rows not exhausted")
    return out


def polygon_quivers(n: int) -> list[NTriangulationQuiver]:
    return [triangle_quiver(n), quadrilateral_quiver(n)]



def gcd_divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


__all__ = [
    "BalancedLattice",
    "KernelReport",
    "NormalForm",
    "NotBalanced",
    "P4Row",
    "PunctureVectors",
    "RankReport",
    "Singular",
    "TheoremViolation",
    "all_puncture_vectors",
    "b_vectors",
    "balanced_lattice",
    "expected_r",
    "gcd_divisors",
    "hk_matrices",
    "index_Bd",
    "is_balanced",
    "kernel_generators",
    "mbl_lattice",
    "normal_form_B",
    "p4_boundary_rows",
    "puncture_vectors",
    "rank_formula",
    "rank_over_center",
]

