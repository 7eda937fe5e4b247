"""Exact integer lattice algebra.

Matrices are plain ``list[list[int]]`` so every intermediate value is an
arbitrary precision Python integer.  Lattices are row lattices: a
:class:`Lattice` is the Z-span of its basis rows, kept in Hermite normal form.
"""

from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass
from typing import Iterable, Sequence

Matrix = list[list[int]]
Vector = tuple[int, ...]

INFINITE = math.inf


class NotSublattice(ValueError):
    pass


class NotAntisymmetric(ValueError):
    pass


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def as_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    return [[int(x) for x in r] for r in rows]


def transpose(a: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def vecmat(v: Sequence[int], a: Sequence[Sequence[int]]) -> list[int]:
    if not a:
        return []
    out = [0] * len(a[0])
    for x, row in zip(v, a):
        if x:
            for j, y in enumerate(row):
                if y:
                    out[j] += x * y
    return out


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(u, v))


def bilinear(u: Sequence[int], a: Sequence[Sequence[int]], v: Sequence[int]) -> int:
    return dot(vecmat(u, a), v)


# ---------------------------------------------------------------------------
# Hermite normal form


def _row_echelon(rows: Matrix, pivot_cols: int) -> Matrix:
    """In-place style integer row reduction on the first ``pivot_cols`` columns.

    Returns the reduced rows: a block in Hermite form (positive pivots, entries
    above pivots reduced into ``[0, pivot)``) followed by rows whose first
    ``pivot_cols`` entries vanish.
    """
    a = [list(r) for r in rows]
    m = len(a)
    r = 0
    pivots: list[int] = []
    for c in range(pivot_cols):
        if r >= m:
            break
        # gcd-combine all rows below r into row r at column c
        for i in range(r + 1, m):
            if a[i][c] == 0:
                continue
            x, y = a[r][c], a[i][c]
            if x == 0:
                a[r], a[i] = a[i], a[r]
                continue
            g, s, t = _xgcd(x, y)
            u, v = x // g, y // g
            ra, ri = a[r], a[i]
            a[r] = [s * p + t * q for p, q in zip(ra, ri)]
            a[i] = [u * q - v * p for p, q in zip(ra, ri)]
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        p = a[r][c]
        for i in range(r):
            q = a[i][c] // p
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def hnf(rows: Iterable[Iterable[int]], ncols: int | None = None) -> Matrix:
    """Row Hermite normal form with zero rows dropped."""
    a = as_matrix(rows)
    if not a:
        return []
    w = len(a[0]) if ncols is None else ncols
    red = _row_echelon(a, w)
    return [r for r in red if any(r)]


def left_kernel(a: Sequence[Sequence[int]], nrows: int | None = None) -> Matrix:
    """HNF basis of {x : x a = 0} for an integer matrix ``a`` (rows indexed by x)."""
    m = len(a) if nrows is None else nrows
    w = len(a[0]) if a else 0
    aug = [list(a[i]) + [int(i == j) for j in range(m)] for i in range(m)]
    red = _row_echelon(aug, w)
    ker = [r[w:] for r in red if not any(r[:w])]
    return hnf(ker, m)


def solve_left(basis: Sequence[Sequence[int]], v: Sequence[int]) -> list[int] | None:
    """Integer coefficients x with x @ basis = v for an HNF basis, or None."""
    x: list[int] = []
    rem = list(v)
    for row in basis:
        c = next(j for j, y in enumerate(row) if y)
        q, r = divmod(rem[c], row[c])
        if r:
            return None
        x.append(q)
        if q:
            rem = [a - q * b for a, b in zip(rem, row)]
    if any(rem):
        return None
    return x


class SquareBasis:
    """Coordinates with respect to a square nonsingular integer basis."""

    def __init__(self, basis: Sequence[Sequence[int]]):
        self.rows = [list(r) for r in basis]
        k = len(self.rows)
        if any(len(r) != k for r in self.rows):
            raise ValueError("basis must be square")
        a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(k)] for i, r in enumerate(self.rows)]
        for c in range(k):
            p = next((r for r in range(c, k) if a[r][c] != 0), None)
            if p is None:
                raise ValueError("basis is singular")
            a[c], a[p] = a[p], a[c]
            inv = 1 / a[c][c]
            a[c] = [x * inv for x in a[c]]
            for r in range(k):
                if r != c and a[r][c]:
                    f = a[r][c]
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        self._inv = [r[k:] for r in a]

    def coords(self, v: Sequence[int]) -> list[int] | None:
        """Integer x with x @ basis = v, or None."""
        k = len(self.rows)
        x = [sum((v[i] * self._inv[i][j] for i in range(k) if v[i]), Fraction(0)) for j in range(k)]
        if any(c.denominator != 1 for c in x):
            return None
        return [int(c) for c in x]


def solve_integer(rows: Sequence[Sequence[int]], target: Sequence[int]) -> list[int] | None:
    """Some integer x with x @ rows = target, or None if there is none."""
    if not rows:
        return [] if not any(target) else None
    aug = [list(target)] + [list(r) for r in rows]
    ker = left_kernel(aug)
    if not ker or ker[0][0] != 1:
        return None
    return [-x for x in ker[0][1:]]


# ---------------------------------------------------------------------------
# Smith normal form


def snf(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form: returns (U, D, V) with U m V = D, d1 | d2 | ..."""
    a = as_matrix(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = identity(rows)
    v = identity(cols)

    def row_op(i: int, j: int, c: int) -> None:  # row_i += c row_j
        a[i] = [x + c * y for x, y in zip(a[i], a[j])]
        u[i] = [x + c * y for x, y in zip(u[i], u[j])]

    def col_op(i: int, j: int, c: int) -> None:  # col_i += c col_j
        for r in a:
            r[i] += c * r[j]
        for r in v:
            r[i] += c * r[j]

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(rows, cols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t]:
                    row_op(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    col_op(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        done = False
            if not done:
                nz = [(abs(a[i][t]), i, -1) for i in range(t, rows) if a[i][t]]
                nz += [(abs(a[t][j]), -1, j) for j in range(t, cols) if a[t][j]]
                _, i, j = min(nz)
                if i > t:
                    swap_rows(t, i)
                elif j > t:
                    swap_cols(t, j)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            row_op(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, a, v


def invariant_factors(m: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors of ``m`` in divisibility order."""
    if not m or not m[0]:
        return []
    _, d, _ = snf(m)
    return [d[i][i] for i in range(min(len(d), len(d[0]))) if d[i][i]]


# ---------------------------------------------------------------------------
# Lattices


@dataclass(frozen=True)
class Lattice:
    """Sublattice of Z^dim spanned by HNF basis rows."""

    dim: int
    basis: tuple[Vector, ...]

    @classmethod
    def span(cls, dim: int, rows: Iterable[Iterable[int]]) -> "Lattice":
        return cls(dim, tuple(tuple(r) for r in hnf(rows, dim)))

    @classmethod
    def full(cls, dim: int, scale: int = 1) -> "Lattice":
        return cls.span(dim, [[scale * int(i == j) for j in range(dim)] for i in range(dim)])

    @property
    def rank(self) -> int:
        return len(self.basis)

    def rows(self) -> Matrix:
        return [list(r) for r in self.basis]

    def __contains__(self, v: Sequence[int]) -> bool:
        return solve_left(self.basis, v) is not None

    def coords(self, v: Sequence[int]) -> list[int]:
        x = solve_left(self.basis, v)
        if x is None:
            raise NotSublattice(f"vector {tuple(v)} not in lattice")
        return x

    def __le__(self, other: "Lattice") -> bool:
        return all(r in other for r in self.basis)

    def __add__(self, other: "Lattice") -> "Lattice":
        return Lattice.span(self.dim, list(self.basis) + list(other.basis))

    def scaled(self, c: int) -> "Lattice":
        return Lattice.span(self.dim, [[c * x for x in r] for r in self.basis])

    def intersect(self, other: "Lattice") -> "Lattice":
        a = self.rows()
        b = other.rows()
        if not a or not b:
            return Lattice(self.dim, ())
        stacked = a + [[-x for x in r] for r in b]
        ker = left_kernel(stacked)
        gens = [vecmat(k[: len(a)], a) for k in ker]
        return Lattice.span(self.dim, gens)


def quotient_order(l1: Lattice, l2: Lattice) -> int | float:
    """Index [l1 : l2] (``INFINITE`` when l2 has smaller rank)."""
    if not l2 <= l1:
        raise NotSublattice("second lattice is not contained in the first")
    if l2.rank < l1.rank:
        return INFINITE
    if l1.rank == 0:
        return 1
    coords = [l1.coords(r) for r in l2.basis]
    return math.prod(invariant_factors(coords))


def kernel_mod(m: Sequence[Sequence[int]], modulus: int) -> Lattice:
    """Lattice {x : x m = 0 mod ``modulus``}; rows of ``m`` are indexed by x."""
    r = len(m)
    c = len(m[0]) if r else 0
    if modulus < 1:
        raise ValueError("modulus must be positive")
    if c == 0 or modulus == 1:
        return Lattice.full(r)
    stacked = [list(row) for row in m] + [[modulus * int(i == j) for j in range(c)] for i in range(c)]
    ker = left_kernel(stacked)
    return Lattice.span(r, [k[:r] for k in ker])


# ---------------------------------------------------------------------------
# Alternating forms


def antisym_normal_form(a: Sequence[Sequence[int]]) -> tuple[Matrix, list[int], int]:
    """Congruence normal form of an integral alternating matrix.

    Returns (U, s, z) with U a Uᵀ = diag([[0, s_1], [-s_1, 0]], ..., 0_z) and
    s_1 | s_2 | ...  The basis rows of ``U`` are the new basis.
    """
    m = as_matrix(a)
    n = len(m)
    for i in range(n):
        if m[i][i] or any(m[i][j] != -m[j][i] for j in range(n)):
            raise NotAntisymmetric("matrix is not alternating")
    u = identity(n)

    def add(j: int, i: int, c: int) -> None:
        # basis_j += c basis_i, applied by congruence
        m[j] = [x + c * y for x, y in zip(m[j], m[i])]
        for r in m:
            r[j] += c * r[i]
        u[j] = [x + c * y for x, y in zip(u[j], u[i])]

    def swap(i: int, j: int) -> None:
        if i == j:
            return
        m[i], m[j] = m[j], m[i]
        for r in m:
            r[i], r[j] = r[j], r[i]
        u[i], u[j] = u[j], u[i]

    s: list[int] = []
    k = 0
    while k + 1 < n:
        nz = [(abs(m[i][j]), i, j) for i in range(k, n) for j in range(k, n) if m[i][j] > 0]
        if not nz:
            break
        _, i, j = min(nz)
        swap(k, i)
        if j == k:
            j = i
        swap(k + 1, j)
        while True:
            p = m[k][k + 1]
            clean = True
            for j in range(k + 2, n):
                if m[k][j]:
                    add(j, k + 1, -(m[k][j] // p))
                    clean &= m[k][j] == 0
                if m[k + 1][j]:
                    add(j, k, m[k + 1][j] // p)
                    clean &= m[k + 1][j] == 0
            if not clean:
                nz = [(abs(m[x][y]), x, y) for x in (k, k + 1) for y in range(k, n) if m[x][y]]
                _, x, y = min(nz)
                # move the smaller entry into position (k, k+1)
                if x == k + 1:
                    swap(k, k + 1)
                swap(k + 1, y)
                if m[k][k + 1] < 0:
                    swap(k, k + 1)
                continue
            bad = next(
                ((x, y) for x in range(k + 2, n) for y in range(k + 2, n) if m[x][y] % p),
                None,
            )
            if bad is None:
                break
            add(k, bad[0], 1)
        s.append(m[k][k + 1])
        k += 2
    return u, s, n - 2 * len(s)
