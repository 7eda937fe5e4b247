"""Exact coefficient rings.

* :class:`CyclotomicField` / :class:`Cyc` -- Q(ζ_M) with dense rational
  coordinates in the power basis of Q[x]/Φ_M.
* :class:`FormalLaurent` -- integer Laurent polynomials in a formal symbol
  ``u`` standing for ω̂^{1/2} (generic, non-root-of-unity mode).
* :class:`RootTower` -- the orders attached to ω̂^{1/2} = ζ_M.

Both rings expose ``ring.half(e)`` = (ω̂^{1/2})^e, which is how every phase in
the package is produced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

import sympy


class DivisionByZero(ZeroDivisionError):
    pass


# ---------------------------------------------------------------------------
# cyclotomic fields


class CyclotomicField:
    """Q(ζ_M) for 1 <= M <= 120 (larger M works, just more slowly)."""

    def __init__(self, M: int):
        if M < 1:
            raise ValueError("order must be positive")
        self.M = M
        x = sympy.Symbol("x")
        phi = sympy.Poly(sympy.cyclotomic_poly(M, x), x)
        self.degree = phi.degree()
        # monic Φ_M = x^d + c_{d-1} x^{d-1} + ...; low-order coefficient list
        self.phi = [int(c) for c in reversed(phi.all_coeffs())]
        d = self.degree
        # reduction of x^k for d <= k < 2d, as coordinate vectors
        red: list[list[int]] = []
        cur = [-c for c in self.phi[:d]]  # x^d
        for _ in range(d):
            red.append(cur)
            top = cur[-1]
            nxt = [0] + cur[:-1]
            if top:
                nxt = [a - top * c for a, c in zip(nxt, self.phi[:d])]
            cur = nxt
        self._red = red
        self._zeta = [self._from_poly_power(k) for k in range(M)]

    def _from_poly_power(self, k: int) -> tuple[Fraction, ...]:
        d = self.degree
        v = [0] * max(d, k + 1)
        v[k] = 1
        return self._reduce_int(v)

    def _reduce_int(self, v: list) -> tuple:
        d = self.degree
        v = list(v)
        for k in range(len(v) - 1, d - 1, -1):
            c = v[k]
            if c:
                v[k] = 0
                # x^k = x^{k-d} * x^d
                for i, a in enumerate(self.phi[:d]):
                    v[k - d + i] -= c * a
        v = v[:d] + [0] * (d - len(v[:d]))
        return tuple(Fraction(x) for x in v)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CyclotomicField) and other.M == self.M

    def __hash__(self) -> int:
        return hash(("cyc", self.M))

    def __repr__(self) -> str:
        return f"CyclotomicField({self.M})"

    # element constructors
    def zero(self) -> "Cyc":
        return Cyc(self, (Fraction(0),) * self.degree)

    def one(self) -> "Cyc":
        return self.from_rational(1)

    def from_rational(self, q: Union[int, Fraction]) -> "Cyc":
        v = [Fraction(0)] * self.degree
        v[0] = Fraction(q)
        return Cyc(self, tuple(v))

    def zeta(self, k: int = 1) -> "Cyc":
        return Cyc(self, self._zeta[k % self.M])

    def half(self, e: int) -> "Cyc":
        """(ω̂^{1/2})^e with ω̂^{1/2} = ζ_M."""
        return self.zeta(e)

    def coerce(self, x: Union["Cyc", int, Fraction]) -> "Cyc":
        if isinstance(x, Cyc):
            if x.field != self:
                raise ValueError("field mismatch")
            return x
        return self.from_rational(x)

    def _mul(self, a: tuple, b: tuple) -> tuple:
        d = self.degree
        prod = [0] * (2 * d - 1) if d else []
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:d]
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                for i, r in enumerate(self._red[k - d]):
                    if r:
                        out[i] += c * r
        return tuple(Fraction(x) for x in out)


class Cyc:
    """An element of Q(ζ_M)."""

    __slots__ = ("field", "c")

    def __init__(self, field: CyclotomicField, coords: tuple):
        self.field = field
        self.c = coords

    def _co(self, other) -> "Cyc":
        return self.field.coerce(other)

    def __add__(self, other) -> "Cyc":
        o = self._co(other)
        return Cyc(self.field, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self) -> "Cyc":
        return Cyc(self.field, tuple(-a for a in self.c))

    def __sub__(self, other) -> "Cyc":
        return self + (-self._co(other))

    def __rsub__(self, other) -> "Cyc":
        return self._co(other) - self

    def __mul__(self, other) -> "Cyc":
        o = self._co(other)
        return Cyc(self.field, self.field._mul(self.c, o.c))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Cyc":
        return self * self._co(other).inverse()

    def __rtruediv__(self, other) -> "Cyc":
        return self._co(other) * self.inverse()

    def __pow__(self, k: int) -> "Cyc":
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        return isinstance(other, Cyc) and other.field == self.field and other.c == self.c

    def __hash__(self) -> int:
        return hash((self.field.M, self.c))

    def is_zero(self) -> bool:
        return not any(self.c)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def inverse(self) -> "Cyc":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        d = self.field.degree
        # columns of the multiplication-by-self matrix
        cols = []
        e = [Fraction(0)] * d
        for i in range(d):
            basis = list(e)
            basis[i] = Fraction(1)
            cols.append(self.field._mul(self.c, tuple(basis)))
        rows = [[cols[j][i] for j in range(d)] + [Fraction(int(i == 0))] for i in range(d)]
        sol = _solve_fraction(rows, d)
        return Cyc(self.field, tuple(sol))

    def to_json(self) -> list[str]:
        return [str(x) for x in self.c]

    def rational(self) -> Fraction | None:
        if any(self.c[1:]):
            return None
        return self.c[0]

    def __repr__(self) -> str:
        terms = [f"{x}*z^{i}" if i else f"{x}" for i, x in enumerate(self.c) if x]
        return f"Cyc{self.field.M}(" + (" + ".join(terms) or "0") + ")"


def _solve_fraction(rows: list[list[Fraction]], d: int) -> list[Fraction]:
    a = [list(r) for r in rows]
    for c in range(d):
        p = next(r for r in range(c, d) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(d):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [a[r][d] for r in range(d)]


@lru_cache(maxsize=None)
def cyclotomic(M: int) -> CyclotomicField:
    return CyclotomicField(M)


def order_of(x: Cyc) -> int | None:
    """Multiplicative order of a root of unity in Q(ζ_M), else None."""
    if x.is_zero():
        return None
    bound = math.lcm(2, x.field.M)
    for k in sorted(sympy.divisors(bound)):
        if x ** k == 1:
            return k
    return None


# ---------------------------------------------------------------------------
# formal Laurent polynomials


class FormalLaurentRing:
    """Z[u, u^{-1}] with u standing for ω̂^{1/2}."""

    def zero(self) -> "FormalLaurent":
        return FormalLaurent({})

    def one(self) -> "FormalLaurent":
        return FormalLaurent({0: 1})

    def half(self, e: int) -> "FormalLaurent":
        return FormalLaurent({e: 1})

    def from_rational(self, q: int) -> "FormalLaurent":
        if Fraction(q).denominator != 1:
            raise ValueError("formal mode has integer coefficients")
        return FormalLaurent({0: int(q)} if q else {})

    def coerce(self, x) -> "FormalLaurent":
        return x if isinstance(x, FormalLaurent) else self.from_rational(x)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FormalLaurentRing)

    def __hash__(self) -> int:
        return hash("laurent")

    def __repr__(self) -> str:
        return "FormalLaurentRing()"


FORMAL = FormalLaurentRing()


class FormalLaurent:
    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, int]):
        self.terms = {e: c for e, c in terms.items() if c}

    @property
    def field(self) -> FormalLaurentRing:
        return FORMAL

    def __add__(self, other) -> "FormalLaurent":
        o = FORMAL.coerce(other)
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = t.get(e, 0) + c
        return FormalLaurent(t)

    __radd__ = __add__

    def __neg__(self) -> "FormalLaurent":
        return FormalLaurent({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "FormalLaurent":
        return self + (-FORMAL.coerce(other))

    def __rsub__(self, other) -> "FormalLaurent":
        return FORMAL.coerce(other) - self

    def __mul__(self, other) -> "FormalLaurent":
        o = FORMAL.coerce(other)
        t: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                t[e1 + e2] = t.get(e1 + e2, 0) + c1 * c2
        return FormalLaurent(t)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "FormalLaurent":
        if k < 0:
            return self.inverse() ** (-k)
        out = FORMAL.one()
        for _ in range(k):
            out = out * self
        return out

    def inverse(self) -> "FormalLaurent":
        if len(self.terms) != 1:
            raise DivisionByZero("only monomials are invertible in Z[u, 1/u]")
        (e, c), = self.terms.items()
        if c not in (1, -1):
            raise DivisionByZero("coefficient not a unit")
        return FormalLaurent({-e: c})

    def __truediv__(self, other) -> "FormalLaurent":
        return self * FORMAL.coerce(other).inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = FORMAL.from_rational(other)
        return isinstance(other, FormalLaurent) and other.terms == self.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in sorted(self.terms.items())}

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*u^{e}" for e, c in sorted(self.terms.items()))


Ring = Union[CyclotomicField, FormalLaurentRing]
Scalar = Union[Cyc, FormalLaurent]


# ---------------------------------------------------------------------------
# root tower


@dataclass(frozen=True)
class RootTower:
    """Orders derived from ω̂^{1/2} = ζ_M.

    All exponents are exponents of ζ_M: ω̂ = ζ^2, ω̄ = ζ^{2n}, ω = ζ^{2n²},
    η̂^{1/2} = ζ^{N²}.
    """

    n: int
    M: int
    N2: int  # order of ω̂², written N″ in the text
    N1: int  # N′
    d: int
    N: int

    @property
    def r2(self) -> bool:
        return self.d == 1

    @property
    def eta_half_exponent(self) -> int:
        return self.N * self.N

    @property
    def field(self) -> CyclotomicField:
        return cyclotomic(self.M)

    def omega_bar_d_sign(self) -> int | None:
        """ω̄^d as ±1 if it is, else None (assumption R1 closing identity)."""
        e = (2 * self.n * self.d * self.N * self.N) % self.M
        # η̄ = η̂^n = ζ^{2 n N²}; R1 asserts η̄^d = ±1
        if e == 0:
            return 1
        if 2 * e == self.M:
            return -1
        return None

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "M": self.M,
            "N''": self.N2,
            "N'": self.N1,
            "d": self.d,
            "N": self.N,
            "eta_half": f"zeta_{self.M}^{self.eta_half_exponent % self.M}",
            "R2": self.r2,
        }


def tower_from(n: int, M: int) -> RootTower:
    if n < 2 or M < 1:
        raise ValueError("need n >= 2 and M >= 1")
    n2 = M // math.gcd(M, 4)
    n1 = n2 // math.gcd(n2, n)
    d = math.gcd(n1, n)
    return RootTower(n, M, n2, n1, d, n1 // d)


def order_for(n2: int) -> int:
    """Smallest M whose ζ_M^4 has order ``n2`` (used for grid towers)."""
    for M in range(1, 8 * n2 + 1):
        if M // math.gcd(M, 4) == n2:
            return M
    raise ValueError(n2)


def product(xs: Iterable[Scalar], ring: Ring) -> Scalar:
    out = ring.one()
    for x in xs:
        out = out * x
    return out
