"""Elementary symmetric polynomials and reduced power elementary polynomials.

P̄_{m,k}(y₁, …, y_{n-1}) expresses e_k(c₁^m, …, c_n^m) through
y_i = e_i(c₁, …, c_n) under the constraint e_n = c₁⋯c_n = 1.  It is read off
the characteristic polynomial of the m-th power of the companion matrix of
x^n − y₁x^{n-1} + y₂x^{n-2} − ⋯ + (−1)^n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Callable, Iterable, Sequence

import sympy


class ProductNotOne(ValueError):
    pass


class Unrepresentable(ValueError):
    """A required root does not lie in the working field."""


@dataclass(frozen=True)
class SymPoly:
    """Integer polynomial in y₁..y_{n-1}, stored as {exponent tuple: coefficient}."""

    n: int
    terms: tuple[tuple[tuple[int, ...], int], ...]

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.terms)

    def evaluate(self, ys: Sequence, one=1):
        """Evaluate at values supporting + and * (ints, Fractions, field elements)."""
        if len(ys) != self.n - 1:
            raise ValueError(f"expected {self.n - 1} values")
        total = None
        for exps, c in self.terms:
            term = one
            for y, e in zip(ys, exps):
                for _ in range(e):
                    term = term * y
            term = term * c
            total = term if total is None else total + term
        return one * 0 if total is None else total

    def to_sympy(self) -> sympy.Expr:
        ys = sympy.symbols(f"y1:{self.n}")
        return sum(
            (c * sympy.Mul(*[y**e for y, e in zip(ys, exps)]) for exps, c in self.terms),
            sympy.Integer(0),
        )

    def __str__(self) -> str:
        return str(sympy.expand(self.to_sympy()))


def _companion(n: int, ys: Sequence[sympy.Symbol]) -> sympy.Matrix:
    # x^n + a_{n-1} x^{n-1} + ... + a_0 with a_{n-i} = (-1)^i y_i and y_n = 1
    coeffs = [(-1) ** i * (ys[i - 1] if i < n else 1) for i in range(1, n + 1)]
    C = sympy.zeros(n, n)
    for i in range(1, n):
        C[i, i - 1] = 1
    for i in range(1, n + 1):
        C[n - i, n - 1] = -coeffs[i - 1]
    return C


@lru_cache(maxsize=None)
def _pbar_all(m: int, n: int) -> tuple[SymPoly, ...]:
    ys = sympy.symbols(f"y1:{n}")
    x = sympy.Symbol("x")
    C = _companion(n, ys)
    P = (C**m).charpoly(x)
    coeffs = P.all_coeffs()  # leading first
    out = []
    for k in range(1, n):
        expr = sympy.expand((-1) ** k * coeffs[k])
        poly = sympy.Poly(expr, *ys) if ys else None
        terms = tuple(sorted((tuple(e), int(c)) for e, c in poly.terms())) if poly else ()
        out.append(SymPoly(n, terms))
    return tuple(out)


def pbar(m: int, k: int, n: int) -> SymPoly:
    if m < 1 or not 1 <= k <= n - 1:
        raise ValueError("need m >= 1 and 1 <= k <= n-1")
    return _pbar_all(m, n)[k - 1]


def elementary(vals: Sequence, k: int):
    """e_k of the given values."""
    if not 0 <= k <= len(vals):
        raise ValueError("k out of range")
    total = None
    for S in itertools.combinations(vals, k):
        term = reduce(lambda a, b: a * b, S) if S else 1
        total = term if total is None else total + term
    return total if total is not None else 0


def elementary_all(vals: Sequence) -> list:
    """[e_1, …, e_{n-1}] of the values."""
    return [elementary(vals, k) for k in range(1, len(vals))]


# ---------------------------------------------------------------------------
# shadow equations


def field_roots(x, m: int) -> list:
    """All m-th roots of ``x`` inside its cyclotomic field.

    Handles x = q·ζ^a with q rational; anything else is Unrepresentable.
    """
    F = x.field
    L = 2 * F.M if F.M % 2 else F.M
    for b in range(L):
        q = (x * F.zeta(-b)).rational()
        if q is not None:
            break
    else:
        raise Unrepresentable("value is not a rational multiple of a root of unity")
    if q == 0:
        return [F.zero()]
    rho = _rational_root(abs(q), m)
    if rho is None:
        raise Unrepresentable(f"{abs(q)} has no rational {m}-th root")
    out = []
    for sign in (1, -1):
        for b in range(L):
            c = F.zeta(b) * (sign * rho)
            if c**m == x and c not in out:
                out.append(c)
    if not out:
        raise Unrepresentable("no m-th root in the field")
    return out


def _rational_root(q: Fraction, m: int) -> Fraction | None:
    q = Fraction(q)

    def iroot(a: int) -> int | None:
        r = round(a ** (1.0 / m)) if a else 0
        for c in (r - 1, r, r + 1):
            if c >= 0 and c**m == a:
                return c
        return None

    a, b = iroot(q.numerator), iroot(q.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def solve_shadow(
    m: int,
    s: Sequence,
    chooser: Callable[[object, int], Iterable] = field_roots,
) -> list[tuple]:
    """All (e₁(c), …, e_{n-1}(c)) with c_i^m = s_i and ∏c_i = 1.

    Every returned tuple x satisfies P̄_{m,k}(x) = e_k(s) for 1 ≤ k ≤ n−1.
    """
    n = len(s)
    one = s[0] * 0 + 1
    if reduce(lambda a, b: a * b, s) != one:
        raise ProductNotOne("the s_i must multiply to 1")
    roots = [list(chooser(si, m)) for si in s]
    out: list[tuple] = []
    for choice in itertools.product(*roots):
        if reduce(lambda a, b: a * b, choice) != one:
            continue
        x = tuple(elementary(choice, k) for k in range(1, n))
        if x not in out:
            out.append(x)
    for x in out:
        for k in range(1, n):
            if pbar(m, k, n).evaluate(x, one) != elementary(s, k):
                raise AssertionError("shadow solution fails the system")
    return out
