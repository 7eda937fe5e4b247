"""Irreducible representations of the balanced torus at a root of unity.

The representation is assembled on the normal-form basis h₁, …, h_{|V|} of
the balanced lattice: the j-th symplectic pair acts by clock and shift
matrices of size ord(ω̄^{2 s_j}), and the kernel block acts by scalars.  All
matrices are monomial (one nonzero entry per column), stored as a
permutation plus ζ_M-exponents and a common field scalar.

Character data fixes f on the η̂-level subalgebra of B_{λ,d}: f(Z^k) is
prescribed on a basis and extended by f(Z^{k+t}) = η̂^{-kQtᵀ} f(Z^k) f(Z^t),
i.e. f is an algebra map for the η̂-level Weyl product.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod
from typing import Callable, Sequence

from . import intlat
from .balanced import (
    BalancedLattice,
    TheoremViolation,
    balanced_lattice,
    normal_form_B,
    puncture_vectors,
    rank_over_center,
)
from .coeff import Cyc, CyclotomicField, RootTower, tower_from
from .quiver import NTriangulationQuiver
from .surface import SurfaceData
from .sympoly import elementary, field_roots, pbar


class InconsistentCharacter(ValueError):
    pass


class NonScalarLoop(AssertionError):
    pass


# ---------------------------------------------------------------------------
# monomial matrices


@dataclass(frozen=True)
class MonoMat:
    """Column b is sent to row ``perm[b]`` with entry ``scalar · ζ^{exps[b]}``."""

    field: CyclotomicField
    perm: tuple[int, ...]
    exps: tuple[int, ...]
    scalar: Cyc

    @property
    def size(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, F: CyclotomicField, size: int) -> "MonoMat":
        return cls(F, tuple(range(size)), (0,) * size, F.one())

    def __matmul__(self, other: "MonoMat") -> "MonoMat":
        M = self.field.M
        perm = tuple(self.perm[other.perm[b]] for b in range(other.size))
        exps = tuple((other.exps[b] + self.exps[other.perm[b]]) % M for b in range(other.size))
        return MonoMat(self.field, perm, exps, self.scalar * other.scalar)

    def inverse(self) -> "MonoMat":
        M = self.field.M
        perm = [0] * self.size
        exps = [0] * self.size
        for b, a in enumerate(self.perm):
            perm[a] = b
            exps[a] = (-self.exps[b]) % M
        return MonoMat(self.field, tuple(perm), tuple(exps), self.scalar.inverse())

    def __pow__(self, k: int) -> "MonoMat":
        base = self if k >= 0 else self.inverse()
        out = MonoMat.identity(self.field, self.size)
        for _ in range(abs(k)):
            out = out @ base
        return out

    def scale(self, c: Cyc | None = None, zeta: int = 0) -> "MonoMat":
        M = self.field.M
        s = self.scalar if c is None else self.scalar * c
        return MonoMat(self.field, self.perm, tuple((e + zeta) % M for e in self.exps), s)

    def as_scalar(self) -> Cyc | None:
        if any(a != b for b, a in enumerate(self.perm)) or len(set(self.exps)) > 1:
            return None
        return self.scalar * self.field.zeta(self.exps[0])

    def dense(self) -> list[list[Cyc]]:
        F = self.field
        out = [[F.zero()] * self.size for _ in range(self.size)]
        for b, a in enumerate(self.perm):
            out[a][b] = self.scalar * F.zeta(self.exps[b])
        return out

    def to_json_obj(self) -> dict:
        return {"perm": list(self.perm), "exps": list(self.exps), "scalar": self.scalar.to_json()}

    @classmethod
    def from_json_obj(cls, F: CyclotomicField, obj: dict) -> "MonoMat":
        return cls(F, tuple(obj["perm"]), tuple(obj["exps"]), cyc_from_json(F, obj["scalar"]))


def cyc_from_json(F: CyclotomicField, obj: Sequence[str]) -> Cyc:
    if len(obj) != F.degree:
        raise ValueError("coordinate vector has the wrong length")
    return Cyc(F, tuple(Fraction(x) for x in obj))


def _block_embed(F: CyclotomicField, sizes: Sequence[int], i: int, perm_i: Sequence[int], exps_i: Sequence[int], scalar: Cyc) -> MonoMat:
    """Lift a monomial matrix on tensor factor ``i`` to the full space."""
    strides = [prod(sizes[j + 1 :]) for j in range(len(sizes))]
    D = prod(sizes)
    perm, exps = [0] * D, [0] * D
    for b in range(D):
        digit = (b // strides[i]) % sizes[i]
        perm[b] = b + (perm_i[digit] - digit) * strides[i]
        exps[b] = exps_i[digit]
    return MonoMat(F, tuple(perm), tuple(exps), scalar)


def clock(F: CyclotomicField, size: int, e: int) -> tuple[list[int], list[int]]:
    """diag(ζ^{e·j})."""
    return list(range(size)), [(e * j) % F.M for j in range(size)]


def shift(size: int) -> tuple[list[int], list[int]]:
    """e_j ↦ e_{j+1}."""
    return [(j + 1) % size for j in range(size)], [0] * size


def solution_dimension(A: Sequence[MonoMat], B: Sequence[MonoMat]) -> int:
    """dim {X : B_j X = X A_j for all j}, exactly, for monomial matrices.

    The equations read X[πB a, πA c] = (B[a] / A[c]) X[a, c], so the unknowns
    split into orbits on index pairs; an orbit contributes one dimension iff
    its multipliers are consistent around every cycle.
    """
    F = A[0].field
    D = A[0].size
    M = F.M
    ratios = [b.scalar / a.scalar for a, b in zip(A, B)]
    plain = all(r == 1 for r in ratios)
    seen: dict[tuple[int, int], object] = {}
    dim = 0
    for start in itertools.product(range(D), repeat=2):
        if start in seen:
            continue
        seen[start] = (0, (0,) * len(A)) if not plain else 0
        stack = [start]
        good = True
        while stack:
            a, c = stack.pop()
            val = seen[(a, c)]
            for j, (Aj, Bj) in enumerate(zip(A, B)):
                nxt = (Bj.perm[a], Aj.perm[c])
                z = (Bj.exps[a] - Aj.exps[c]) % M
                if plain:
                    new = (val + z) % M  # type: ignore[operator]
                else:
                    e, cnt = val  # type: ignore[misc]
                    cnt = list(cnt)
                    cnt[j] += 1
                    new = ((e + z) % M, tuple(cnt))
                old = seen.get(nxt)
                if old is None:
                    seen[nxt] = new
                    stack.append(nxt)
                elif old != new:
                    if plain or not _same_multiplier(F, ratios, old, new):
                        good = False
        dim += good
    return dim


def _same_multiplier(F: CyclotomicField, ratios, x, y) -> bool:
    def value(v):
        e, cnt = v
        out = F.zeta(e)
        for r, c in zip(ratios, cnt):
            out = out * r**c
        return out

    return value(x) == value(y)


# ---------------------------------------------------------------------------
# specs


@dataclass
class IrrepSpec:
    """Central-character data for one irreducible representation."""

    surface: SurfaceData
    n: int
    M: int
    bd_basis: list[list[int]]
    f_values: list[Cyc]
    b_scalars: dict[str, list[Cyc]]
    _solver: intlat.SquareBasis | None = field(default=None, repr=False, compare=False)

    @property
    def tower(self) -> RootTower:
        return tower_from(self.n, self.M)

    def to_json_obj(self) -> dict:
        return {
            "surface": self.surface.to_json_obj(),
            "n": self.n,
            "order": self.M,
            "bd_basis": self.bd_basis,
            "f_values": [x.to_json() for x in self.f_values],
            "b_scalars": {p: [x.to_json() for x in v] for p, v in self.b_scalars.items()},
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "IrrepSpec":
        M = int(obj["order"])
        F = tower_from(int(obj["n"]), M).field
        return cls(
            SurfaceData.from_json_obj(obj["surface"]),
            int(obj["n"]),
            M,
            [list(map(int, r)) for r in obj["bd_basis"]],
            [cyc_from_json(F, x) for x in obj["f_values"]],
            {p: [cyc_from_json(F, x) for x in v] for p, v in obj["b_scalars"].items()},
        )

    def f(self, k: Sequence[int], Q2) -> Cyc:
        """f(Z^k) at the η̂ level for k in B_{λ,d}."""
        F = self.tower.field
        N = self.tower.N
        if self._solver is None:
            self._solver = intlat.SquareBasis(self.bd_basis)
        c = self._solver.coords(k)
        if c is None:
            raise InconsistentCharacter(f"{tuple(k)} is not in B_d")
        out = F.one()
        for ci, v in zip(c, self.f_values):
            out = out * v**ci
        e = 0
        for i, j in itertools.combinations(range(len(c)), 2):
            if c[i] and c[j]:
                e += c[i] * c[j] * intlat.bilinear(self.bd_basis[i], Q2, self.bd_basis[j])
        return out * F.half(-N * N * e)


@dataclass
class IrrepData:
    spec: IrrepSpec
    quiver: NTriangulationQuiver
    bl: BalancedLattice
    basis: list[list[int]]
    block_sizes: list[int]
    generators: list[MonoMat]
    dimension: int
    _lat: intlat.SquareBasis | None = field(default=None, repr=False)

    @property
    def field(self) -> CyclotomicField:
        return self.spec.tower.field

    def rho(self, k: Sequence[int]) -> MonoMat:
        """ρ(Z^k) for balanced k via the normal-form expansion."""
        if self._lat is None:
            self._lat = intlat.SquareBasis(self.basis)
        a = self._lat.coords(k)
        if a is None:
            raise ValueError(f"{tuple(k)} is not balanced")
        Q2 = self.quiver.Q2
        out = MonoMat.identity(self.field, self.dimension)
        e = 0
        for i, (ai, g) in enumerate(zip(a, self.generators)):
            if ai:
                out = out @ g**ai
        for i, j in itertools.combinations(range(len(a)), 2):
            if a[i] and a[j]:
                e += a[i] * a[j] * intlat.bilinear(self.basis[i], Q2, self.basis[j])
        # Z^{x+y} = q^{-x·2Q·y} Z^x Z^y
        return out.scale(zeta=-e)

    def to_json_obj(self) -> dict:
        return {
            "dimension": self.dimension,
            "block_sizes": self.block_sizes,
            "basis": self.basis,
            "generators": [g.to_json_obj() for g in self.generators],
            "spec": self.spec.to_json_obj(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "IrrepData":
        spec = IrrepSpec.from_json_obj(obj["spec"])
        q = NTriangulationQuiver(spec.surface, spec.n)
        F = spec.tower.field
        gens = [MonoMat.from_json_obj(F, g) for g in obj["generators"]]
        return cls(spec, q, balanced_lattice(q), obj["basis"], obj["block_sizes"], gens, obj["dimension"])


def expected_dimension(genus: int, m: int, n: int, d: int, N: int) -> int:
    exp2 = 2 * (n * n - 1) * (genus - 1) + n * (n - 1) * m
    return d**genus * N ** (exp2 // 2)


# ---------------------------------------------------------------------------
# construction


@dataclass(frozen=True)
class _Setup:
    quiver: NTriangulationQuiver
    bl: BalancedLattice
    tower: RootTower
    basis: list[list[int]]
    pair_exps: list[int]  # ζ-exponent of the pair commutation factor
    sizes: list[int]
    zeros: int


def _setup(surface: SurfaceData, n: int, M: int) -> _Setup:
    q = NTriangulationQuiver(surface, n)
    bl = balanced_lattice(q)
    tower = tower_from(n, M)
    nf = normal_form_B(bl)
    F = tower.field
    pair_exps, sizes = [], []
    for i in range(len(nf.s)):
        x, y = nf.basis[2 * i], nf.basis[2 * i + 1]
        e = 2 * intlat.bilinear(x, q.Q2, y)
        size = F.M // gcd(F.M, e)
        want = tower.d * tower.N if nf.s[i] == 1 else tower.N
        if size != want:
            raise TheoremViolation(f"block {i} has size {size}, expected {want}")
        pair_exps.append(e)
        sizes.append(size)
    return _Setup(q, bl, tower, nf.basis, pair_exps, sizes, nf.zeros)


def _center_basis(st: _Setup) -> list[list[int]]:
    out = []
    for i, D in enumerate(st.sizes):
        out.append([D * x for x in st.basis[2 * i]])
        out.append([D * x for x in st.basis[2 * i + 1]])
    out += st.basis[2 * len(st.sizes) :]
    return out


def _assemble(st: _Setup, alphas: Sequence[Cyc], betas: Sequence[Cyc], gammas: Sequence[Cyc]) -> list[MonoMat]:
    F = st.tower.field
    D = prod(st.sizes) if st.sizes else 1
    gens = []
    for i, size in enumerate(st.sizes):
        p, e = clock(F, size, st.pair_exps[i])
        gens.append(_block_embed(F, st.sizes, i, p, e, alphas[i]))
        p, e = shift(size)
        gens.append(_block_embed(F, st.sizes, i, p, e, betas[i]))
    for g in gammas:
        gens.append(MonoMat(F, tuple(range(D)), (0,) * D, g))
    return gens


def _data(spec: IrrepSpec, st: _Setup, gens: list[MonoMat]) -> IrrepData:
    D = prod(st.sizes) if st.sizes else 1
    return IrrepData(spec, st.quiver, st.bl, st.basis, list(st.sizes), gens, D)


def _weyl_exponent(rows: Sequence[Sequence[int]], w: Sequence[int], Q2) -> int:
    e = 0
    for i, j in itertools.combinations(range(len(w)), 2):
        if w[i] and w[j]:
            e += w[i] * w[j] * intlat.bilinear(rows[i], Q2, rows[j])
    return e


Chooser = Callable[[Cyc, int], list]


def build_irrep(spec: IrrepSpec, chooser: Chooser = field_roots, pick: int = 0) -> IrrepData:
    """The irreducible representation with the given central character.

    ``pick`` selects which root the chooser's list supplies (its position
    modulo the number of roots), so different builds can be compared.
    """
    st = _setup(spec.surface, spec.n, spec.M)
    F = st.tower.field
    q = st.quiver
    N = st.tower.N
    E = _center_basis(st)
    gens: list[list[int]] = []
    targets: list[Cyc] = []
    for k, v in zip(spec.bd_basis, spec.f_values):
        gens.append([N * x for x in k])
        targets.append(v)
    for p in q.surface.punctures:
        pv = puncture_vectors(q, p)
        vals = spec.b_scalars.get(p)
        if vals is None or len(vals) != spec.n - 1:
            raise InconsistentCharacter(f"missing b-scalars at {p}")
        for i in range(1, spec.n):
            gens.append(list(pv.b[i]))
            targets.append(vals[i - 1])
    W = []
    adj = []
    solver = intlat.SquareBasis(E)
    for g, t in zip(gens, targets):
        w = solver.coords(g)
        if w is None:
            raise InconsistentCharacter(f"generator {tuple(g)} is not central")
        W.append(w)
        adj.append(t * F.half(_weyl_exponent(E, w, q.Q2)))
    for rel in intlat.left_kernel(W):
        val = F.one()
        for r, t in zip(rel, adj):
            val = val * t**r
        if val != 1:
            raise InconsistentCharacter(f"relation {rel} evaluates to {val}, not 1")
    u = []
    for l in range(len(E)):
        y = intlat.solve_integer(W, [int(i == l) for i in range(len(E))])
        if y is None:
            raise InconsistentCharacter("character data does not generate the center")
        val = F.one()
        for r, t in zip(y, adj):
            if r:
                val = val * t**r
        u.append(val)
    alphas, betas = [], []
    for i, size in enumerate(st.sizes):
        for target, store in ((u[2 * i], alphas), (u[2 * i + 1], betas)):
            roots = list(chooser(target, size))
            store.append(roots[pick % len(roots)])
    gammas = u[2 * len(st.sizes) :]
    return _data(spec, st, _assemble(st, alphas, betas, gammas))


def spec_from_irrep(data: IrrepData) -> IrrepSpec:
    """Read the central character back off a built representation."""
    F = data.field
    N = data.spec.tower.N
    bd = data.bl.B_d(data.spec.tower.d).rows()
    fv = []
    for k in bd:
        s = data.rho([N * x for x in k]).as_scalar()
        if s is None:
            raise TheoremViolation("Z^{Nk} is not scalar")
        fv.append(s)
    bs: dict[str, list[Cyc]] = {}
    for p in data.quiver.surface.punctures:
        pv = puncture_vectors(data.quiver, p)
        row = []
        for i in range(1, data.spec.n):
            s = data.rho(pv.b[i]).as_scalar()
            if s is None:
                raise TheoremViolation("b-monomial is not scalar")
            row.append(s)
        bs[p] = row
    _ = F
    return IrrepSpec(data.spec.surface, data.spec.n, data.spec.M, bd, fv, bs)


def random_irrep(surface: SurfaceData, n: int, M: int, seed: int = 0) -> IrrepData:
    """A representation with random root-of-unity and rational scalars.

    The returned data carries the spec read back from it.
    """
    rng = random.Random(seed)
    st = _setup(surface, n, M)
    F = st.tower.field

    def rnd() -> Cyc:
        return F.zeta(rng.randrange(F.M)) * Fraction(rng.choice([1, 2, 3]), rng.choice([1, 2]))

    alphas = [rnd() for _ in st.sizes]
    betas = [rnd() for _ in st.sizes]
    gammas = [rnd() for _ in range(st.zeros)]
    placeholder = IrrepSpec(surface, n, M, [], [], {})
    data = _data(placeholder, st, _assemble(st, alphas, betas, gammas))
    data.spec = spec_from_irrep(data)
    return data


# ---------------------------------------------------------------------------
# verification


@dataclass
class IrrepReport:
    dimension: int
    expected_dimension: int
    relations: bool
    central_scalars: bool
    commutant_dimension: int
    rank: int
    shadow: bool
    failures: list[str]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json_obj(self) -> dict:
        return {
            "dimension": self.dimension,
            "expected_dimension": self.expected_dimension,
            "relations": self.relations,
            "central_scalars": self.central_scalars,
            "commutant_dimension": self.commutant_dimension,
            "rank": self.rank,
            "dimension_squared_is_rank": self.dimension**2 == self.rank,
            "shadow": self.shadow,
            "failures": self.failures,
            "pass": self.passed,
        }


def check_relations(data: IrrepData) -> bool:
    Q2 = data.quiver.Q2
    for (i, x), (j, y) in itertools.combinations(enumerate(data.basis), 2):
        e = 2 * intlat.bilinear(x, Q2, y)
        A, B = data.generators[i], data.generators[j]
        if A @ B != (B @ A).scale(zeta=e):
            return False
    return True


def check_central(data: IrrepData) -> list[str]:
    bad = []
    spec = data.spec
    N = spec.tower.N
    for k, v in zip(spec.bd_basis, spec.f_values):
        s = data.rho([N * x for x in k]).as_scalar()
        if s != v:
            bad.append(f"rho(Z^(N k)) != f for k={k}")
    for p, vals in spec.b_scalars.items():
        pv = puncture_vectors(data.quiver, p)
        for i, v in enumerate(vals, start=1):
            if data.rho(pv.b[i]).as_scalar() != v:
                bad.append(f"rho(Z^b({p},{i})) != prescribed scalar")
    return bad


def loop_scalars(data: IrrepData) -> dict[str, dict[str, object]]:
    """s(p, i) from the loop images and t(p, i) from the d-monomials."""
    out: dict[str, dict[str, object]] = {}
    n = data.spec.n
    for p in data.quiver.surface.punctures:
        pv = puncture_vectors(data.quiver, p)
        t = []
        for i in range(1, n + 1):
            s = data.rho(pv.d[i]).as_scalar()
            if s is None:
                raise NonScalarLoop(f"rho(Z^d({p},{i})) is not scalar")
            t.append(s)
        ctot = pv.c_total()
        svals = []
        for k in range(1, n):
            total = data.field.zero()
            for I in itertools.combinations(range(1, n + 1), k):
                cI = pv.c_set(I)
                s = data.rho([n * x - k * y for x, y in zip(cI, ctot)]).as_scalar()
                if s is None:
                    raise NonScalarLoop(f"loop term at {p} is not scalar")
                total = total + s
            svals.append(total)
        out[p] = {"s": svals, "t": t}
    return out


def loop_scalar(data: IrrepData, p: str, i: int):
    if not 1 <= i <= data.spec.n - 1:
        raise ValueError("i must lie in 1..n-1")
    return loop_scalars(data)[p]["s"][i - 1]


@dataclass
class ShadowReport:
    elementary_ok: bool
    shadow_ok: bool
    checked: int

    @property
    def passed(self) -> bool:
        return self.elementary_ok and self.shadow_ok


def shadow_check(data: IrrepData) -> ShadowReport:
    """s = e(t) and f(η̂-level loop image) = P̄_{N,i}(s)."""
    n = data.spec.n
    N = data.spec.tower.N
    Q2 = data.quiver.Q2
    F = data.field
    el_ok = sh_ok = True
    checked = 0
    for p, vals in loop_scalars(data).items():
        s, t = vals["s"], vals["t"]
        pv = puncture_vectors(data.quiver, p)
        ctot = pv.c_total()
        for k in range(1, n):
            checked += 1
            if elementary(t, k) != s[k - 1]:
                el_ok = False
            lhs = F.zero()
            for I in itertools.combinations(range(1, n + 1), k):
                cI = pv.c_set(I)
                lhs = lhs + data.spec.f([n * x - k * y for x, y in zip(cI, ctot)], Q2)
            if lhs != pbar(N, k, n).evaluate(s, F.one()):
                sh_ok = False
    return ShadowReport(el_ok, sh_ok, checked)


def verify_irrep(data: IrrepData) -> IrrepReport:
    fails: list[str] = []
    S = data.quiver.surface
    tw = data.spec.tower
    want = expected_dimension(S.genus, len(S.punctures), data.spec.n, tw.d, tw.N)
    if data.dimension != want:
        fails.append(f"dimension {data.dimension} != {want}")
    rel = check_relations(data)
    if not rel:
        fails.append("q-commutation relations fail")
    central = check_central(data)
    fails += central
    gens = data.generators
    cdim = solution_dimension(gens, gens) if gens else 1
    if cdim != 1:
        fails.append(f"commutant has dimension {cdim}")
    rank = rank_over_center(data.bl, tw, check=False).rank
    if data.dimension**2 != rank:
        fails.append(f"D^2 = {data.dimension ** 2} != rank {rank}")
    try:
        sh = shadow_check(data)
        shadow = sh.passed
    except NonScalarLoop as exc:
        fails.append(str(exc))
        shadow = False
    if not shadow:
        fails.append("shadow identities fail")
    return IrrepReport(data.dimension, want, rel, not central, cdim, rank, shadow, fails)


def intertwiner_dimension(a: IrrepData, b: IrrepData) -> int:
    """dim Hom(ρ_a, ρ_b) over the normal-form generators (same basis required)."""
    if a.basis != b.basis:
        raise ValueError("representations are built on different bases")
    if a.dimension != b.dimension:
        return 0
    return solution_dimension(a.generators, b.generators)
