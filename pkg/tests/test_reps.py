import pytest
import sympy
from hypothesis import given, settings, strategies as st

from fgtorus import reps
from fgtorus.coeff import cyclotomic, tower_from
from fgtorus.reps import IrrepData, IrrepSpec, MonoMat

from conftest import built


@pytest.fixture(scope="module")
def torus_irrep():
    return reps.random_irrep(built(1, 1, 2)[0], 2, 20, seed=1)


@pytest.mark.parametrize(
    "g,m,n,M,D",
    [(1, 1, 2, 20, 5), (0, 3, 2, 20, 1), (1, 1, 3, 20, 125), (0, 3, 3, 20, 5), (1, 1, 2, 8, 1)],
)
def test_dimension_values(g, m, n, M, D):
    tw = tower_from(n, M)
    assert reps.expected_dimension(g, m, n, tw.d, tw.N) == D
    data = reps.random_irrep(built(g, m, n)[0], n, M, seed=2)
    assert data.dimension == D
    rep = reps.verify_irrep(data)
    assert rep.passed, rep.failures
    assert rep.dimension**2 == rep.rank


def test_torus_blocks(torus_irrep):
    assert torus_irrep.block_sizes == [5]
    assert all(g.size == 5 for g in torus_irrep.generators)


def test_sphere_scalars():
    data = reps.random_irrep(built(0, 3, 2)[0], 2, 20, seed=0)
    assert all(g.as_scalar() is not None for g in data.generators)


def test_build_from_spec_round_trip(torus_irrep):
    spec = IrrepSpec.from_json_obj(torus_irrep.spec.to_json_obj())
    data = reps.build_irrep(spec)
    assert reps.verify_irrep(data).passed
    again = IrrepData.from_json_obj(data.to_json_obj())
    assert reps.verify_irrep(again).passed
    assert reps.intertwiner_dimension(data, torus_irrep) == 1


def test_different_root_choice_isomorphic(torus_irrep):
    a = reps.build_irrep(torus_irrep.spec, pick=0)
    b = reps.build_irrep(torus_irrep.spec, pick=1)
    assert reps.intertwiner_dimension(a, b) == 1


def test_corrupted_scalar_fails(torus_irrep):
    obj = torus_irrep.spec.to_json_obj()
    spec = IrrepSpec.from_json_obj(obj)
    data = reps.build_irrep(spec)
    F = data.field
    spec.f_values[0] = spec.f_values[0] * F.zeta(1)
    rep = reps.verify_irrep(data)
    assert not rep.central_scalars and not rep.passed
    assert rep.relations


def test_torus_loop_scalars(torus_irrep):
    p = torus_irrep.quiver.surface.punctures[0]
    vals = reps.loop_scalars(torus_irrep)[p]
    t1, t2 = vals["t"]
    assert t1 * t2 == torus_irrep.field.one()
    assert reps.loop_scalar(torus_irrep, p, 1) == t1 + t2
    with pytest.raises(ValueError):
        reps.loop_scalar(torus_irrep, p, 2)


def test_shadow(torus_irrep):
    sh = reps.shadow_check(torus_irrep)
    assert sh.passed and sh.checked == 1


def test_monomat_algebra():
    F = tower_from(2, 20).field
    A = MonoMat(F, (1, 2, 0), (0, 4, 8), F.one())
    I = MonoMat.identity(F, 3)
    assert A @ A.inverse() == I
    assert A**3 == (A @ A) @ A
    assert A**-2 == (A.inverse()) ** 2
    assert MonoMat.from_json_obj(F, A.to_json_obj()) == A


def test_solution_dimension_small():
    F = tower_from(2, 20).field
    clock = MonoMat(F, (0, 1), (0, 10), F.one())
    shift = MonoMat(F, (1, 0), (0, 0), F.one())
    assert reps.solution_dimension([clock, shift], [clock, shift]) == 1
    assert reps.solution_dimension([clock], [clock]) == 2


def _dense(m):
    return sympy.Matrix([[sum(sympy.Rational(c.numerator, c.denominator) * sympy.I**i for i, c in enumerate(x.c)) for x in row] for row in m.dense()])


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(1, 3), st.randoms(use_true_random=False))
def test_solution_dimension_vs_dense(size, count, rng):
    F = cyclotomic(4)

    def rnd():
        perm = list(range(size))
        rng.shuffle(perm)
        return MonoMat(F, tuple(perm), tuple(rng.randrange(4) for _ in range(size)), F.one())

    A = [rnd() for _ in range(count)]
    B = [rnd() for _ in range(count)]
    # B_j X = X A_j, unknowns X flattened row-major
    rows = []
    for a, b in zip(A, B):
        da, db = _dense(a), _dense(b)
        for i in range(size):
            for j in range(size):
                row = [0] * size * size
                for t in range(size):
                    row[t * size + j] += db[i, t]
                    row[i * size + t] -= da[t, j]
                rows.append(row)
    want = size * size - sympy.Matrix(rows).rank(simplify=True)
    assert reps.solution_dimension(A, B) == want
