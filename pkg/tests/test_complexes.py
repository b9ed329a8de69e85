import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gen import random_ravg
from oracles import is_relative_averaging, is_triass, mul
from triavg.algebras import LinearOp, TriassSpec, tensor3, unit_vector
from triavg.complexes import (Cochain, OperatorData, PiLambda, bracket, d_operator,
                              d_operator_bracket, delta_triass, delta_triass_bracket,
                              derived_bracket, mc_operator, operator_cochain,
                              operator_deformation_defect, pi_of)
from triavg.fixtures import RAVG_FIXTURES, broken_triass, induced_kz2, semidirect_kz2
from triavg.operators import RAvgSpec, check_relative_averaging
from triavg.trees import BulletKind, enumerate_trees, product_tree, tree_index


def random_cochain(rng, n, s, d, nterms=6):
    nt = len(enumerate_trees(n))
    data = {}
    for _ in range(nterms):
        data[(rng.randrange(nt), tuple(rng.randrange(s) for _ in range(n)),
              rng.randrange(d))] = Fraction(rng.randint(-3, 3))
    return Cochain(n, s, d, data)


def test_cochain_validation_and_dump():
    with pytest.raises(ValueError):
        Cochain(0, 1, 1)
    with pytest.raises(ValueError):
        Cochain(1, 2, 2, {(1, (0,), 0): 1})
    c = Cochain(2, 2, 1, {(2, (0, 1), 0): Fraction(1, 2), (0, (1, 1), 0): -3})
    assert Cochain.load(c.dump(), 2, 2, 1) == c
    with pytest.raises(ValueError):
        Cochain.load("0 | 0 1 | 0", 2, 2, 1)
    assert c.evaluate(2, [(1, 1), (2, 4)]) == (Fraction(2),)


@st.composite
def triass_specs(draw):
    n = draw(st.integers(1, 2))
    coef = st.sampled_from([-1, 0, 0, 1])

    def t():
        return tensor3(n, n, n, {(i, j, k): draw(coef) for i in range(n)
                                 for j in range(n) for k in range(n)})
    return TriassSpec(n, t(), t(), t())


@given(triass_specs())
def test_pi_squared_vanishes_iff_triass(d):
    pi = pi_of(d)
    assert bracket(pi, pi).is_zero() == is_triass(d)


def test_pi_squared_on_fixtures():
    for d in (semidirect_kz2(), induced_kz2()):
        assert bracket(pi_of(d), pi_of(d)).is_zero()
    assert not bracket(pi_of(broken_triass()), pi_of(broken_triass())).is_zero()


@settings(max_examples=25)
@given(st.integers(1, 3), st.integers(1, 2), st.integers(0, 10**6))
def test_bracket_graded_antisymmetry(m, n, seed):
    rng = random.Random(seed)
    f, g = random_cochain(rng, m, 2, 2), random_cochain(rng, n, 2, 2)
    sign = -1 if (m - 1) * (n - 1) % 2 else 1
    assert bracket(f, g) == bracket(g, f).scale(-sign)


@settings(max_examples=15)
@given(st.integers(1, 2), st.integers(1, 2), st.integers(1, 2), st.integers(0, 10**6))
def test_bracket_graded_jacobi(a, b, c, seed):
    rng = random.Random(seed)
    f, g, h = (random_cochain(rng, k, 2, 2, 4) for k in (a, b, c))
    da, db = a - 1, b - 1
    lhs = bracket(f, bracket(g, h))
    rhs = bracket(bracket(f, g), h) + bracket(g, bracket(f, h)).scale(-1 if da * db % 2 else 1)
    assert lhs == rhs


@pytest.mark.parametrize("n", [1, 2, 3])
def test_triass_differential_two_routes(n):
    rng = random.Random(n)
    for d in (semidirect_kz2(), induced_kz2()):
        f = random_cochain(rng, n, d.dim, d.dim, 10)
        df = delta_triass(d, f)
        assert df == delta_triass_bracket(d, f)
        if n < 3:
            assert delta_triass(d, df).is_zero()


def test_triass_differential_in_degree_one_by_hand():
    d = induced_kz2()
    rng = random.Random(0)
    f = random_cochain(rng, 1, 2, 2, 4)
    df = delta_triass(d, f)

    def F(v):
        return f.evaluate(0, [v])
    for kind in BulletKind:
        t = tree_index(product_tree(kind))
        op = d.op(kind)
        for i in range(2):
            for j in range(2):
                x, y = unit_vector(2, i), unit_vector(2, j)
                want = tuple(p - q + r for p, q, r in zip(mul(op, x, F(y)), F(mul(op, x, y)),
                                                          mul(op, F(x), y)))
                assert df.evaluate(t, [x, y]) == want


@pytest.mark.parametrize("name", sorted(RAVG_FIXTURES))
def test_operator_differential(name):
    rng = random.Random(len(name))
    s = RAVG_FIXTURES[name]()
    od = OperatorData(s)
    for n in (1, 2):
        f = random_cochain(rng, n, s.dimB, s.dimA)
        df = d_operator(od.pl, f)
        assert df == d_operator_bracket(od.pl, f)
        assert d_operator(od.pl, df).is_zero()
        assert od.d_P(od.d_P(f)).is_zero()


def test_derived_bracket_values():
    """[[P, P]] and dP on the three product trees, for an arbitrary P."""
    rng = random.Random(3)
    for f in RAVG_FIXTURES.values():
        b = f().bimodule
        P = LinearOp(b.dimB, b.dimA, [[rng.randint(-3, 3) for _ in range(b.dimB)]
                                      for _ in range(b.dimA)])
        lam = Fraction(rng.choice([-1, 2]))
        pl = PiLambda(b, lam)
        Pc = operator_cochain(P)
        PP, dP = derived_bracket(pl, Pc, Pc), d_operator(pl, Pc)
        for i in range(b.dimB):
            for j in range(b.dimB):
                x, y = unit_vector(b.dimB, i), unit_vector(b.dimB, j)
                PxPy = b.algebra.mul(P(x), P(y))
                zero = (0,) * b.dimA
                cases = {
                    BulletKind.DASHV: (tuple(2 * (u - v) for u, v in zip(P(b.act_right(x, P(y))), PxPy)), zero),
                    BulletKind.VDASH: (tuple(2 * (u - v) for u, v in zip(P(b.act_left(P(x), y)), PxPy)), zero),
                    BulletKind.PERP: (tuple(-2 * v for v in PxPy), tuple(lam * v for v in P(b.mulB(x, y)))),
                }
                for kind, (want_pp, want_d) in cases.items():
                    t = tree_index(product_tree(kind))
                    assert PP.evaluate(t, [x, y]) == want_pp
                    assert dP.evaluate(t, [x, y]) == want_d


def test_mc_operator_matches_oracle():
    rng = random.Random(9)
    for _ in range(60):
        s = random_ravg(rng, 2)
        assert mc_operator(s).is_zero() == is_relative_averaging(s)


def test_operator_deformation_defect():
    rng = random.Random(12)
    hits = set()
    for f in RAVG_FIXTURES.values():
        s = f()
        for _ in range(6):
            if rng.random() < 0.4:
                Q = s.P.scale(-1) if rng.random() < 0.5 else LinearOp.zero(s.dimB, s.dimA)
            else:
                Q = LinearOp(s.dimB, s.dimA, [[rng.randint(-1, 1) for _ in range(s.dimB)]
                                              for _ in range(s.dimA)])
            ok = operator_deformation_defect(s, Q).is_zero()
            assert ok == check_relative_averaging(RAvgSpec(s.bimodule, s.P + Q, s.lam)).ok
            hits.add(ok)
    assert hits == {True, False}
