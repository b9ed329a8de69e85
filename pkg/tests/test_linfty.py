import random
from fractions import Fraction
from itertools import permutations

import pytest

import triavg.linfty as L
from gen import random_ravg
from oracles import is_relative_averaging
from triavg.algebras import check_assoc, check_bimodule
from triavg.cohomology import RAvgComplex, cba_keys, delta_ravg, split_keys
from triavg.complexes import Cochain
from triavg.fixtures import RAVG_FIXTURES, projection
from triavg.linfty import (Twisted, embed_packed, higher_jacobi_check, jacobi_samples,
                           mc_element, mc_pair_check, mc_sum, random_a, random_h,
                           ravg_delta_via_linfty, unembed_packed)


def _deg(x):
    (d,) = {d for _, d, _ in x.pieces()}
    return d


def test_graded_symmetry():
    rng = random.Random(0)
    v, _ = mc_element(projection())
    for _ in range(20):
        xs = [rng.choice([random_h(v, rng, 1), random_h(v, rng, 2), random_a(v, rng, 1)])
              for _ in range(3)]
        base = v.lk(xs)
        degs = [_deg(x) for x in xs]
        for perm in permutations(range(3)):
            sign = 1
            for i in range(3):
                for j in range(i + 1, 3):
                    if perm[i] > perm[j] and degs[perm[i]] * degs[perm[j]] % 2:
                        sign = -sign
            assert v.lk([xs[i] for i in perm]) == base.scale(sign)


@pytest.mark.parametrize("name", sorted(RAVG_FIXTURES))
def test_higher_jacobi(name):
    rng = random.Random(len(name))
    s = RAVG_FIXTURES[name]()
    v, alpha = mc_element(s)
    samples = jacobi_samples(v, rng, per_n=4)
    assert higher_jacobi_check(v, samples) == []
    assert higher_jacobi_check(v, samples, lk=Twisted(v, alpha).lk) == []


def test_jacobi_needs_the_koszul_sign(monkeypatch):
    rng = random.Random(4)
    v, _ = mc_element(projection())
    samples = jacobi_samples(v, rng, per_n=8)
    monkeypatch.setattr(L, "_koszul", lambda degs, order: 1)
    assert higher_jacobi_check(v, samples) != []


@pytest.mark.parametrize("name", sorted(RAVG_FIXTURES))
def test_mc_element_and_vanishing_brackets(name):
    s = RAVG_FIXTURES[name]()
    v, alpha = mc_element(s)
    assert mc_sum(v, alpha).is_zero()
    for k in (4, 5, 6):
        assert v.lk([alpha] * k).is_zero()


def test_mc_pair_check_matches_oracle():
    rng = random.Random(6)
    seen = set()
    for _ in range(40):
        s = random_ravg(rng, 2)
        ok = mc_pair_check(s).is_zero()
        assert ok == is_relative_averaging(s)
        seen.add(ok)
    assert seen == {True, False}


def test_twisting_requires_mc():
    s = projection()
    v, alpha = L.mc_element_of(s.bimodule, s.P.scale(2), s.lam)
    with pytest.raises(ValueError):
        Twisted(v, alpha)


@pytest.mark.parametrize("name", ["projection", "dual", "kz2"])
def test_packed_embedding_round_trip(name):
    rng = random.Random(2)
    s = RAVG_FIXTURES[name]()
    for n in (1, 2, 3):
        keys = split_keys(s.dimA, s.dimB, n)
        F = {(k[1], k[2]): Fraction(rng.randint(-2, 2)) for k in rng.sample(keys, min(5, len(keys)))}
        F = {k: c for k, c in F.items() if c}
        assert unembed_packed(s, embed_packed(s, n, F)) == F


@pytest.mark.parametrize("name", sorted(RAVG_FIXTURES))
def test_ravg_differential_through_linfty(name):
    rng = random.Random(7)
    s = RAVG_FIXTURES[name]()
    cx = RAvgComplex(s)
    tw = Twisted(*mc_element(s))
    assert cx.matrix(1) == RAvgComplex(s, degree_one="linfty").matrix(1)
    for n in (2, 3):
        keys = split_keys(s.dimA, s.dimB, n)
        F = {(k[1], k[2]): Fraction(rng.randint(-2, 2)) for k in rng.sample(keys, min(6, len(keys)))}
        gk = cba_keys(s.dimA, s.dimB, n - 1)
        g = Cochain(n - 1, s.dimB, s.dimA, {k[1:]: Fraction(rng.randint(-2, 2))
                                            for k in rng.sample(gk, min(4, len(gk)))})
        F1, g1 = delta_ravg(s, n, F, g, cx)
        F2, g2 = ravg_delta_via_linfty(s, n, F, g, tw)
        assert {k: c for k, c in F1.items() if c} == {k: c for k, c in F2.items() if c}
        assert g1 == g2


def test_element_arithmetic_and_empty_bracket():
    v, alpha = mc_element(projection())
    assert (alpha - alpha).is_zero()
    with pytest.raises(ValueError):
        v.lk([])


def test_twisted_series_is_not_cut_short():
    # a term after two vanishing ones still contributes
    s = RAVG_FIXTURES["super"]()
    v, alpha = mc_element(s)
    xs = jacobi_samples(v, random.Random(5), per_n=4)[1]
    inner = Twisted(v, alpha).lk(xs)
    assert v.lk([inner]).is_zero() and v.lk([alpha, inner]).is_zero()
    assert not v.lk([alpha, alpha, inner]).is_zero()
    degs = [_deg(x) for x in xs]
    assert L.jacobi_sum(Twisted(v, alpha).lk, xs, degs).is_zero()
