"""Small worked structures used by tests, walkthroughs and the CLI."""

from __future__ import annotations

from fractions import Fraction

from .algebras import (AssocSpec, BimodSpec, LinearOp, TriassSpec, adjoint_bimodule,
                       semidirect, tensor3)
from .operators import RAvgSpec, induced_triass


def _alg(n, entries) -> AssocSpec:
    return AssocSpec(n, tensor3(n, n, n, entries))


def field() -> AssocSpec:
    """K with e e = e."""
    return _alg(1, {(0, 0, 0): 1})


def group_algebra_z2() -> AssocSpec:
    """K[Z/2] with basis e (unit), g: gg = e."""
    return _alg(2, {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1, (1, 1, 0): 1})


def dual_numbers() -> AssocSpec:
    """K[t]/t^2 with basis 1, t."""
    return _alg(2, {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1})


def diagonal(n: int = 2) -> AssocSpec:
    """K x ... x K with orthogonal idempotents."""
    return _alg(n, {(i, i, i): 1 for i in range(n)})


def superalgebra() -> AssocSpec:
    """e e = e, e f = f e = f, f f = 0 (the even/odd unit example)."""
    return _alg(2, {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1})


def upper_triangular() -> AssocSpec:
    """2x2 upper triangular matrices, basis E11, E12, E22."""
    return _alg(3, {(0, 0, 0): 1, (0, 1, 1): 1, (1, 2, 1): 1, (2, 2, 2): 1})


def left_unit_pair() -> AssocSpec:
    """e e = e, e f = f, other products zero."""
    return _alg(2, {(0, 0, 0): 1, (0, 1, 1): 1})


def null_square() -> AssocSpec:
    """e0 e0 = e1, everything else zero."""
    return _alg(2, {(0, 0, 1): 1})


def truncated_polynomials(n: int = 3) -> AssocSpec:
    """K[x]/x^n, basis 1, x, .., x^(n-1)."""
    return _alg(n, {(i, j, i + j): 1 for i in range(n) for j in range(n) if i + j < n})


def broken_assoc() -> AssocSpec:
    """e e = e, e f = f, f e = 0, f f = e: (f f) f = f but f (f f) = 0."""
    return _alg(2, {(0, 0, 0): 1, (0, 1, 1): 1, (1, 1, 0): 1})


SMALL_ALGEBRAS = {
    "field": field,
    "kz2": group_algebra_z2,
    "dual": dual_numbers,
    "diag2": diagonal,
    "super": superalgebra,
    "left_unit": left_unit_pair,
    "null": null_square,
    "upper": upper_triangular,
    "poly3": truncated_polynomials,
}


# -- averaging operators -----------------------------------------------------

def kz2_averaging():
    """P(e) = P(g) = e + g on K[Z/2]; weight 2."""
    return group_algebra_z2(), LinearOp(2, 2, [[1, 1], [1, 1]]), Fraction(2)


def identity_averaging(a: AssocSpec | None = None):
    a = a or diagonal()
    return a, LinearOp.identity(a.dim), Fraction(1)


def super_projection():
    """Projection onto the even part e; weight 1."""
    return superalgebra(), LinearOp(2, 2, [[1, 0], [0, 0]]), Fraction(1)


def as_relative(a: AssocSpec, P: LinearOp, lam) -> RAvgSpec:
    """An averaging operator seen as relative averaging on the adjoint bimodule."""
    return RAvgSpec(adjoint_bimodule(a), P, Fraction(lam))


# -- relative averaging operators ------------------------------------------------

def projection() -> RAvgSpec:
    """A = K, B = K (+) K with componentwise structure, P(x1, x2) = x1; weight 1."""
    A = field()
    nu = tensor3(2, 2, 2, {(0, 0, 0): 1, (1, 1, 1): 1})
    l = tensor3(1, 2, 2, {(0, 0, 0): 1, (0, 1, 1): 1})
    r = tensor3(2, 1, 2, {(0, 0, 0): 1, (1, 0, 1): 1})
    return RAvgSpec(BimodSpec(A, 2, nu, l, r), LinearOp(2, 1, [[1, 0]]), Fraction(1))


def deformed_average() -> RAvgSpec:
    """A = K, B = K^2 with (a1,a2)(b1,b2) = (a1b1, a2b1 + a1b2 + a2b2),
    componentwise actions, P(a1, a2) = (a1 + a2)/2; weight 1/2."""
    A = field()
    nu = tensor3(2, 2, 2, {(0, 0, 0): 1, (1, 0, 1): 1, (0, 1, 1): 1, (1, 1, 1): 1})
    l = tensor3(1, 2, 2, {(0, 0, 0): 1, (0, 1, 1): 1})
    r = tensor3(2, 1, 2, {(0, 0, 0): 1, (1, 0, 1): 1})
    h = Fraction(1, 2)
    return RAvgSpec(BimodSpec(A, 2, nu, l, r), LinearOp(2, 1, [[h, h]]), h)


def dual_projection() -> RAvgSpec:
    """A = K, B = K[t]/t^2, P(a + bt) = a; weight 1."""
    A = field()
    nu = dual_numbers().mu
    l = tensor3(1, 2, 2, {(0, 0, 0): 1, (0, 1, 1): 1})
    r = tensor3(2, 1, 2, {(0, 0, 0): 1, (1, 0, 1): 1})
    return RAvgSpec(BimodSpec(A, 2, nu, l, r), LinearOp(2, 1, [[1, 0]]), Fraction(1))


def kz2_relative() -> RAvgSpec:
    return as_relative(*kz2_averaging())


def identity_relative() -> RAvgSpec:
    return as_relative(*identity_averaging(field()))


def super_relative() -> RAvgSpec:
    return as_relative(*super_projection())


def zero_relative(dA: int = 1, dB: int = 1) -> RAvgSpec:
    """All products zero, P = 0, weight 1."""
    A = AssocSpec(dA, tensor3(dA, dA, dA))
    b = BimodSpec(A, dB, tensor3(dB, dB, dB), tensor3(dA, dB, dB), tensor3(dB, dA, dB))
    return RAvgSpec(b, LinearOp.zero(dB, dA), Fraction(1))


RAVG_FIXTURES = {
    "projection": projection,
    "deformed": deformed_average,
    "dual": dual_projection,
    "kz2": kz2_relative,
    "identity": identity_relative,
    "super": super_relative,
    "zero": zero_relative,
}


# -- triassociative ----------------------------------------------------------------

def semidirect_kz2() -> TriassSpec:
    """A (+) A for A = K[Z/2] with the adjoint bimodule, weight 2."""
    return semidirect(adjoint_bimodule(group_algebra_z2()), 2)


def induced_kz2() -> TriassSpec:
    """x ⊣ y = xP(y), x ⊢ y = P(x)y, x ⊥ y = 2xy on K[Z/2]."""
    return induced_triass(kz2_relative())


def induced_projection() -> TriassSpec:
    return induced_triass(projection())


def broken_triass() -> TriassSpec:
    """induced_kz2 with a single entry of ⊥ changed; breaks (a7)."""
    d = induced_kz2()
    perp = [[list(row) for row in m] for m in d.perp]
    perp[1][1][0] += 1
    return TriassSpec(d.dim, d.dashv, d.vdash, perp)
