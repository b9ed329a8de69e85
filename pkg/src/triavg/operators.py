"""Weighted averaging and relative averaging operators."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebras import (AssocSpec, BimodSpec, LinearOp, Report, TriassSpec, Violation,
                       apply2, check_assoc, check_bimodule, semidirect_unchecked, tensor3,
                       unit_vector)
from .exactla import Echelon


@dataclass(frozen=True)
class RAvgSpec:
    """Relative averaging data (A, B, P, lam) with P: B -> A."""

    bimodule: BimodSpec
    P: LinearOp
    lam: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        b = self.bimodule
        if (self.P.src_dim, self.P.dst_dim) != (b.dimB, b.dimA):
            raise ValueError(f"P must map B (dim {b.dimB}) to A (dim {b.dimA})")

    @property
    def dimA(self) -> int:
        return self.bimodule.dimA

    @property
    def dimB(self) -> int:
        return self.bimodule.dimB


@dataclass(frozen=True)
class RAvgMorphism:
    phi: LinearOp
    psi: LinearOp


_TAGS = ("P(u)P(v)=P(P(u)v)", "P(u)P(v)=P(uP(v))", "P(u)P(v)=lam P(uv)")


def check_averaging(a: AssocSpec, P: LinearOp, lam, relaxed: bool = False) -> Report:
    """P(a)P(b) = P(P(a)b) = P(aP(b)) = lam P(ab) on basis pairs.

    The subreport 'unweighted' holds the first two clauses.  With
    ``relaxed=True`` the last clause is replaced by
    lam P(a)P(b) = lam^2 P(ab), which admits lam = 0.
    """
    lam = Fraction(lam)
    if P.src_dim != a.dim or P.dst_dim != a.dim:
        raise ValueError("P must be square on the algebra")
    if lam == 0 and not relaxed:
        raise ValueError("weight 0 is not allowed; use relaxed=True for the unweighted reading")
    return _avg_clauses(a.dim, a.dim, P, lam, a.mu, a.mu, a.mu, a.mu, relaxed, "averaging", "e", "e")


def check_relative_averaging(s: RAvgSpec, relaxed: bool = False) -> Report:
    """P(x)P(y) = P(P(x).y) = P(x.P(y)) = lam P(xy) on basis pairs of B."""
    if s.lam == 0 and not relaxed:
        raise ValueError("weight 0 is not allowed; use relaxed=True for the unweighted reading")
    b = s.bimodule
    return _avg_clauses(b.dimB, b.dimA, s.P, s.lam, b.mu, b.l, b.r, b.nu, relaxed,
                        "relative_averaging", "x", "a")


def _avg_clauses(dB, dA, P, lam, mu, l, r, nu, relaxed, name, label, _alabel) -> Report:
    rep = Report(name)
    basis = [unit_vector(dB, i) for i in range(dB)]
    images = [P(e) for e in basis]
    for i in range(dB):
        for j in range(dB):
            pp = apply2(mu, images[i], images[j])
            c1 = P(apply2(l, images[i], basis[j]))
            c2 = P(apply2(r, basis[i], images[j]))
            c3 = P(apply2(nu, basis[i], basis[j]))
            w = (f"{label}{i}", f"{label}{j}")
            if pp != c1:
                rep.violations.append(Violation(_TAGS[0], w, pp, c1))
            if pp != c2:
                rep.violations.append(Violation(_TAGS[1], w, pp, c2))
            if relaxed:
                lhs = tuple(lam * v for v in pp)
                rhs = tuple(lam * lam * v for v in c3)
            else:
                lhs, rhs = pp, tuple(lam * v for v in c3)
            if lhs != rhs:
                rep.violations.append(Violation(_TAGS[2], w, lhs, rhs))
    rep.violations.sort(key=lambda v: (_TAGS.index(v.tag), v.witness))
    rep.subreports["unweighted"] = Report(name + "_unweighted",
                                          [v for v in rep.violations if v.tag != _TAGS[2]])
    return rep


def graph_check(s: RAvgSpec) -> bool:
    """Is the graph {(P(x), x)} a subalgebra of the semidirect triassociative algebra?"""
    d = semidirect_unchecked(s.bimodule, s.lam)
    dA, dB = s.dimA, s.dimB
    gens = [tuple(s.P.column(j)) + unit_vector(dB, j) for j in range(dB)]
    e = Echelon()
    for g in gens:
        e.insert(g)
    for t in (d.dashv, d.vdash, d.perp):
        for u in gens:
            for v in gens:
                if not e.contains(apply2(t, u, v)):
                    return False
    return True


def nijenhuis_of(s: RAvgSpec) -> LinearOp:
    """N_P(a, x) = (P(x), 0) on A (+) B."""
    dA, dB = s.dimA, s.dimB
    n = dA + dB
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(dA):
        for j in range(dB):
            rows[i][dA + j] = s.P.entry(i, j)
    return LinearOp(n, n, rows)


def check_algebra_hom(a: AssocSpec, a2: AssocSpec, phi: LinearOp) -> Report:
    rep = Report("algebra_hom")
    for i in range(a.dim):
        for j in range(a.dim):
            lhs = phi(apply2(a.mu, unit_vector(a.dim, i), unit_vector(a.dim, j)))
            rhs = apply2(a2.mu, phi.column(i), phi.column(j))
            if lhs != rhs:
                rep.violations.append(Violation("hom", (f"e{i}", f"e{j}"), lhs, rhs))
    return rep


def conjugate(a: AssocSpec, P: LinearOp, phi: LinearOp, lam=1) -> LinearOp:
    """phi^-1 P phi for an algebra automorphism phi; stays averaging of the same weight."""
    if not phi.is_invertible():
        raise ValueError("phi is not invertible")
    if not check_algebra_hom(a, a, phi).ok:
        raise ValueError("phi is not an algebra automorphism")
    out = phi.inverse() @ P @ phi
    rep = check_averaging(a, out, lam)
    if not rep.ok:
        raise AssertionError("conjugate failed the averaging check: " + rep.lines()[0])
    return out


def induced_triass(s: RAvgSpec) -> TriassSpec:
    """x ⊣ y = x.P(y), x ⊢ y = P(x).y, x ⊥ y = lam xy on B."""
    b = s.bimodule
    n = b.dimB
    basis = [unit_vector(n, i) for i in range(n)]
    images = [s.P(e) for e in basis]
    dashv, vdash, perp = {}, {}, {}
    for i in range(n):
        for j in range(n):
            for k, v in enumerate(apply2(b.r, basis[i], images[j])):
                if v:
                    dashv[i, j, k] = v
            for k, v in enumerate(apply2(b.l, images[i], basis[j])):
                if v:
                    vdash[i, j, k] = v
            for k, v in enumerate(b.nu[i][j]):
                if v * s.lam:
                    perp[i, j, k] = v * s.lam
    return TriassSpec(n, tensor3(n, n, n, dashv), tensor3(n, n, n, vdash), tensor3(n, n, n, perp))


def check_ravg_morphism(src: RAvgSpec, dst: RAvgSpec, m: RAvgMorphism) -> Report:
    """phi and psi multiplicative, psi equivariant on both sides, phi P = P' psi."""
    b, b2 = src.bimodule, dst.bimodule
    phi, psi = m.phi, m.psi
    if (phi.src_dim, phi.dst_dim, psi.src_dim, psi.dst_dim) != (b.dimA, b2.dimA, b.dimB, b2.dimB):
        raise ValueError("morphism shape mismatch")
    rep = Report("ravg_morphism")
    eA = [unit_vector(b.dimA, i) for i in range(b.dimA)]
    eB = [unit_vector(b.dimB, i) for i in range(b.dimB)]

    def cmp(tag, w, lhs, rhs):
        if lhs != rhs:
            rep.violations.append(Violation(tag, w, lhs, rhs))

    for i, a in enumerate(eA):
        for j, c in enumerate(eA):
            cmp("phi(ab)", (f"a{i}", f"a{j}"), phi(apply2(b.mu, a, c)),
                apply2(b2.mu, phi(a), phi(c)))
    for i, x in enumerate(eB):
        for j, y in enumerate(eB):
            cmp("psi(xy)", (f"x{i}", f"x{j}"), psi(apply2(b.nu, x, y)),
                apply2(b2.nu, psi(x), psi(y)))
    for i, a in enumerate(eA):
        for j, x in enumerate(eB):
            cmp("psi(a.x)", (f"a{i}", f"x{j}"), psi(apply2(b.l, a, x)),
                apply2(b2.l, phi(a), psi(x)))
            cmp("psi(x.a)", (f"x{j}", f"a{i}"), psi(apply2(b.r, x, a)),
                apply2(b2.r, psi(x), phi(a)))
    for j, x in enumerate(eB):
        cmp("phi P=P' psi", (f"x{j}",), phi(src.P(x)), dst.P(psi(x)))
    return rep


def rescale_to_weight_one(s: RAvgSpec) -> RAvgSpec:
    """(A, B, P/lam) has weight 1."""
    if s.lam == 0:
        raise ValueError("weight 0 cannot be rescaled")
    return RAvgSpec(s.bimodule, s.P.scale(1 / s.lam), Fraction(1))


def validate(s: RAvgSpec) -> None:
    """Raise ValueError unless the bimodule and the operator identities hold."""
    for rep in (check_assoc(s.bimodule.algebra), check_bimodule(s.bimodule),
                check_relative_averaging(s)):
        if not rep.ok:
            raise ValueError(f"{rep.check} check failed: {rep.lines()[0]}")
