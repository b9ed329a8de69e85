"""Cochain complexes as explicit matrices and their cohomology.

Every complex is given by a basis of each degree (a list of hashable keys)
and the differential of one basis key as a sparse ``{key: coefficient}``.
Complexes start in degree 1; degree 0 is the zero space.

Key shapes:

* ``("F", inputs, out)``: a multilinear map on V = A (+) B.  Only keys in the
  subspace where pure-A inputs give A outputs and inputs containing some B
  give B outputs occur; this packs (f, g, h) into one map.
* ``("G", tree, inputs, out)``: an element of C^m(B, A) (inputs in B, output in A).
* ``("f", inputs, out)``: a plain Hochschild cochain of A.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .algebras import AssocSpec, BimodSpec, LinearOp, TriassSpec, sparse3, tensor3
from .complexes import Cochain, OperatorData, delta_triass, mc_operator
from .exactla import Echelon, RatMatrix, fmt, kernel_basis, rank
from .operators import RAvgSpec, validate
from .trees import enumerate_trees, joints_table

MAX_DEGREE = 3


@dataclass
class BettiReport:
    degree: int
    dim_cochains: int
    dim_kernel: int
    dim_image_prev: int
    dim_H: int
    representatives: list = field(default_factory=list)

    def row(self) -> str:
        return (f"{self.degree} | {self.dim_cochains} | {self.dim_kernel} | "
                f"{self.dim_image_prev} | {self.dim_H}")


class Complex:
    """A finite-dimensional cochain complex given on basis keys."""

    def __init__(self, name, basis, diff, max_degree=MAX_DEGREE + 1):
        self.name = name
        self._basis = basis
        self._diff = diff
        self.max_degree = max_degree
        self._bases: dict = {}
        self._index: dict = {}
        self._mats: dict = {}

    def basis(self, n: int) -> list:
        if n < 1 or n > self.max_degree:
            if n < 1:
                return []
            raise ValueError(f"{self.name}: degree {n} is beyond the supported range")
        if n not in self._bases:
            self._bases[n] = list(self._basis(n))
            self._index[n] = {k: i for i, k in enumerate(self._bases[n])}
        return self._bases[n]

    def index(self, n: int) -> dict:
        self.basis(n)
        return self._index.get(n, {})

    def diff(self, n: int, key) -> dict:
        return self._diff(n, key)

    def apply(self, n: int, vec: dict) -> dict:
        """Differential of a sparse vector {key: coefficient} in degree n."""
        out: dict = defaultdict(Fraction)
        for k, c in vec.items():
            if c:
                for k2, v in self._diff(n, k).items():
                    out[k2] += c * v
        return {k: v for k, v in out.items() if v}

    def matrix(self, n: int) -> RatMatrix:
        """Matrix of delta: C^n -> C^(n+1), columns indexed by basis(n)."""
        if n not in self._mats:
            src = self.basis(n)
            if n + 1 > self.max_degree:
                raise ValueError(f"{self.name}: degree {n + 1} is beyond the supported range")
            idx = self.index(n + 1) if src else {}
            cols = []
            for k in src:
                col = {}
                for k2, v in self._diff(n, k).items():
                    if v:
                        if k2 not in idx:
                            raise AssertionError(f"{self.name}: differential leaves the complex at {k2}")
                        col[idx[k2]] = v
                cols.append(col)
            self._mats[n] = RatMatrix.from_sparse_columns(len(self.basis(n + 1)) if src else 0, cols)
        return self._mats[n]

    def to_vec(self, n: int, d: dict) -> tuple:
        idx = self.index(n)
        v = [Fraction(0)] * len(self.basis(n))
        for k, c in d.items():
            if c:
                v[idx[k]] += c
        return tuple(v)

    def to_dict(self, n: int, v) -> dict:
        b = self.basis(n)
        return {b[i]: c for i, c in enumerate(v) if c}

    def image_echelon(self, n: int) -> Echelon:
        """Echelon basis of B^n = delta(C^(n-1))."""
        e = Echelon()
        if n - 1 >= 1 and self.basis(n - 1):
            for col in self.matrix(n - 1).col_dicts():
                e.insert(col)
        return e

    def cocycles(self, n: int) -> list[tuple]:
        if not self.basis(n):
            return []
        return kernel_basis(self.matrix(n))

    def square_is_zero(self, n: int) -> bool:
        if n < 1 or not self.basis(n):
            return True
        return (self.matrix(n + 1) @ self.matrix(n)).is_zero()

    def betti(self, n: int, with_reps: bool = True) -> BettiReport:
        if n < 0 or n > MAX_DEGREE:
            raise ValueError(f"degree {n} out of the supported range 0..{MAX_DEGREE}")
        dim = len(self.basis(n))
        if not dim:
            return BettiReport(n, 0, 0, 0, 0)
        if not self.square_is_zero(n - 1):
            raise ArithmeticError(f"{self.name}: delta o delta != 0 into degree {n}")
        ker = self.cocycles(n)
        im = self.image_echelon(n)
        reps = []
        for v in ker:
            if im.insert(v):
                reps.append(self.to_dict(n, v))
        dim_im = len(im) - len(reps)
        return BettiReport(n, dim, len(ker), dim_im, len(reps), reps if with_reps else [])

    def report(self, degrees) -> list[BettiReport]:
        return [self.betti(n) for n in degrees]


def format_table(reports) -> str:
    lines = ["n | dim C | dim Z | dim B | dim H"]
    lines += [r.row() for r in reports]
    return "\n".join(lines)


def dump_representative(rep: dict) -> str:
    """Cochain-format lines; keys of C(B, A) keep their tree index, others use '-'."""
    lines = []
    for k in sorted(rep, key=repr):
        if k[0] == "G":
            _, t, ins, o = k
            lines.append(f"{t} | {' '.join(map(str, ins))} | {o} | {fmt(rep[k])}")
        else:
            _, ins, o = k
            lines.append(f"- | {' '.join(map(str, ins))} | {o} | {fmt(rep[k])}")
    return "\n".join(lines)


# -- bases ---------------------------------------------------------------------

def _check_degree(n):
    if not 1 <= n <= MAX_DEGREE + 1:
        raise ValueError(f"degree {n} out of the supported range")


def split_keys(dA: int, dB: int, n: int) -> list:
    """("F", ins, out) keys of the packed (f, g, h) space in arity n."""
    dV = dA + dB
    keys = []
    for ins in product(range(dV), repeat=n):
        outs = range(dA) if all(x < dA for x in ins) else range(dA, dV)
        keys.extend(("F", ins, o) for o in outs)
    return keys


def cba_keys(dA: int, dB: int, n: int) -> list:
    """("G", tree, ins, out) keys of C^n(B, A)."""
    return [("G", t, ins, o) for t in range(len(enumerate_trees(n)))
            for ins in product(range(dB), repeat=n) for o in range(dA)]


# -- Hochschild differential of A ⋉ B ----------------------------------------------

class SemidirectProduct:
    """The associative algebra E = A ⋉ B with (a,x)(b,y) = (ab, a.y + x.b + xy)."""

    def __init__(self, b: BimodSpec):
        dA, dB = b.dimA, b.dimB
        self.dA, self.dB, self.dim = dA, dB, dA + dB
        m = {}
        for (i, j, k), v in sparse3(b.mu).items():
            m[i, j, k] = v
        for (i, j, k), v in sparse3(b.l).items():
            m[i, dA + j, dA + k] = v
        for (i, j, k), v in sparse3(b.r).items():
            m[dA + i, j, dA + k] = v
        for (i, j, k), v in sparse3(b.nu).items():
            m[dA + i, dA + j, dA + k] = v
        self.mult = m
        self.by_left = defaultdict(list)
        self.by_right = defaultdict(list)
        self.by_out = defaultdict(list)
        for (i, j, k), v in m.items():
            self.by_left[i].append((j, k, v))
            self.by_right[j].append((i, k, v))
            self.by_out[k].append((i, j, v))


def hochschild_keys(E, n: int, ins: tuple, out: int, coef=Fraction(1)) -> dict:
    """Hochschild coboundary of the basis map e_ins -> e_out (times coef).

    (dF)(x_1..x_{n+1}) = x_1 F(x_2..) + sum_i (-1)^i F(.., x_i x_{i+1}, ..) + (-1)^(n+1) F(..x_n) x_{n+1}
    """
    res: dict = defaultdict(Fraction)
    for x, o, v in E.by_right[out]:
        res[((x,) + ins, o)] += coef * v
    last = coef if (n + 1) % 2 == 0 else -coef
    for y, o, v in E.by_left[out]:
        res[(ins + (y,), o)] += last * v
    for i in range(1, n + 1):
        s = -coef if i % 2 else coef
        for x, y, v in E.by_out[ins[i - 1]]:
            res[(ins[:i - 1] + (x, y) + ins[i:], out)] += s * v
    return res


def hochschild_delta(a: AssocSpec, f: dict, n: int) -> dict:
    """Hochschild coboundary of f = {(inputs, out): c} in Hom(A^n, A)."""
    E = SemidirectProduct(BimodSpec(a, 0, (), (), ()))
    out: dict = defaultdict(Fraction)
    for (ins, o), c in f.items():
        for k, v in hochschild_keys(E, n, tuple(ins), o, Fraction(c)).items():
            out[k] += v
    return {k: v for k, v in out.items() if v}


def hochschild_delta_mixed(b: BimodSpec, F: dict, n: int) -> dict:
    """delta_AssAct on a packed (f, g, h) map {(inputs, out): c} over V = A (+) B."""
    E = SemidirectProduct(b)
    out: dict = defaultdict(Fraction)
    for (ins, o), c in F.items():
        for k, v in hochschild_keys(E, n, tuple(ins), o, Fraction(c)).items():
            out[k] += v
    return {k: v for k, v in out.items() if v}


# -- theta_P -------------------------------------------------------------------------

class ThetaP:
    """theta_P(f, g, h)(T; x) = (-1)^n { f(Px_1..Px_n) - lam^(k-2) P (g+h)(y) },

    y_j = x_j at the joints of T = T_1 v .. v T_k, y_j = P(x_j) elsewhere.
    """

    def __init__(self, s: RAvgSpec):
        if s.lam == 0:
            raise ValueError("theta_P needs a nonzero weight")
        self.s = s
        dA, dB = s.dimA, s.dimB
        self.dA, self.dB = dA, dB
        self.pre = {a: [(x, s.P.entry(a, x)) for x in range(dB) if s.P.entry(a, x)] for a in range(dA)}
        self.post = {b: [(a, s.P.entry(a, b)) for a in range(dA) if s.P.entry(a, b)] for b in range(dB)}

    def key(self, n: int, ins: tuple, out: int, coef=Fraction(1)) -> dict:
        dA = self.dA
        sgn = coef if n % 2 == 0 else -coef
        res: dict = defaultdict(Fraction)
        if out < dA:
            if any(x >= dA for x in ins):
                return res
            for xs in product(*(self.pre[a] for a in ins)):
                w = sgn
                for _, p in xs:
                    w *= p
                xt = tuple(x for x, _ in xs)
                for t in range(len(enumerate_trees(n))):
                    res[("G", t, xt, out)] += w
            return res
        lam = self.s.lam
        for t, J in enumerate(joints_table(n)):
            k = len(J) + 1
            if k < 2:
                raise ValueError("every tree of positive arity has at least two grafting factors")
            Js = set(J)
            choices = []
            ok = True
            for j, a in enumerate(ins, 1):
                if j in Js:
                    if a < dA:
                        ok = False
                        break
                    choices.append([(a - dA, Fraction(1))])
                else:
                    if a >= dA:
                        ok = False
                        break
                    choices.append(self.pre[a])
            if not ok:
                continue
            scale = -sgn * lam ** (k - 2)
            for xs in product(*choices):
                w = scale
                for _, p in xs:
                    w *= p
                xt = tuple(x for x, _ in xs)
                for a, p in self.post[out - dA]:
                    res[("G", t, xt, a)] += w * p
        return res

    def __call__(self, F: dict, n: int) -> Cochain:
        """theta_P of a packed map {(inputs, out): c} as a cochain in C^n(B, A)."""
        acc: dict = defaultdict(Fraction)
        for (ins, o), c in F.items():
            for (_, t, xt, a), v in self.key(n, tuple(ins), o, Fraction(c)).items():
                acc[(t, xt, a)] += v
        return Cochain(n, self.dB, self.dA, acc)


def theta_P(s: RAvgSpec, F: dict, n: int) -> Cochain:
    return ThetaP(s)(F, n)


# -- the complexes ---------------------------------------------------------------------

def _cochain_to_keys(c: Cochain, sign=1) -> dict:
    return {("G", t, ins, o): sign * v for (t, ins, o), v in c.data.items()}


def _single(arity, dB, dA, t, ins, o) -> Cochain:
    return Cochain._raw(arity, dB, dA, {(t, ins, o): Fraction(1)})


def operator_complex(s: RAvgSpec) -> Complex:
    """(C^n(B, A), d_P), n >= 1."""
    if not mc_operator(s).is_zero():
        raise ValueError("P is not a relative averaging operator")
    od = OperatorData(s)
    dA, dB = s.dimA, s.dimB

    def diff(n, key):
        _, t, ins, o = key
        return _cochain_to_keys(od.d_P(_single(n, dB, dA, t, ins, o)))

    return Complex("operator", lambda n: cba_keys(dA, dB, n), diff)


def assact_complex(b: BimodSpec) -> Complex:
    E = SemidirectProduct(b)
    dA, dB = b.dimA, b.dimB

    def diff(n, key):
        _, ins, o = key
        return {("F",) + k: v for k, v in hochschild_keys(E, n, ins, o).items() if v}

    return Complex("assact", lambda n: split_keys(dA, dB, n), diff)


def hochschild_complex(a: AssocSpec) -> Complex:
    """Hochschild cochains of A from degree 1 on; without C^0, H^1 is Der(A)."""
    E = SemidirectProduct(BimodSpec(a, 0, (), (), ()))
    d = a.dim

    def diff(n, key):
        _, ins, o = key
        return {("f",) + k: v for k, v in hochschild_keys(E, n, ins, o).items() if v}

    return Complex("hochschild", lambda n: [("f", ins, o) for ins in product(range(d), repeat=n)
                                            for o in range(d)], diff)


class RAvgComplex(Complex):
    """C^1 = Hom(A,A) (+) Hom(B,B); C^n = packed (f,g,h) (+) C^(n-1)(B, A).

    delta(F, gamma) = (delta_AssAct F, (-1)^(n-1) d_P gamma + theta_P F).
    In degree 1 the differential can instead be routed through the twisted
    l_1 of the L-infinity algebra (``degree_one="linfty"``).
    """

    def __init__(self, s: RAvgSpec, degree_one: str = "explicit"):
        validate(s)
        self.s = s
        self.E = SemidirectProduct(s.bimodule)
        self.theta = ThetaP(s)
        self.od = OperatorData(s)
        dA, dB = s.dimA, s.dimB
        self.dA, self.dB = dA, dB
        self.degree_one = degree_one

        def basis(n):
            keys = split_keys(dA, dB, n)
            if n >= 2:
                keys += cba_keys(dA, dB, n - 1)
            return keys

        super().__init__("ravg", basis, self._diff)

    def _diff(self, n, key):
        if key[0] == "F":
            if n == 1 and self.degree_one == "linfty":
                from .linfty import ravg_delta_degree_one
                return ravg_delta_degree_one(self.s, key)
            _, ins, o = key
            out = {("F",) + k: v for k, v in hochschild_keys(self.E, n, ins, o).items() if v}
            for k, v in self.theta.key(n, ins, o).items():
                if v:
                    out[k] = out.get(k, 0) + v
            return out
        _, t, ins, o = key
        sign = 1 if (n - 1) % 2 == 0 else -1
        return _cochain_to_keys(self.od.d_P(_single(n - 1, self.dB, self.dA, t, ins, o)), sign)


def ravg_complex(s: RAvgSpec, degree_one: str = "explicit") -> RAvgComplex:
    return RAvgComplex(s, degree_one)


def delta_ravg(s: RAvgSpec, n: int, F: dict, gamma: Cochain | None = None,
               cx: RAvgComplex | None = None):
    """delta_rAvg of (F, gamma) in degree n; returns (F', gamma') with gamma' in C^n(B, A)."""
    cx = cx or RAvgComplex(s)
    vec = {("F", tuple(ins), o): Fraction(c) for (ins, o), c in F.items() if c}
    if gamma is not None:
        if n < 2 or gamma.arity != n - 1:
            raise ValueError("gamma must have arity n-1 (and n >= 2)")
        vec.update(_cochain_to_keys(gamma))
    img = cx.apply(n, vec)
    Fp = {(k[1], k[2]): v for k, v in img.items() if k[0] == "F"}
    gp = Cochain(n, s.dimB, s.dimA, {(k[1], k[2], k[3]): v for k, v in img.items() if k[0] == "G"})
    return Fp, gp


# -- averaging algebras via the diagonal embedding ------------------------------------

def _lifts(dA: int, ins: tuple, out: int):
    """All F-keys over V = A (+) A lying over (ins, out)."""
    for mask in product((0, 1), repeat=len(ins)):
        lifted = tuple(a + dA * m for a, m in zip(ins, mask))
        yield ("F", lifted, out + (dA if any(mask) else 0))


class AvgComplex(Complex):
    """C^1 = Hom(A, A); C^n = Hom(A^n, A) (+) C^(n-1)(A, A); the differential is
    delta_rAvg restricted along (f, gamma) -> (f, f, f, gamma), with the
    invariance of the image checked on every basis element."""

    def __init__(self, a: AssocSpec, P: LinearOp, lam):
        from .algebras import adjoint_bimodule
        self.a = a
        self.ravg = RAvgComplex(RAvgSpec(adjoint_bimodule(a), P, Fraction(lam)))
        d = a.dim

        def basis(n):
            keys = [("f", ins, o) for ins in product(range(d), repeat=n) for o in range(d)]
            if n >= 2:
                keys += cba_keys(d, d, n - 1)
            return keys

        super().__init__("avg", basis, self._diff)

    def embed(self, key) -> dict:
        if key[0] == "f":
            return {k: Fraction(1) for k in _lifts(self.a.dim, key[1], key[2])}
        return {key: Fraction(1)}

    def _diff(self, n, key):
        img = self.ravg.apply(n, self.embed(key))
        d = self.a.dim
        out = {}
        for k, v in img.items():
            if k[0] == "F" and all(x < d for x in k[1]) and k[2] < d:
                out[("f", k[1], k[2])] = v
            elif k[0] == "G":
                out[k] = v
        back: dict = defaultdict(Fraction)
        for k, v in out.items():
            for k2, w in self.embed(k).items():
                back[k2] += v * w
        if {k: v for k, v in back.items() if v} != img:
            raise AssertionError(f"delta does not preserve the diagonal image at {key}")
        return out


def avg_complex(a: AssocSpec, P: LinearOp, lam) -> AvgComplex:
    return AvgComplex(a, P, lam)


def triass_complex(d: TriassSpec) -> Complex:
    def diff(n, key):
        _, t, ins, o = key
        c = delta_triass(d, Cochain._raw(n, d.dim, d.dim, {(t, ins, o): Fraction(1)}))
        return {("G", t2, i2, o2): v for (t2, i2, o2), v in c.data.items()}

    return Complex("triass", lambda n: cba_keys(d.dim, d.dim, n), diff)


# -- convenience entry points --------------------------------------------------------

def _range_check(n):
    if not 0 <= n <= MAX_DEGREE:
        raise ValueError(f"degree {n} out of the supported range 0..{MAX_DEGREE}")


def triass_cohomology(d: TriassSpec, n: int) -> BettiReport:
    from .algebras import check_triass
    rep = check_triass(d)
    if not rep.ok:
        raise ValueError("not triassociative: " + rep.lines()[0])
    if not 1 <= n <= MAX_DEGREE:
        raise ValueError(f"degree {n} out of the supported range 1..{MAX_DEGREE}")
    return triass_complex(d).betti(n)


def operator_cohomology(s: RAvgSpec, n: int) -> BettiReport:
    _range_check(n)
    return operator_complex(s).betti(n)


def assact_cohomology(b: BimodSpec, n: int) -> BettiReport:
    _range_check(n)
    return assact_complex(b).betti(n)


def ravg_cohomology(s: RAvgSpec, n: int) -> BettiReport:
    _range_check(n)
    return RAvgComplex(s).betti(n)


def avg_cohomology(a: AssocSpec, P: LinearOp, lam, n: int) -> BettiReport:
    _range_check(n)
    return AvgComplex(a, P, lam).betti(n)


def hochschild_cohomology(a: AssocSpec, n: int) -> BettiReport:
    _range_check(n)
    return hochschild_complex(a).betti(n)


# -- long exact sequence -------------------------------------------------------------

class ShiftedOperatorComplex(Complex):
    """X^n = C^(n-1)(B, A) with differential (-1)^(n-1) d_P: the kernel of C_rAvg -> C_AssAct."""

    def __init__(self, cx: RAvgComplex):
        self.cx = cx

        def basis(n):
            return cba_keys(cx.dA, cx.dB, n - 1) if n >= 2 else []

        super().__init__("shifted_operator", basis, lambda n, k: cx.diff(n, k))


def _induced_rank(phi, src: Complex, n_src: int, dst: Complex, n_dst: int) -> int:
    """Rank of H(phi): dim(phi(Z) + B) - dim B."""
    e = dst.image_echelon(n_dst)
    base = len(e)
    for z in src.cocycles(n_src):
        e.insert(dst.to_vec(n_dst, phi(src.to_dict(n_src, z))))
    return len(e) - base


@dataclass
class LESNode:
    label: str
    dim_H: int
    rank_in: int
    rank_out: int
    composite_zero: bool

    @property
    def exact(self) -> bool:
        return self.composite_zero and self.rank_in + self.rank_out == self.dim_H


@dataclass
class LESReport:
    nodes: list

    @property
    def ok(self) -> bool:
        return all(n.exact for n in self.nodes)

    def lines(self) -> list[str]:
        return [f"{n.label}: dim H = {n.dim_H}, rank in = {n.rank_in}, rank out = {n.rank_out}, "
                f"{'exact' if n.exact else 'NOT exact'}" for n in self.nodes]


def long_exact_check(s: RAvgSpec, degrees=range(1, MAX_DEGREE)) -> LESReport:
    """Builds 0 -> X -> C_rAvg -> C_AssAct -> 0 and checks exactness of
    .. -> H^n(X) -> H^n_rAvg -> H^n_AssAct -> H^(n+1)(X) -> .. (H^n(X) = H^(n-1)_P)."""
    Y = RAvgComplex(s)
    X = ShiftedOperatorComplex(Y)
    Z = assact_complex(s.bimodule)
    theta = Y.theta

    def iota(d):
        return dict(d)

    def q(d):
        return {k: v for k, v in d.items() if k[0] == "F"}

    def make_conn(n):
        def conn(d):
            out: dict = defaultdict(Fraction)
            for (_, ins, o), c in d.items():
                for k, v in theta.key(n, ins, o, c).items():
                    out[k] += v
            return {k: v for k, v in out.items() if v}
        return conn

    # the sequence as a list of (complex, degree, label, map to next)
    seq = []
    lo, hi = min(degrees), max(degrees)
    for n in range(lo, hi + 1):
        seq.append((X, n, f"H^{n - 1}_P", iota))
        seq.append((Y, n, f"H^{n}_rAvg", q))
        seq.append((Z, n, f"H^{n}_AssAct", make_conn(n)))

    def nxt(j):
        C, n, _, _ = seq[j]
        return (Y, n) if C is X else (Z, n) if C is Y else (X, n + 1)

    def prv(j):
        C, n, _, _ = seq[j]
        if C is X:
            return (Z, n - 1, make_conn(n - 1)) if n - 1 >= 1 else None
        if C is Y:
            return (X, n, iota)
        return (Y, n, q)

    nodes = []
    for j, (C, n, label, out_map) in enumerate(seq):
        dim_H = C.betti(n, with_reps=False).dim_H
        D, m = nxt(j)
        r_out = _induced_rank(out_map, C, n, D, m) if C.basis(n) else 0
        p = prv(j)
        if p is None or not p[0].basis(p[1]):
            r_in, comp = 0, True
        else:
            Cp, np_, in_map = p
            r_in = _induced_rank(in_map, Cp, np_, C, n)
            comp = True
            im2 = D.image_echelon(m)
            for z in Cp.cocycles(np_):
                w = out_map(in_map(Cp.to_dict(np_, z)))
                if w and not im2.contains(D.to_vec(m, w)):
                    comp = False
                    break
        nodes.append(LESNode(label, dim_H, r_in, r_out, comp))
    return LESReport(nodes)


# -- infinitesimal deformations ---------------------------------------------------------

def _lagrange_t1(vals):
    """t-coefficient of a cubic from its values at t = 0, 1, 2, 3."""
    f0, f1, f2, f3 = vals
    return [(-11 * a + 18 * b - 9 * c + 2 * d) / 6 for a, b, c, d in zip(f0, f1, f2, f3)]


def _add3(t, u, c):
    return tuple(tuple(tuple(x + c * y for x, y in zip(r1, r2)) for r1, r2 in zip(m1, m2))
                 for m1, m2 in zip(t, u))


def _deformed(s: RAvgSpec, direction, t) -> RAvgSpec:
    mu1, nu1, l1, r1, P1 = direction
    b = s.bimodule
    A = AssocSpec(b.dimA, _add3(b.mu, mu1, t))
    bt = BimodSpec(A, b.dimB, _add3(b.nu, nu1, t), _add3(b.l, l1, t), _add3(b.r, r1, t))
    return RAvgSpec(bt, s.P + P1.scale(t), s.lam)


def _residuals(s: RAvgSpec) -> list:
    """lhs - rhs of every bimodule and operator identity on basis tuples, fixed order."""
    from .algebras import apply2, unit_vector
    b = s.bimodule
    dA, dB = b.dimA, b.dimB
    eA = [unit_vector(dA, i) for i in range(dA)]
    eB = [unit_vector(dB, i) for i in range(dB)]
    out = []

    def diff(u, v):
        out.extend(x - y for x, y in zip(u, v))

    for a, c, e in product(eA, repeat=3):
        diff(apply2(b.mu, apply2(b.mu, a, c), e), apply2(b.mu, a, apply2(b.mu, c, e)))
    for x, y, z in product(eB, repeat=3):
        diff(apply2(b.nu, apply2(b.nu, x, y), z), apply2(b.nu, x, apply2(b.nu, y, z)))
    for a, c in product(eA, repeat=2):
        for x in eB:
            diff(apply2(b.l, apply2(b.mu, a, c), x), apply2(b.l, a, apply2(b.l, c, x)))
            diff(apply2(b.r, apply2(b.r, x, a), c), apply2(b.r, x, apply2(b.mu, a, c)))
            diff(apply2(b.r, apply2(b.l, a, x), c), apply2(b.l, a, apply2(b.r, x, c)))
    for a in eA:
        for x, y in product(eB, repeat=2):
            diff(apply2(b.nu, apply2(b.l, a, x), y), apply2(b.l, a, apply2(b.nu, x, y)))
            diff(apply2(b.nu, apply2(b.r, x, a), y), apply2(b.nu, x, apply2(b.l, a, y)))
            diff(apply2(b.r, apply2(b.nu, x, y), a), apply2(b.nu, x, apply2(b.r, y, a)))
    P = s.P
    for x, y in product(eB, repeat=2):
        pp = apply2(b.mu, P(x), P(y))
        diff(pp, P(apply2(b.l, P(x), y)))
        diff(pp, P(apply2(b.r, x, P(y))))
        diff(pp, tuple(s.lam * v for v in P(apply2(b.nu, x, y))))
    return out


def _first_order(fn):
    return _lagrange_t1([fn(Fraction(t)) for t in range(4)])


def first_order_defect(s: RAvgSpec, direction) -> list:
    """t-coefficient of all identities for the deformation (mu + t mu1, .., P + t P1)."""
    return _first_order(lambda t: _residuals(_deformed(s, direction, t)))


def direction_cochain(s: RAvgSpec, direction) -> dict:
    """(mu1, nu1, l1 + r1, P1) as a sparse vector of C^2_rAvg."""
    mu1, nu1, l1, r1, P1 = direction
    dA, dB = s.dimA, s.dimB
    vec: dict = defaultdict(Fraction)
    for (i, j, k), v in sparse3(mu1).items():
        vec[("F", (i, j), k)] += v
    for (i, j, k), v in sparse3(nu1).items():
        vec[("F", (dA + i, dA + j), dA + k)] += v
    for (i, j, k), v in sparse3(l1).items():
        vec[("F", (i, dA + j), dA + k)] += v
    for (i, j, k), v in sparse3(r1).items():
        vec[("F", (dA + i, j), dA + k)] += v
    for i in range(dA):
        for j in range(dB):
            if P1.entry(i, j):
                vec[("G", 0, (j,), i)] += P1.entry(i, j)
    return {k: v for k, v in vec.items() if v}


def cochain_direction(s: RAvgSpec, vec: dict):
    """Inverse of direction_cochain."""
    dA, dB = s.dimA, s.dimB
    mu1, nu1, l1, r1 = {}, {}, {}, {}
    P1 = [[Fraction(0)] * dB for _ in range(dA)]
    for k, v in vec.items():
        if k[0] == "G":
            _, _, (j,), i = k
            P1[i][j] += v
            continue
        _, (i, j), o = k
        if i < dA and j < dA:
            mu1[i, j, o] = v
        elif i >= dA and j >= dA:
            nu1[i - dA, j - dA, o - dA] = v
        elif i < dA:
            l1[i, j - dA, o - dA] = v
        else:
            r1[i - dA, j, o - dA] = v
    return (tensor3(dA, dA, dA, mu1), tensor3(dB, dB, dB, nu1), tensor3(dA, dB, dB, l1),
            tensor3(dB, dA, dB, r1), LinearOp(dB, dA, P1))


@dataclass
class InfinitesimalReport:
    is_deformation: bool
    is_cocycle: bool
    cocycle: dict
    cohomology_class: tuple | None

    @property
    def agree(self) -> bool:
        return self.is_deformation == self.is_cocycle


def _class_coords(cx: Complex, n: int, vec: dict, reps: list) -> tuple:
    """Coordinates of a cocycle in H^n relative to the representatives."""
    from .exactla import solve
    cols = [cx.to_vec(n, r) for r in reps] + [col for col in
                                               (cx.matrix(n - 1).col_dicts() if n > 1 else [])]
    dim = len(cx.basis(n))
    mat_cols = []
    for c in cols:
        mat_cols.append({i: v for i, v in enumerate(c) if v} if not isinstance(c, dict) else c)
    M = RatMatrix.from_sparse_columns(dim, mat_cols)
    x = solve(M, cx.to_vec(n, vec))
    if x is None:
        raise ArithmeticError("cocycle not in Z = H + B; inconsistent complex")
    return tuple(x[:len(reps)])


def check_infinitesimal(s: RAvgSpec, direction, cx: RAvgComplex | None = None) -> InfinitesimalReport:
    cx = cx or RAvgComplex(s)
    is_def = not any(first_order_defect(s, direction))
    vec = direction_cochain(s, direction)
    is_cocycle = not cx.apply(2, vec)
    cls = None
    if is_cocycle:
        reps = cx.betti(2).representatives
        cls = _class_coords(cx, 2, vec, reps)
    return InfinitesimalReport(is_def, is_cocycle, vec, cls)


def classify_deformations(s: RAvgSpec) -> list[dict]:
    """Representatives of H^2_rAvg, i.e. of the classes of infinitesimal deformations."""
    return RAvgComplex(s).betti(2).representatives


def equivalent_by_coboundary(s: RAvgSpec, d1, d2, cx: RAvgComplex | None = None) -> bool:
    """Do the cocycles of two directions differ by delta(phi1, psi1)?"""
    cx = cx or RAvgComplex(s)
    v1, v2 = direction_cochain(s, d1), direction_cochain(s, d2)
    diff = {k: v1.get(k, 0) - v2.get(k, 0) for k in set(v1) | set(v2)}
    from .exactla import solve
    return solve(cx.matrix(1), cx.to_vec(2, diff)) is not None


def _morphism_residuals(src: RAvgSpec, dst: RAvgSpec, phi: LinearOp, psi: LinearOp) -> list:
    from .algebras import apply2, unit_vector
    b, b2 = src.bimodule, dst.bimodule
    eA = [unit_vector(b.dimA, i) for i in range(b.dimA)]
    eB = [unit_vector(b.dimB, i) for i in range(b.dimB)]
    out = []

    def diff(u, v):
        out.extend(x - y for x, y in zip(u, v))

    for a, c in product(eA, repeat=2):
        diff(phi(apply2(b.mu, a, c)), apply2(b2.mu, phi(a), phi(c)))
    for x, y in product(eB, repeat=2):
        diff(psi(apply2(b.nu, x, y)), apply2(b2.nu, psi(x), psi(y)))
    for a in eA:
        for x in eB:
            diff(psi(apply2(b.l, a, x)), apply2(b2.l, phi(a), psi(x)))
            diff(psi(apply2(b.r, x, a)), apply2(b2.r, psi(x), phi(a)))
    for x in eB:
        diff(phi(src.P(x)), dst.P(psi(x)))
    return out


def equivalent_by_morphism(s: RAvgSpec, d1, d2):
    """Solve for (phi1, psi1) with (id + t phi1, id + t psi1) a morphism from the
    d1-deformation to the d2-deformation modulo t^2; returns the pair or None."""
    from .exactla import solve
    dA, dB = s.dimA, s.dimB
    nunk = dA * dA + dB * dB

    def unpack(u):
        phi1 = LinearOp(dA, dA, [[u[i * dA + j] for j in range(dA)] for i in range(dA)])
        off = dA * dA
        psi1 = LinearOp(dB, dB, [[u[off + i * dB + j] for j in range(dB)] for i in range(dB)])
        return phi1, psi1

    def resid(u):
        phi1, psi1 = unpack(u)
        return _first_order(lambda t: _morphism_residuals(
            _deformed(s, d1, t), _deformed(s, d2, t),
            LinearOp.identity(dA) + phi1.scale(t), LinearOp.identity(dB) + psi1.scale(t)))

    zero = [Fraction(0)] * nunk
    r0 = resid(zero)
    cols = []
    for k in range(nunk):
        u = list(zero)
        u[k] = Fraction(1)
        rk = resid(u)
        cols.append({i: a - b for i, (a, b) in enumerate(zip(rk, r0)) if a - b})
    M = RatMatrix.from_sparse_columns(len(r0), cols)
    x = solve(M, [-v for v in r0])
    return None if x is None else unpack(x)


def coboundary_direction(s: RAvgSpec, phi1: LinearOp, psi1: LinearOp, cx: RAvgComplex | None = None):
    """The direction delta_rAvg(phi1, psi1), unpacked as (mu1, nu1, l1, r1, P1)."""
    cx = cx or RAvgComplex(s)
    dA = s.dimA
    vec = {}
    for i in range(dA):
        for j in range(dA):
            if phi1.entry(i, j):
                vec[("F", (j,), i)] = phi1.entry(i, j)
    for i in range(s.dimB):
        for j in range(s.dimB):
            if psi1.entry(i, j):
                vec[("F", (dA + j,), dA + i)] = psi1.entry(i, j)
    return cochain_direction(s, cx.apply(1, vec))
