"""Structure-constant specs and their axiom checks.

A bilinear map is a rank-3 tensor ``t`` with ``e_i * e_j = sum_k t[i][j][k] e_k``.
Every three-variable identity used here has the shape
``(x o1 y) o2 z = x o3 (y o4 z)`` (possibly summed), so one evaluation engine
serves associativity, bimodules, triassociative and tridendriform algebras.
It clears denominators and contracts integer tensors with numpy; both sides
of each identity are quadratic in the structure constants, so the common
scale factor cancels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from .exactla import Echelon, RatMatrix, fmt, kernel_basis, solve


# -- tensors -----------------------------------------------------------------

def tensor3(d1: int, d2: int, d3: int, entries=None) -> tuple:
    """Dense nested-tuple tensor from a sparse ``{(i, j, k): value}`` dict."""
    t = [[[Fraction(0)] * d3 for _ in range(d2)] for _ in range(d1)]
    for (i, j, k), v in (entries or {}).items():
        t[i][j][k] += Fraction(v)
    return freeze(t)


def freeze(t) -> tuple:
    return tuple(tuple(tuple(Fraction(v) for v in row) for row in mat) for mat in t)


def shape3(t) -> tuple[int, int, int]:
    d1 = len(t)
    d2 = len(t[0]) if d1 else 0
    d3 = len(t[0][0]) if d1 and d2 else 0
    return d1, d2, d3


def sparse3(t) -> dict:
    return {(i, j, k): v for i, mat in enumerate(t) for j, row in enumerate(mat)
            for k, v in enumerate(row) if v}


def apply2(t, u, v) -> tuple:
    """Evaluate the bilinear map t on vectors u, v."""
    d3 = shape3(t)[2]
    out = [Fraction(0)] * d3
    for i, a in enumerate(u):
        if not a:
            continue
        for j, b in enumerate(v):
            if not b:
                continue
            ab = a * b
            for k, c in enumerate(t[i][j]):
                if c:
                    out[k] += ab * c
    return tuple(out)


def add_tensors(*ts, coeffs=None) -> tuple:
    coeffs = coeffs or [1] * len(ts)
    d1, d2, d3 = shape3(ts[0])
    return tuple(tuple(tuple(sum((c * t[i][j][k] for c, t in zip(coeffs, ts)), Fraction(0))
                             for k in range(d3)) for j in range(d2)) for i in range(d1))


def unit_vector(n: int, i: int) -> tuple:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


# -- reports -----------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    tag: str
    witness: tuple
    lhs: object
    rhs: object

    def line(self) -> str:
        return f"{self.tag} {_witness_str(self.witness)} lhs={_val_str(self.lhs)} rhs={_val_str(self.rhs)}"


def _witness_str(w) -> str:
    return "(" + ",".join(str(x) for x in w) + ")"


def _val_str(v) -> str:
    if isinstance(v, (tuple, list)):
        return "[" + " ".join(fmt(x) for x in v) + "]"
    return fmt(v)


@dataclass
class Report:
    """Violations of one check, in canonical order (identity, then tuple)."""

    check: str
    violations: list = field(default_factory=list)
    subreports: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def tags(self) -> set:
        return {v.tag for v in self.violations}

    def lines(self) -> list[str]:
        return [v.line() for v in self.violations]

    def __len__(self) -> int:
        return len(self.violations)


# -- the triple-identity engine ----------------------------------------------

def _scaled_arrays(tensors: dict):
    """Integer numpy arrays for every tensor, sharing one denominator."""
    den = 1
    biggest = 0
    for t in tensors.values():
        for mat in t:
            for row in mat:
                for v in row:
                    den = lcm(den, v.denominator)
    ints = {}
    for name, t in tensors.items():
        arr = [[[int(v * den) for v in row] for row in mat] for mat in t]
        ints[name] = arr
        for mat in arr:
            for row in mat:
                for v in row:
                    biggest = max(biggest, abs(v))
    dims = max([1] + [max(shape3(t)) for t in tensors.values()])
    safe = biggest * biggest * dims * 8 < 2 ** 62
    dtype = np.int64 if safe else object
    out = {}
    for name, arr in ints.items():
        d1, d2, d3 = shape3(tensors[name])
        a = np.zeros((d1, d2, d3), dtype=dtype)
        for i in range(d1):
            for j in range(d2):
                for k in range(d3):
                    a[i, j, k] = arr[i][j][k]
        out[name] = a
    return out, den


def _left(outer, inner):
    """(x inner y) outer z as a [x, y, z, out] array."""
    if outer.dtype == object or inner.dtype == object:
        return np.tensordot(inner, outer, axes=([2], [0]))
    return np.einsum("ijp,pkm->ijkm", inner, outer)


def _right(outer, inner):
    """x outer (y inner z) as a [x, y, z, out] array."""
    if outer.dtype == object or inner.dtype == object:
        t = np.tensordot(outer, inner, axes=([1], [2]))  # [x, out, y, z]
        return np.transpose(t, (0, 2, 3, 1))
    return np.einsum("jkp,ipm->ijkm", inner, outer)


@dataclass(frozen=True)
class TripleIdentity:
    """sum of lhs terms == sum of rhs terms; a term is (coef, side, outer, inner)."""

    tag: str
    lhs: tuple
    rhs: tuple
    slots: str = ""

    def evaluate(self, arrays, linear=None):
        """Both sides as arrays; with ``linear`` = direction arrays, the t-coefficient."""
        return self._side(self.lhs, arrays, linear), self._side(self.rhs, arrays, linear)

    @staticmethod
    def _side(terms, arrays, linear):
        total = None
        for coef, side, outer, inner in terms:
            f = _left if side == "L" else _right
            if linear is None:
                val = f(arrays[outer], arrays[inner])
            else:
                val = f(linear[outer], arrays[inner]) + f(arrays[outer], linear[inner])
            val = val * coef
            total = val if total is None else total + val
        return total


def run_identities(identities, tensors: dict, labels=None, direction: dict | None = None,
                   check: str = "") -> Report:
    """Evaluate identities on all basis triples and collect violations.

    ``labels[c]`` names basis vectors of slot type c in witnesses.  When
    ``direction`` is given the identities are linearized: the report lists
    triples where the first-order term in t of the deformed structure
    ``tensors + t * direction`` fails.
    """
    if direction is None:
        arrays, den = _scaled_arrays(tensors)
        lin = None
        scale = Fraction(1, den * den)
    else:
        names = list(tensors)
        both = dict(tensors)
        both.update({"__d_" + k: v for k, v in direction.items()})
        arrays_all, den = _scaled_arrays(both)
        arrays = {k: arrays_all[k] for k in names}
        lin = {k: arrays_all["__d_" + k] for k in names}
        scale = Fraction(1, den * den)
    report = Report(check)
    for ident in identities:
        L, R = ident.evaluate(arrays, lin)
        diff = L - R
        nz = np.argwhere(np.any(diff != 0, axis=3))
        for i, j, k in sorted(map(tuple, nz.tolist())):
            witness = (i, j, k)
            if labels is not None and ident.slots:
                witness = tuple(labels[c](x) for c, x in zip(ident.slots, (i, j, k)))
            report.violations.append(Violation(
                ident.tag, witness,
                tuple(Fraction(int(v)) * scale for v in L[i, j, k]),
                tuple(Fraction(int(v)) * scale for v in R[i, j, k])))
    return report


def _ident(tag, lhs, rhs, slots=""):
    def norm(side):
        return tuple((1, *t) if len(t) == 3 else t for t in side)
    return TripleIdentity(tag, norm(lhs), norm(rhs), slots)


ASSOC_IDENTITY = [_ident("assoc", [("L", "mu", "mu")], [("R", "mu", "mu")], "aaa")]

BIMODULE_IDENTITIES = [
    _ident("assoc_A", [("L", "mu", "mu")], [("R", "mu", "mu")], "aaa"),
    _ident("assoc_B", [("L", "nu", "nu")], [("R", "nu", "nu")], "xxx"),
    _ident("(ab).x=a.(b.x)", [("L", "l", "mu")], [("R", "l", "l")], "aax"),
    _ident("(a.x).b=a.(x.b)", [("L", "r", "l")], [("R", "l", "r")], "axa"),
    _ident("(x.a).b=x.(ab)", [("L", "r", "r")], [("R", "r", "mu")], "xaa"),
    _ident("(xy).a=x(y.a)", [("L", "r", "nu")], [("R", "nu", "r")], "xxa"),
    _ident("(x.a)y=x(a.y)", [("L", "nu", "r")], [("R", "nu", "l")], "xax"),
    _ident("(a.x)y=a.(xy)", [("L", "nu", "l")], [("R", "l", "nu")], "axx"),
]

TRIASS_IDENTITIES = [
    _ident("a1", [("L", "dashv", "dashv")], [("R", "dashv", "dashv")]),
    _ident("a2", [("L", "dashv", "dashv")], [("R", "dashv", "vdash")]),
    _ident("a3", [("L", "dashv", "vdash")], [("R", "vdash", "dashv")]),
    _ident("a4", [("L", "vdash", "dashv")], [("R", "vdash", "vdash")]),
    _ident("a5", [("L", "vdash", "vdash")], [("R", "vdash", "vdash")]),
    _ident("a6", [("L", "dashv", "dashv")], [("R", "dashv", "perp")]),
    _ident("a7", [("L", "dashv", "perp")], [("R", "perp", "dashv")]),
    _ident("a8", [("L", "perp", "dashv")], [("R", "perp", "vdash")]),
    _ident("a9", [("L", "perp", "vdash")], [("R", "vdash", "perp")]),
    _ident("a10", [("L", "vdash", "perp")], [("R", "vdash", "vdash")]),
    _ident("a11", [("L", "perp", "perp")], [("R", "perp", "perp")]),
]

DIASS_TAGS = ("a1", "a2", "a3", "a4", "a5")

# Tridendriform axioms of Loday and Ronco ("Trialgebras and families of
# polytopes", 2004), with x * y = x < y + x > y + x . y.  The source text of
# this package cites them without printing them; this table is the only place
# they are written down.
TRIDENDRIFORM_IDENTITIES = [
    _ident("t1", [("L", "prec", "prec")], [("R", "prec", "star")]),
    _ident("t2", [("L", "prec", "succ")], [("R", "succ", "prec")]),
    _ident("t3", [("L", "succ", "star")], [("R", "succ", "succ")]),
    _ident("t4", [("L", "curly", "succ")], [("R", "succ", "curly")]),
    _ident("t5", [("L", "curly", "prec")], [("R", "curly", "succ")]),
    _ident("t6", [("L", "prec", "curly")], [("R", "curly", "prec")]),
    _ident("t7", [("L", "curly", "curly")], [("R", "curly", "curly")]),
]


# -- specs -------------------------------------------------------------------

@dataclass(frozen=True)
class AssocSpec:
    dim: int
    mu: tuple

    def __post_init__(self):
        object.__setattr__(self, "mu", freeze(self.mu))
        if shape3(self.mu) != (self.dim,) * 3 and self.dim:
            raise ValueError("mu must be dim x dim x dim")

    def mul(self, u, v) -> tuple:
        return apply2(self.mu, u, v)


@dataclass(frozen=True)
class BimodSpec:
    algebra: AssocSpec
    dimB: int
    nu: tuple
    l: tuple
    r: tuple

    def __post_init__(self):
        dA, dB = self.algebra.dim, self.dimB
        for name, shape in (("nu", (dB, dB, dB)), ("l", (dA, dB, dB)), ("r", (dB, dA, dB))):
            t = freeze(getattr(self, name))
            object.__setattr__(self, name, t)
            if dA and dB and shape3(t) != shape:
                raise ValueError(f"{name} has shape {shape3(t)}, expected {shape}")

    @property
    def dimA(self) -> int:
        return self.algebra.dim

    @property
    def mu(self) -> tuple:
        return self.algebra.mu

    def act_left(self, a, x) -> tuple:
        return apply2(self.l, a, x)

    def act_right(self, x, a) -> tuple:
        return apply2(self.r, x, a)

    def mulB(self, x, y) -> tuple:
        return apply2(self.nu, x, y)

    def tensors(self) -> dict:
        return {"mu": self.mu, "nu": self.nu, "l": self.l, "r": self.r}


@dataclass(frozen=True)
class TriassSpec:
    dim: int
    dashv: tuple
    vdash: tuple
    perp: tuple

    def __post_init__(self):
        for name in ("dashv", "vdash", "perp"):
            t = freeze(getattr(self, name))
            object.__setattr__(self, name, t)
            if self.dim and shape3(t) != (self.dim,) * 3:
                raise ValueError(f"{name} must be dim x dim x dim")

    def op(self, kind) -> tuple:
        """Tensor for a BulletKind (or its symbol)."""
        key = getattr(kind, "value", kind)
        return {"⊣": self.dashv, "⊢": self.vdash, "⊥": self.perp}[key]

    def tensors(self) -> dict:
        return {"dashv": self.dashv, "vdash": self.vdash, "perp": self.perp}


@dataclass(frozen=True)
class TriDendSpec:
    dim: int
    prec: tuple
    succ: tuple
    curly: tuple

    def __post_init__(self):
        for name in ("prec", "succ", "curly"):
            object.__setattr__(self, name, freeze(getattr(self, name)))


class LinearOp:
    """Linear map between based spaces; matrix is dst_dim x src_dim."""

    __slots__ = ("src_dim", "dst_dim", "matrix", "_rows")

    def __init__(self, src_dim: int, dst_dim: int, matrix):
        if not isinstance(matrix, RatMatrix):
            matrix = RatMatrix.from_rows(matrix) if dst_dim and src_dim else RatMatrix(dst_dim, src_dim)
        if (matrix.rows, matrix.cols) != (dst_dim, src_dim):
            raise ValueError(f"matrix is {matrix.rows}x{matrix.cols}, expected {dst_dim}x{src_dim}")
        self.src_dim, self.dst_dim, self.matrix = src_dim, dst_dim, matrix
        self._rows = matrix.to_lists()

    @classmethod
    def identity(cls, n: int) -> LinearOp:
        return cls(n, n, RatMatrix.identity(n))

    @classmethod
    def zero(cls, src: int, dst: int) -> LinearOp:
        return cls(src, dst, RatMatrix(dst, src))

    @classmethod
    def from_columns(cls, src: int, dst: int, cols) -> LinearOp:
        """cols[j] = image of e_j."""
        return cls(src, dst, RatMatrix.from_rows([[cols[j][i] for j in range(src)] for i in range(dst)]))

    def __call__(self, v) -> tuple:
        return tuple(sum((a * b for a, b in zip(row, v) if a and b), Fraction(0)) for row in self._rows)

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self._rows)

    def entry(self, i: int, j: int) -> Fraction:
        return self._rows[i][j]

    def rows(self) -> list:
        return [list(r) for r in self._rows]

    def __matmul__(self, other: LinearOp) -> LinearOp:
        if self.src_dim != other.dst_dim:
            raise ValueError("shape mismatch in composition")
        return LinearOp(other.src_dim, self.dst_dim, self.matrix @ other.matrix)

    def __add__(self, other: LinearOp) -> LinearOp:
        return LinearOp(self.src_dim, self.dst_dim,
                        [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._rows, other._rows)])

    def scale(self, c) -> LinearOp:
        c = Fraction(c)
        return LinearOp(self.src_dim, self.dst_dim, [[c * a for a in r] for r in self._rows])

    def inverse(self) -> LinearOp:
        n = self.src_dim
        if self.dst_dim != n:
            raise ValueError("only square maps can be inverted")
        cols = []
        for j in range(n):
            x = solve(self.matrix, unit_vector(n, j))
            if x is None:
                raise ValueError("map is not invertible")
            cols.append(x)
        inv = LinearOp.from_columns(n, n, cols)
        if (self @ inv).matrix != RatMatrix.identity(n):
            raise ValueError("map is not invertible")
        return inv

    def is_invertible(self) -> bool:
        return self.src_dim == self.dst_dim and not kernel_basis(self.matrix)

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearOp) and self.src_dim == other.src_dim and \
            self.dst_dim == other.dst_dim and self._rows == other._rows

    def __repr__(self) -> str:
        return f"LinearOp({self.src_dim}->{self.dst_dim}, {self._rows!r})"


# -- checks ------------------------------------------------------------------

def _labels(prefix):
    return lambda i: f"{prefix}{i}"


def check_assoc(a: AssocSpec) -> Report:
    if not a.dim:
        return Report("assoc")
    return run_identities(ASSOC_IDENTITY, {"mu": a.mu}, {"a": _labels("e")}, check="assoc")


_BIMOD_LABELS = {"a": _labels("a"), "x": _labels("x")}


def check_bimodule(b: BimodSpec) -> Report:
    """Associativity of A and B plus the six compatibilities, on basis triples."""
    idents = [i for i in BIMODULE_IDENTITIES if _dims_ok(i.slots, b.dimA, b.dimB)]
    return run_identities(idents, b.tensors(), _BIMOD_LABELS, check="bimodule")


def _dims_ok(slots, dA, dB) -> bool:
    return all((dA if c == "a" else dB) > 0 for c in slots)


def check_triass(d: TriassSpec) -> Report:
    """Identities (a1)-(a11) on basis triples; subreport 'diass' for (a1)-(a5)."""
    if not d.dim:
        rep = Report("triass")
        rep.subreports["diass"] = Report("diass")
        return rep
    rep = run_identities(TRIASS_IDENTITIES, d.tensors(), check="triass")
    rep.subreports["diass"] = Report("diass", [v for v in rep.violations if v.tag in DIASS_TAGS])
    return rep


def check_tridendriform(t: TriDendSpec) -> Report:
    if not t.dim:
        return Report("tridend")
    star = add_tensors(t.prec, t.succ, t.curly)
    tensors = {"prec": t.prec, "succ": t.succ, "curly": t.curly, "star": star}
    return run_identities(TRIDENDRIFORM_IDENTITIES, tensors, check="tridend")


def semidirect(b: BimodSpec, lam) -> TriassSpec:
    """Triassociative structure on A (+) B:
    (a,x) ⊣ (b,y) = (ab, x.b), (a,x) ⊢ (b,y) = (ab, a.y), (a,x) ⊥ (b,y) = (ab, lam xy).
    """
    rep = check_bimodule(b)
    if not rep.ok:
        raise ValueError("semidirect needs a valid bimodule: " + rep.lines()[0])
    return semidirect_unchecked(b, lam)


def semidirect_unchecked(b: BimodSpec, lam) -> TriassSpec:
    lam = Fraction(lam)
    dA, dB = b.dimA, b.dimB
    n = dA + dB
    base = {}
    for (i, j, k), v in sparse3(b.mu).items():
        base[i, j, k] = v
    dashv, vdash, perp = dict(base), dict(base), dict(base)
    for (x, a, m), v in sparse3(b.r).items():
        dashv[dA + x, a, dA + m] = v
    for (a, y, m), v in sparse3(b.l).items():
        vdash[a, dA + y, dA + m] = v
    for (x, y, m), v in sparse3(b.nu).items():
        if lam * v:
            perp[dA + x, dA + y, dA + m] = lam * v
    return TriassSpec(n, tensor3(n, n, n, dashv), tensor3(n, n, n, vdash), tensor3(n, n, n, perp))


def check_nijenhuis(d: TriassSpec, N: LinearOp) -> Report:
    """N(x)*N(y) = N(N(x)*y + x*N(y) - N(x*y)) for each product *, basis pairs."""
    if N.src_dim != d.dim or N.dst_dim != d.dim:
        raise ValueError("N must be square on the carrier")
    rep = Report("nijenhuis")
    basis = [unit_vector(d.dim, i) for i in range(d.dim)]
    images = [N(e) for e in basis]
    for sym, t in (("⊣", d.dashv), ("⊢", d.vdash), ("⊥", d.perp)):
        for i in range(d.dim):
            for j in range(d.dim):
                lhs = apply2(t, images[i], images[j])
                inner = [p + q - s for p, q, s in zip(
                    apply2(t, images[i], basis[j]), apply2(t, basis[i], images[j]),
                    N(apply2(t, basis[i], basis[j])))]
                rhs = N(inner)
                if lhs != rhs:
                    rep.violations.append(Violation(f"nijenhuis{sym}", (f"e{i}", f"e{j}"), lhs, rhs))
    return rep


def check_triass_morphism(d: TriassSpec, d2: TriassSpec, psi: LinearOp) -> Report:
    """psi(x * y) = psi(x) * psi(y) for the three products, basis pairs."""
    if (psi.src_dim, psi.dst_dim) != (d.dim, d2.dim):
        raise ValueError("psi shape mismatch")
    rep = Report("triass_morphism")
    for sym in ("⊣", "⊢", "⊥"):
        t, t2 = d.op(sym), d2.op(sym)
        for i in range(d.dim):
            for j in range(d.dim):
                lhs = psi(apply2(t, unit_vector(d.dim, i), unit_vector(d.dim, j)))
                rhs = apply2(t2, psi.column(i), psi.column(j))
                if lhs != rhs:
                    rep.violations.append(Violation(f"hom{sym}", (f"e{i}", f"e{j}"), lhs, rhs))
    return rep


# -- ideals, quotients, the functor to relative averaging algebras ----------

def _rref_basis(e: Echelon, n: int) -> list[tuple]:
    red = e.reduced_rows()
    out = []
    for c in sorted(red):
        row = red[c]
        piv = row[c]
        out.append(tuple(Fraction(row.get(j, 0), piv) for j in range(n)))
    return out


def ideal_closure(d: TriassSpec, generators) -> list[tuple]:
    """Smallest subspace containing the generators and stable under left and
    right multiplication by basis vectors for all three products.

    Returned as a reduced echelon basis (pivot entries 1, sorted by pivot).
    """
    n = d.dim
    e = Echelon()
    queue = [tuple(Fraction(x) for x in g) for g in generators]
    ops = (d.dashv, d.vdash, d.perp)
    basis = [unit_vector(n, i) for i in range(n)]
    while queue:
        v = queue.pop(0)
        if not e.insert(v):
            continue
        for t in ops:
            for b in basis:
                queue.append(apply2(t, v, b))
                queue.append(apply2(t, b, v))
    return _rref_basis(e, n)


def _quotient_data(n: int, ideal: list[tuple]):
    pivots = [next(j for j, x in enumerate(v) if x) for v in ideal]
    free = [j for j in range(n) if j not in pivots]

    def q(v):
        v = list(v)
        for p, row in zip(pivots, ideal):
            c = v[p]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        return tuple(v[j] for j in free)

    return free, q


def _functor_generators(d: TriassSpec) -> list[tuple]:
    out = []
    for i in range(d.dim):
        for j in range(d.dim):
            u = d.dashv[i][j]
            out.append(tuple(a - b for a, b in zip(u, d.vdash[i][j])))
            out.append(tuple(a - b for a, b in zip(u, d.perp[i][j])))
    return out


def triass_to_ravg(d: TriassSpec, verify: bool = True):
    """The functor from triassociative algebras to relative averaging algebras.

    D_ass = D/I with [x][y] = [x⊣y]; B = (D, ⊥) with [x].y = x⊢y and
    y.[x] = y⊣x; the quotient map q: B -> D_ass is a relative averaging
    operator of weight 1.  Returns (bimodule, q).

    I is generated by x⊣y - x⊢y and also x⊣y - x⊥y: weight 1 needs
    q(x)q(y) = [x⊣y] to equal q(x⊥y) = [x⊥y], which the first family alone
    does not give (x ⊣ y = x P(y) and x ⊥ y = 2xy on K[Z/2] differ mod it).
    """
    if verify:
        rep = check_triass(d)
        if not rep.ok:
            raise ValueError("input is not triassociative: " + rep.lines()[0])
    n = d.dim
    free, q = _quotient_data(n, ideal_closure(d, _functor_generators(d)))
    m = len(free)
    mu = {}
    l, r = {}, {}
    for k1, i in enumerate(free):
        for k2, j in enumerate(free):
            for k, v in enumerate(q(d.dashv[i][j])):
                if v:
                    mu[k1, k2, k] = v
        for y in range(n):
            for k, v in enumerate(d.vdash[i][y]):
                if v:
                    l[k1, y, k] = v
            for k, v in enumerate(d.dashv[y][i]):
                if v:
                    r[y, k1, k] = v
    algebra = AssocSpec(m, tensor3(m, m, m, mu))
    bimod = BimodSpec(algebra, n, d.perp, tensor3(m, n, n, l), tensor3(n, m, n, r))
    qop = LinearOp.from_columns(n, m, [q(unit_vector(n, j)) for j in range(n)])
    if verify:
        from .operators import RAvgSpec, check_relative_averaging, induced_triass
        s = RAvgSpec(bimod, qop, Fraction(1))
        for rep in (check_bimodule(bimod), check_relative_averaging(s)):
            if not rep.ok:
                raise AssertionError("functor output failed " + rep.check + ": " + rep.lines()[0])
        if induced_triass(s) != d:
            raise AssertionError("induced structure on D differs from the input")
    return bimod, qop


def functor_morphism(d: TriassSpec, d2: TriassSpec, psi: LinearOp) -> LinearOp:
    """phi^psi: D_ass -> D'_ass, [x] -> [psi(x)]."""
    _, q = triass_to_ravg(d, verify=False)
    _, q2 = triass_to_ravg(d2, verify=False)
    n = d.dim
    free, _ = _quotient_data(n, ideal_closure(d, _functor_generators(d)))
    cols = [q2(psi(unit_vector(n, i))) for i in free]
    return LinearOp.from_columns(len(free), q2.dst_dim, cols)


def induced_tridendriform(d: TriassSpec) -> TriDendSpec:
    """x < y = x ⊣ y, x > y = x ⊢ y, x curly y = -(x ⊥ y)."""
    rep = check_triass(d)
    if not rep.ok:
        raise ValueError("input is not triassociative: " + rep.lines()[0])
    return TriDendSpec(d.dim, d.dashv, d.vdash, add_tensors(d.perp, coeffs=[-1]))


# -- small constructors ------------------------------------------------------

def adjoint_bimodule(a: AssocSpec, nu_scale=1) -> BimodSpec:
    """A as a bimodule over itself; the product on B is nu_scale * mu."""
    c = Fraction(nu_scale)
    return BimodSpec(a, a.dim, add_tensors(a.mu, coeffs=[c]), a.mu, a.mu)


def zero_algebra(n: int) -> AssocSpec:
    return AssocSpec(n, tensor3(n, n, n))


def transport(b: BimodSpec, g: LinearOp, h: LinearOp) -> BimodSpec:
    """Rewrite a bimodule in new bases: A-basis change g, B-basis change h.

    The new structure constants are those making g: A_new -> A and
    h: B_new -> B isomorphisms.
    """
    gi, hi = g.inverse(), h.inverse()
    dA, dB = b.dimA, b.dimB
    eA = [g.column(i) for i in range(dA)]
    eB = [h.column(i) for i in range(dB)]

    def build(t, left, right, back, d1, d2, d3):
        out = {}
        for i in range(d1):
            for j in range(d2):
                for k, v in enumerate(back(apply2(t, left[i], right[j]))):
                    if v:
                        out[i, j, k] = v
        return tensor3(d1, d2, d3, out)

    mu = build(b.mu, eA, eA, gi, dA, dA, dA)
    nu = build(b.nu, eB, eB, hi, dB, dB, dB)
    l = build(b.l, eA, eB, hi, dA, dB, dB)
    r = build(b.r, eB, eA, hi, dB, dA, dB)
    return BimodSpec(AssocSpec(dA, mu), dB, nu, l, r)
