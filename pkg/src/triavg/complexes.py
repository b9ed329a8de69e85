"""Tree-indexed cochains, their compositions and differentials.

An arity-n cochain f in Hom(K[T_n] (x) V^n, W) is stored sparsely as
``{(tree index, inputs, output): coefficient}``.  Basis indices of
V = A (+) B put A first: 0..dA-1 are A, dA..dA+dB-1 are B.

The bracket carries graded-Lie degree arity-1, and
``[f, g] = sum_i (-1)^((i-1)(n-1)) f o_i g - (-1)^((m-1)(n-1)) sum_i (-1)^((i-1)(m-1)) g o_i f``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebras import BimodSpec, TriassSpec, semidirect_unchecked
from .exactla import fmt, rat
from .trees import (BulletKind, bullet_table, composition_table, enumerate_trees, face_table,
                    product_tree, r_i, tree_index)

HALF = Fraction(1, 2)


class Cochain:
    """Finitely supported tree-indexed multilinear map."""

    __slots__ = ("arity", "src_dim", "dst_dim", "data")

    def __init__(self, arity: int, src_dim: int, dst_dim: int, data=None):
        if arity < 1:
            raise ValueError("cochains have arity >= 1")
        self.arity, self.src_dim, self.dst_dim = arity, src_dim, dst_dim
        clean = {}
        ntrees = len(enumerate_trees(arity))
        for key, v in (data or {}).items():
            if not v:
                continue
            t, ins, out = key
            if not 0 <= t < ntrees or len(ins) != arity or not 0 <= out < dst_dim \
                    or any(not 0 <= x < src_dim for x in ins):
                raise ValueError(f"cochain key {key} out of range")
            clean[(t, tuple(ins), out)] = Fraction(v)
        self.data = clean

    @classmethod
    def _raw(cls, arity, src_dim, dst_dim, data) -> Cochain:
        c = cls.__new__(cls)
        c.arity, c.src_dim, c.dst_dim = arity, src_dim, dst_dim
        c.data = {k: v for k, v in data.items() if v}
        return c

    @classmethod
    def zero(cls, arity, src_dim, dst_dim) -> Cochain:
        return cls._raw(arity, src_dim, dst_dim, {})

    def like(self, data) -> Cochain:
        return Cochain._raw(self.arity, self.src_dim, self.dst_dim, data)

    def _check_same(self, other):
        if (self.arity, self.src_dim, self.dst_dim) != (other.arity, other.src_dim, other.dst_dim):
            raise ValueError("cochains live in different spaces")

    def __add__(self, other: Cochain) -> Cochain:
        self._check_same(other)
        d = dict(self.data)
        for k, v in other.data.items():
            d[k] = d.get(k, 0) + v
        return self.like(d)

    def __sub__(self, other: Cochain) -> Cochain:
        return self + other.scale(-1)

    def __neg__(self) -> Cochain:
        return self.scale(-1)

    def scale(self, c) -> Cochain:
        c = Fraction(c)
        return self.like({k: c * v for k, v in self.data.items()})

    def is_zero(self) -> bool:
        return not self.data

    def __eq__(self, other) -> bool:
        return isinstance(other, Cochain) and \
            (self.arity, self.src_dim, self.dst_dim, self.data) == \
            (other.arity, other.src_dim, other.dst_dim, other.data)

    def __hash__(self):
        return hash((self.arity, self.src_dim, self.dst_dim, frozenset(self.data.items())))

    def __repr__(self) -> str:
        return f"Cochain(arity={self.arity}, {self.src_dim}->{self.dst_dim}, {len(self.data)} terms)"

    def value(self, tree: int, ins) -> tuple:
        """Output vector on basis inputs."""
        out = [Fraction(0)] * self.dst_dim
        for o in range(self.dst_dim):
            out[o] = self.data.get((tree, tuple(ins), o), Fraction(0))
        return tuple(out)

    def evaluate(self, tree, args) -> tuple:
        """Output vector on arbitrary input vectors (multilinear expansion)."""
        if not isinstance(tree, int):
            tree = tree_index(tree)
        out = [Fraction(0)] * self.dst_dim
        for (t, ins, o), c in self.data.items():
            if t != tree:
                continue
            w = c
            for x, v in zip(ins, args):
                w *= v[x]
                if not w:
                    break
            if w:
                out[o] += w
        return tuple(out)

    def dump(self) -> str:
        lines = []
        for (t, ins, o) in sorted(self.data):
            lines.append(f"{t} | {' '.join(map(str, ins))} | {o} | {fmt(self.data[(t, ins, o)])}")
        return "\n".join(lines)

    @classmethod
    def load(cls, text: str, arity: int, src_dim: int, dst_dim: int) -> Cochain:
        data = {}
        for n, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = [p.strip() for p in line.split("|")]
            if len(parts) != 4:
                raise ValueError(f"line {n}: expected 'tree | inputs | output | value'")
            try:
                key = (int(parts[0]), tuple(int(x) for x in parts[1].split()), int(parts[2]))
                data[key] = data.get(key, 0) + rat(parts[3])
            except ValueError as e:
                raise ValueError(f"line {n}: {e}") from None
        return cls(arity, src_dim, dst_dim, data)


# -- composition and bracket ---------------------------------------------------

def circ(f: Cochain, i: int, g: Cochain, sign=None) -> Cochain:
    """f o_i g: feed g into slot i of f, trees split by the R-maps.

    ``sign(f_inputs)`` may supply an extra sign per term (graded use).
    """
    m, n = f.arity, g.arity
    if not 1 <= i <= m:
        raise ValueError(f"slot {i} out of range 1..{m}")
    if f.src_dim != g.dst_dim or (m > 1 and f.src_dim != g.src_dim):
        raise ValueError("incompatible dimensions for composition")
    table = composition_table(m, i, n)
    by_slot = defaultdict(list)
    for (tf, ins, out), c in f.data.items():
        by_slot[ins[i - 1]].append((tf, ins, out, c))
    res: dict = defaultdict(Fraction)
    for (tg, gins, gout), d in g.data.items():
        for tf, fins, fout, c in by_slot.get(gout, ()):
            trees = table.get((tf, tg))
            if not trees:
                continue
            v = c * d
            if sign is not None:
                v *= sign(fins)
            newins = fins[:i - 1] + gins + fins[i:]
            for T in trees:
                res[(T, newins, fout)] += v
    return Cochain._raw(m + n - 1, g.src_dim, f.dst_dim, res)


def bracket(f: Cochain, g: Cochain) -> Cochain:
    m, n = f.arity, g.arity
    if not (f.src_dim == f.dst_dim == g.src_dim == g.dst_dim):
        raise ValueError("the bracket needs cochains on one carrier")
    acc: dict = defaultdict(Fraction)
    for i in range(1, m + 1):
        s = -1 if (i - 1) * (n - 1) % 2 else 1
        for k, v in circ(f, i, g).data.items():
            acc[k] += s * v
    outer = -1 if (m - 1) * (n - 1) % 2 else 1
    for i in range(1, n + 1):
        s = -outer * (-1 if (i - 1) * (m - 1) % 2 else 1)
        for k, v in circ(g, i, f).data.items():
            acc[k] += s * v
    return Cochain._raw(m + n - 1, f.src_dim, f.dst_dim, acc)


# -- the 2-cochain of a triassociative structure ---------------------------------

def pi_of(d: TriassSpec) -> Cochain:
    """The 2-cochain with pi(⊣-tree) = ⊣, pi(⊢-tree) = ⊢, pi(corolla) = ⊥."""
    data = {}
    for kind in BulletKind:
        t = tree_index(product_tree(kind))
        for (i, j, k), v in _sparse(d.op(kind)).items():
            data[(t, (i, j), k)] = v
    return Cochain(2, d.dim, d.dim, data)


def _sparse(t) -> dict:
    return {(i, j, k): v for i, mat in enumerate(t) for j, row in enumerate(mat)
            for k, v in enumerate(row) if v}


def delta_triass(d: TriassSpec, f: Cochain) -> Cochain:
    """Explicit triassociative coboundary of an arity-n cochain.

    (df)(T; x_1..x_{n+1}) = x_1 •_0 f(d_0 T; x_2..) + (-1)^{n+1} f(d_{n+1} T; ..x_n) •_{n+1} x_{n+1}
                            + sum_i (-1)^i f(d_i T; .., x_i •_i x_{i+1}, ..)
    """
    n = f.arity
    if f.src_dim != d.dim or f.dst_dim != d.dim:
        raise ValueError("cochain must live on the algebra")
    faces = _face_inverse(n + 1)
    bullets = bullet_table(n + 1)
    ops = {k: _sparse(d.op(k)) for k in BulletKind}
    left_by = {k: _by_right(ops[k]) for k in BulletKind}     # y -> [(x, out, c)] for x*y
    right_by = {k: _by_left(ops[k]) for k in BulletKind}     # x -> [(y, out, c)] for x*y
    prod_by = {k: _by_out(ops[k]) for k in BulletKind}       # out -> [(x, y, c)]
    res: dict = defaultdict(Fraction)
    last_sign = 1 if (n + 1) % 2 == 0 else -1
    for (t, ins, out), c in f.data.items():
        for T in faces[0].get(t, ()):
            for x, o, w in left_by[bullets[T][0]].get(out, ()):
                res[(T, (x,) + ins, o)] += c * w
        for T in faces[n + 1].get(t, ()):
            for y, o, w in right_by[bullets[T][n + 1]].get(out, ()):
                res[(T, ins + (y,), o)] += last_sign * c * w
        for i in range(1, n + 1):
            s = -1 if i % 2 else 1
            for T in faces[i].get(t, ()):
                for x, y, w in prod_by[bullets[T][i]].get(ins[i - 1], ()):
                    res[(T, ins[:i - 1] + (x, y) + ins[i:], out)] += s * c * w
    return Cochain._raw(n + 1, d.dim, d.dim, res)


def delta_triass_bracket(d: TriassSpec, f: Cochain) -> Cochain:
    """(-1)^(n-1) [pi, f]."""
    b = bracket(pi_of(d), f)
    return b if f.arity % 2 else b.scale(-1)


@lru_cache(maxsize=None)
def _face_inverse(n: int) -> tuple:
    """_face_inverse(n)[i][t] = trees T in T_n with d_i T = t."""
    ft = face_table(n)
    out = [dict() for _ in range(n + 1)]
    for T, row in enumerate(ft):
        for i, t in enumerate(row):
            out[i].setdefault(t, []).append(T)
    return tuple({k: tuple(v) for k, v in o.items()} for o in out)


def _by_right(sp):
    out = defaultdict(list)
    for (x, y, o), c in sp.items():
        out[y].append((x, o, c))
    return out


def _by_left(sp):
    out = defaultdict(list)
    for (x, y, o), c in sp.items():
        out[x].append((y, o, c))
    return out


def _by_out(sp):
    out = defaultdict(list)
    for (x, y, o), c in sp.items():
        out[o].append((x, y, c))
    return out


# -- A (+) B bookkeeping -------------------------------------------------------------

@dataclass(frozen=True)
class Split:
    """Index layout of V = A (+) B."""

    dA: int
    dB: int

    @property
    def dim(self) -> int:
        return self.dA + self.dB

    def is_A(self, i: int) -> bool:
        return i < self.dA

    def embed_BA(self, f: Cochain) -> Cochain:
        """C^n(B, A) -> C^n(V, V)."""
        if (f.src_dim, f.dst_dim) != (self.dB, self.dA):
            raise ValueError("expected a cochain from B to A")
        dA = self.dA
        return Cochain._raw(f.arity, self.dim, self.dim,
                            {(t, tuple(dA + x for x in ins), o): v for (t, ins, o), v in f.data.items()})

    def project(self, F: Cochain) -> Cochain:
        """p: keep pure-B inputs with A output, returned in C^n(B, A)."""
        dA = self.dA
        data = {(t, tuple(x - dA for x in ins), o): v for (t, ins, o), v in F.data.items()
                if o < dA and all(x >= dA for x in ins)}
        return Cochain._raw(F.arity, self.dB, self.dA, data)

    def in_a(self, F: Cochain) -> bool:
        dA = self.dA
        return all(o < dA and all(x >= dA for x in ins) for (_, ins, o) in F.data)

    def in_h(self, F: Cochain) -> bool:
        """A-output only from pure A inputs, B-output only from inputs containing B."""
        dA = self.dA
        for (_, ins, o) in F.data:
            pure_a = all(x < dA for x in ins)
            if pure_a != (o < dA):
                return False
        return True


class PiLambda:
    """pi_lambda on A (+) B: ⊣ -> (ab, x.b), ⊢ -> (ab, a.y), ⊥ -> (ab, lam xy)."""

    def __init__(self, b: BimodSpec, lam):
        self.bimodule = b
        self.lam = Fraction(lam)
        self.split = Split(b.dimA, b.dimB)
        self.cochain = pi_of(semidirect_unchecked(b, self.lam))

    def value(self, kind: BulletKind, u, v) -> tuple:
        return self.cochain.evaluate(tree_index(product_tree(kind)), [u, v])


def operator_cochain(P) -> Cochain:
    """A linear map P: B -> A as an element of C^1(B, A)."""
    return Cochain(1, P.src_dim, P.dst_dim,
                   {(0, (j,), i): P.entry(i, j) for i in range(P.dst_dim) for j in range(P.src_dim)})


def _require_a(split: Split, f: Cochain):
    if (f.src_dim, f.dst_dim) != (split.dB, split.dA):
        raise ValueError("cochain is not in C(B, A)")


def derived_bracket(pl: PiLambda, f: Cochain, g: Cochain) -> Cochain:
    """[[f, g]] = (-1)^m [[pi, f], g] projected to C(B, A), m = arity of f."""
    sp = pl.split
    _require_a(sp, f)
    _require_a(sp, g)
    inner = bracket(pl.cochain, sp.embed_BA(f))
    out = sp.project(bracket(inner, sp.embed_BA(g)))
    return out.scale(-1) if f.arity % 2 else out


def d_operator(pl: PiLambda, f: Cochain) -> Cochain:
    """Explicit d on C^n(B, A):
    (df)(T; x_1..x_{n+1}) = (-1)^(n-1) sum_i (-1)^(i-1) f(d_i T; .., pi(R_i^{n;i,2} T; x_i, x_{i+1}), ..).

    Only the corolla value lam xy of pi survives on B inputs.
    """
    sp = pl.split
    _require_a(sp, f)
    n = f.arity
    faces = _face_inverse(n + 1)
    corolla = tree_index(product_tree(BulletKind.PERP))
    hit = _corolla_slots(n)
    nu_by = _by_out(_sparse(pl.bimodule.nu))
    res: dict = defaultdict(Fraction)
    for (t, ins, out), c in f.data.items():
        for i in range(1, n + 1):
            s = pl.lam * (-1 if (n - 1 + i - 1) % 2 else 1)
            for T in faces[i].get(t, ()):
                if hit[T][i] != corolla:
                    continue
                for x, y, w in nu_by.get(ins[i - 1], ()):
                    res[(T, ins[:i - 1] + (x, y) + ins[i:], out)] += s * c * w
    return Cochain._raw(n + 1, sp.dB, sp.dA, res)


@lru_cache(maxsize=None)
def _corolla_slots(n: int) -> tuple:
    """_corolla_slots(n)[T][i] = index of R_i^{n;i,2}(T) in T_2, for T in T_{n+1}."""
    return tuple((None,) + tuple(tree_index(r_i(n, i, 2, T)) for i in range(1, n + 1))
                 for T in enumerate_trees(n + 1))


def d_operator_bracket(pl: PiLambda, f: Cochain) -> Cochain:
    """p(-[pi, f])."""
    sp = pl.split
    return sp.project(bracket(pl.cochain, sp.embed_BA(f))).scale(-1)


class OperatorData:
    """Cached pieces of (A, B, P, lam) used by d_P and the MC defect."""

    def __init__(self, s):
        self.s = s
        self.pl = PiLambda(s.bimodule, s.lam)
        self.P = operator_cochain(s.P)
        self.pi_P = bracket(self.pl.cochain, self.pl.split.embed_BA(self.P))

    def bracket_P(self, f: Cochain) -> Cochain:
        """[[P, f]] = -[[pi, P], f] projected."""
        sp = self.pl.split
        return sp.project(bracket(self.pi_P, sp.embed_BA(f))).scale(-1)

    def d_P(self, f: Cochain) -> Cochain:
        return d_operator(self.pl, f) + self.bracket_P(f)


def mc_operator(s) -> Cochain:
    """dP + 1/2 [[P, P]] in C^2(B, A)."""
    od = OperatorData(s)
    return d_operator(od.pl, od.P) + od.bracket_P(od.P).scale(HALF)


def d_P(s, f: Cochain, od: OperatorData | None = None) -> Cochain:
    """d_P(f) = df + [[P, f]]; requires P to be Maurer-Cartan."""
    od = od or OperatorData(s)
    if not mc_operator(s).is_zero():
        raise ValueError("P is not a Maurer-Cartan element")
    return od.d_P(f)


def operator_deformation_defect(s, P2) -> Cochain:
    """d_P(P') + 1/2 [[P', P']] for a second operator P'."""
    od = OperatorData(s)
    Q = operator_cochain(P2)
    return od.d_P(Q) + derived_bracket(od.pl, Q, Q).scale(HALF)
