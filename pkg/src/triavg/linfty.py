"""The L-infinity algebra on s^-1 h (+) a built from V-data with Delta = 0.

g = (+) C^(n+1)(V, V) for V = A (+) B, a = (+) C^(n+1)(B, A) (abelian),
p the projection onto a, and h the subalgebra of cochains sending pure-A
inputs to A and anything with a B input to B.  An h-cochain of arity m has
bracket degree m-1 and sits in L-degree m-2 after desuspension; an
a-cochain of arity m has L-degree m-1.

Nonzero structure maps (up to graded-symmetric reordering):
  l_2(s^-1 x, s^-1 y)        = ((-1)^|x| s^-1 [x, y], 0)
  l_k(s^-1 x, a_1..a_(k-1))  = (0, p[..[x, a_1].., a_(k-1)])
  l_1(s^-1 x, a)             = (0, p(x))
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from itertools import combinations
from math import factorial

from .complexes import Cochain, PiLambda, Split, bracket, operator_cochain
from .trees import enumerate_trees, joints_table

MAX_TERMS = 12


class LInfElement:
    """A finite sum of homogeneous pieces (s^-1 x, a)."""

    __slots__ = ("split", "h", "a")

    def __init__(self, split: Split, h=None, a=None):
        self.split = split
        self.h = {m: c for m, c in (h or {}).items() if not c.is_zero()}
        self.a = {m: c for m, c in (a or {}).items() if not c.is_zero()}
        for m, c in self.h.items():
            if c.arity != m or c.src_dim != split.dim or c.dst_dim != split.dim:
                raise ValueError("h-part must be cochains on A (+) B keyed by arity")
            if not split.in_h(c):
                raise ValueError("h-part leaves the subalgebra h")
        for m, c in self.a.items():
            if c.arity != m or (c.src_dim, c.dst_dim) != (split.dB, split.dA):
                raise ValueError("a-part must be cochains from B to A keyed by arity")

    @classmethod
    def zero(cls, split):
        return cls(split)

    def pieces(self):
        """(kind, L-degree, cochain) for each homogeneous piece."""
        out = [("h", m - 2, c) for m, c in sorted(self.h.items())]
        out += [("a", m - 1, c) for m, c in sorted(self.a.items())]
        return out

    def __add__(self, other):
        h = dict(self.h)
        for m, c in other.h.items():
            h[m] = h[m] + c if m in h else c
        a = dict(self.a)
        for m, c in other.a.items():
            a[m] = a[m] + c if m in a else c
        return LInfElement(self.split, h, a)

    def scale(self, c):
        return LInfElement(self.split, {m: x.scale(c) for m, x in self.h.items()},
                           {m: x.scale(c) for m, x in self.a.items()})

    def __sub__(self, other):
        return self + other.scale(-1)

    def is_zero(self) -> bool:
        return not self.h and not self.a

    def __eq__(self, other):
        return isinstance(other, LInfElement) and self.h == other.h and self.a == other.a

    def __repr__(self):
        return f"LInfElement(h arities {sorted(self.h)}, a arities {sorted(self.a)})"

    def degrees(self) -> set:
        return {d for _, d, _ in self.pieces()}


class VData:
    """(g, a, p, Delta = 0) on V = A (+) B."""

    def __init__(self, dA: int, dB: int):
        self.split = Split(dA, dB)

    def p(self, x: Cochain) -> Cochain:
        return self.split.project(x)

    def kernel_closed(self, x: Cochain, y: Cochain) -> bool:
        """Spot check: p x = p y = 0 implies p [x, y] = 0."""
        if not self.p(x).is_zero() or not self.p(y).is_zero():
            raise ValueError("inputs must lie in ker p")
        return self.p(bracket(x, y)).is_zero()

    def h_elem(self, x: Cochain) -> LInfElement:
        return LInfElement(self.split, {x.arity: x})

    def a_elem(self, a: Cochain) -> LInfElement:
        return LInfElement(self.split, a={a.arity: a})

    def lk(self, args) -> LInfElement:
        """l_k(args) by multilinear expansion into homogeneous pieces."""
        k = len(args)
        if k == 0:
            raise ValueError("l_0 is not defined")
        acc = LInfElement.zero(self.split)
        expanded = [a.pieces() for a in args]

        def rec(i, chosen):
            nonlocal acc
            if i == k:
                r = self._lk_pieces(chosen)
                if r is not None:
                    acc = acc + r
                return
            for pc in expanded[i]:
                rec(i + 1, chosen + [pc])

        rec(0, [])
        return acc

    def _lk_pieces(self, pcs) -> LInfElement | None:
        sp = self.split
        hs = [i for i, (kind, _, _) in enumerate(pcs) if kind == "h"]
        k = len(pcs)
        if len(hs) == 2 and k == 2:
            (_, dx, x), (_, _, y) = pcs
            b = bracket(x, y)
            if b.is_zero():
                return None
            # |x| = bracket degree = L-degree + 1
            sign = -1 if (dx + 1) % 2 else 1
            return LInfElement(sp, {b.arity: b.scale(sign)})
        if len(hs) != 1:
            return None
        j = hs[0]
        _, dh, x = pcs[j]
        before = sum(d for _, d, _ in pcs[:j])
        sign = -1 if (dh * before) % 2 else 1
        if k == 1:
            px = sp.project(x)
            return None if px.is_zero() else LInfElement(sp, a={px.arity: px})
        cur = x
        for i, (_, _, a) in enumerate(pcs):
            if i == j:
                continue
            cur = bracket(cur, sp.embed_BA(a))
            if cur.is_zero():
                return None
        out = sp.project(cur)
        if out.is_zero():
            return None
        return LInfElement(sp, a={out.arity: out.scale(sign)})


# -- the Maurer-Cartan element of a relative averaging algebra ------------------------

def mc_element(s) -> tuple[VData, LInfElement]:
    """alpha = (s^-1 pi_lambda, P)."""
    pl = PiLambda(s.bimodule, s.lam)
    v = VData(s.dimA, s.dimB)
    return v, LInfElement(v.split, {2: pl.cochain}, {1: operator_cochain(s.P)})


def mc_element_of(b, P, lam) -> tuple[VData, LInfElement]:
    """(s^-1 pi_lambda, P) for arbitrary (possibly invalid) data."""
    pl = PiLambda(b, lam)
    v = VData(b.dimA, b.dimB)
    return v, LInfElement(v.split, {2: pl.cochain}, {1: operator_cochain(P)})


def _input_bound(*xs) -> int:
    """l_k vanishes for k > m + 2 once every h-piece has arity <= m: a bracket
    needs one h-piece and each a-piece fills one of its m + 1 A-slots."""
    return max((m for x in xs for m in x.h), default=0) + 2


def mc_sum(v: VData, alpha: LInfElement, max_terms: int = MAX_TERMS) -> LInfElement:
    """sum_k 1/k! l_k(alpha, .., alpha); errors if the series is too long."""
    top = _input_bound(alpha)
    if top > max_terms:
        raise ArithmeticError("Maurer-Cartan series exceeds max_terms")
    acc = LInfElement.zero(v.split)
    for k in range(1, top + 1):
        acc = acc + v.lk([alpha] * k).scale(Fraction(1, factorial(k)))
    return acc


def mc_pair_check(s) -> LInfElement:
    """The MC defect of (s^-1 pi_lambda, P): (-1/2 s^-1 [pi, pi], p[pi, P] + 1/2 p[[pi, P], P])."""
    v, alpha = mc_element_of(s.bimodule, s.P, s.lam)
    return mc_sum(v, alpha)


class Twisted:
    """l^alpha_k(x_1..x_k) = sum_n 1/n! l_(n+k)(alpha^n, x_1..x_k)."""

    def __init__(self, v: VData, alpha: LInfElement, check_mc: bool = True, max_terms: int = MAX_TERMS):
        self.v, self.alpha, self.max_terms = v, alpha, max_terms
        if check_mc and not mc_sum(v, alpha, max_terms).is_zero():
            raise ValueError("twisting element is not Maurer-Cartan")

    def lk(self, args) -> LInfElement:
        args = list(args)
        top = _input_bound(self.alpha, *args) - len(args)
        if top > self.max_terms:
            raise ArithmeticError("twisted structure map exceeds max_terms")
        acc = LInfElement.zero(self.v.split)
        for n in range(0, top + 1):
            acc = acc + self.v.lk([self.alpha] * n + args).scale(Fraction(1, factorial(n)))
        return acc

    def mc_sum(self, x: LInfElement) -> LInfElement:
        top = _input_bound(self.alpha, x)
        acc = LInfElement.zero(self.v.split)
        for k in range(1, top + 1):
            acc = acc + self.lk([x] * k).scale(Fraction(1, factorial(k)))
        return acc


def twist(v: VData, alpha: LInfElement, **kw) -> Twisted:
    return Twisted(v, alpha, **kw)


# -- higher Jacobi identities ---------------------------------------------------------

def _koszul(degs, order) -> int:
    """Sign of reordering homogeneous elements with the given degrees into ``order``."""
    sign = 1
    seq = list(order)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j] and degs[seq[i]] % 2 and degs[seq[j]] % 2:
                sign = -sign
    return sign


def shuffles(n: int, i: int):
    """Sh(i, n-i) in lexicographic order of the first block."""
    for first in combinations(range(n), i):
        rest = tuple(x for x in range(n) if x not in first)
        yield first + rest


def jacobi_sum(lk, xs, degs) -> LInfElement:
    """sum_{i+j=n+1} sum_sigma eps(sigma) l_j(l_i(x_sigma(1..i)), x_sigma(i+1..n))."""
    n = len(xs)
    acc = None
    for i in range(1, n + 1):
        for sigma in shuffles(n, i):
            eps = _koszul(degs, sigma)
            inner = lk([xs[t] for t in sigma[:i]])
            if inner.is_zero():
                continue
            term = lk([inner] + [xs[t] for t in sigma[i:]])
            if eps < 0:
                term = term.scale(-1)
            acc = term if acc is None else acc + term
    return acc if acc is not None else LInfElement.zero(xs[0].split)


def higher_jacobi_check(v: VData, samples, n_max: int = 4, lk=None) -> list[tuple]:
    """Evaluate the n-ary Jacobi sums on homogeneous sample tuples.

    Returns (n, tuple index) for every failing tuple.
    """
    if n_max > 4:
        raise ValueError("n_max is capped at 4")
    lk = lk or v.lk
    bad = []
    for idx, xs in enumerate(samples):
        if len(xs) > n_max:
            continue
        degs = []
        for x in xs:
            ds = x.degrees()
            if len(ds) != 1:
                raise ValueError("samples must be homogeneous")
            degs.append(ds.pop())
        if not jacobi_sum(lk, xs, degs).is_zero():
            bad.append((len(xs), idx))
    return bad


def random_h(v: VData, rng, m: int, nterms: int = 3) -> LInfElement:
    """A random homogeneous element of s^-1 h of arity m (L-degree m - 2)."""
    sp = v.split
    keys = [k for k in _split_keys(sp, m)]
    nt = len(enumerate_trees(m))
    data: dict = {}
    for _ in range(nterms):
        ins, o = rng.choice(keys)
        data[(rng.randrange(nt), ins, o)] = Fraction(rng.choice((-2, -1, 1, 2)))
    return LInfElement(sp, {m: Cochain(m, sp.dim, sp.dim, data)})


def random_a(v: VData, rng, m: int, nterms: int = 2) -> LInfElement:
    """A random homogeneous element of a of arity m (L-degree m - 1)."""
    sp = v.split
    nt = len(enumerate_trees(m))
    data: dict = {}
    for _ in range(nterms):
        ins = tuple(rng.randrange(sp.dB) for _ in range(m))
        data[(rng.randrange(nt), ins, rng.randrange(sp.dA))] = Fraction(rng.choice((-2, -1, 1, 2)))
    return LInfElement(sp, a={m: Cochain(m, sp.dB, sp.dA, data)})


def _split_keys(sp: Split, m: int):
    from itertools import product
    dA = sp.dA
    for ins in product(range(sp.dim), repeat=m):
        outs = range(dA) if all(x < dA for x in ins) else range(dA, sp.dim)
        for o in outs:
            yield ins, o


def jacobi_samples(v: VData, rng, per_n: int = 8, n_max: int = 4) -> list[list[LInfElement]]:
    """Tuples of homogeneous elements of arity 1 or 2, for n = 2..n_max."""
    gens = [lambda: random_h(v, rng, 1), lambda: random_h(v, rng, 2),
            lambda: random_a(v, rng, 1), lambda: random_a(v, rng, 2)]
    return [[rng.choice(gens)() for _ in range(n)] for n in range(2, n_max + 1) for _ in range(per_n)]


# -- bridge to the relative averaging complex -------------------------------------------

def embed_packed(s, n: int, F: dict) -> Cochain:
    """pi_(f,g,h): A-output f(a_1..a_n) on every tree; B-output
    lam^(k-2) (g+h) with B-arguments at the joints of T and A-arguments elsewhere."""
    sp = Split(s.dimA, s.dimB)
    dA = sp.dA
    joints = joints_table(n)
    data: dict = defaultdict(Fraction)
    for (ins, o), c in F.items():
        ins = tuple(ins)
        if o < dA:
            for t in range(len(enumerate_trees(n))):
                data[(t, ins, o)] += c
            continue
        bslots = {j for j, x in enumerate(ins, 1) if x >= dA}
        for t, J in enumerate(joints):
            if set(J) == bslots:
                data[(t, ins, o)] += c * s.lam ** (len(J) - 1)
    return Cochain(n, sp.dim, sp.dim, data)


def unembed_packed(s, x: Cochain) -> dict:
    """Inverse of embed_packed; raises if x is not in the image."""
    dA = s.dimA
    n = x.arity
    joints = joints_table(n)
    F: dict = {}
    for (t, ins, o), c in x.data.items():
        if o < dA:
            key = (ins, o)
        else:
            bslots = {j for j, y in enumerate(ins, 1) if y >= dA}
            if set(joints[t]) != bslots:
                raise ValueError("cochain is not in the image of the packing map")
            key = (ins, o)
            c = c / s.lam ** (len(joints[t]) - 1)
        if key in F and F[key] != c:
            raise ValueError("cochain is not in the image of the packing map")
        F[key] = c
    if embed_packed(s, n, F) != x:
        raise ValueError("cochain is not in the image of the packing map")
    return F


def ravg_delta_via_linfty(s, n: int, F: dict, gamma: Cochain | None = None, tw: Twisted | None = None):
    """delta_rAvg through the twisted l_1:
    degree 1: -l_1^alpha(s^-1(f+g), 0); degree n >= 2: (-1)^(n-2) l_1^alpha(s^-1 pi_(f,g,h), gamma).
    Returns (packed F', gamma')."""
    if tw is None:
        v, alpha = mc_element(s)
        tw = Twisted(v, alpha)
    sp = tw.v.split
    x = embed_packed(s, n, F)
    a = {gamma.arity: gamma} if gamma is not None else {}
    elem = LInfElement(sp, {n: x} if not x.is_zero() else {}, a)
    out = tw.lk([elem])
    sign = -1 if n == 1 or n % 2 else 1
    out = out.scale(sign)
    if set(out.h) - {n + 1} or set(out.a) - {n}:
        raise AssertionError("twisted l_1 left the expected degree")
    Fp = unembed_packed(s, out.h[n + 1]) if n + 1 in out.h else {}
    gp = out.a.get(n, Cochain.zero(n, s.dimB, s.dimA))
    return Fp, gp


_TW_CACHE: dict = {}


def ravg_delta_degree_one(s, key) -> dict:
    """Degree-1 differential of a single basis key ("F", ins, out), in complex keys."""
    tw = _TW_CACHE.get(id(s))
    if tw is None or tw[0] is not s:
        v, alpha = mc_element(s)
        tw = (s, Twisted(v, alpha))
        _TW_CACHE.clear()
        _TW_CACHE[id(s)] = tw
    _, ins, o = key
    Fp, gp = ravg_delta_via_linfty(s, 1, {(ins, o): Fraction(1)}, tw=tw[1])
    out = {("F",) + k: v for k, v in Fp.items() if v}
    for (t, xs, a), v in gp.data.items():
        out[("G", t, xs, a)] = v
    return out
