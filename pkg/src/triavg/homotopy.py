"""Bounded graded homotopy structures: A-infinity algebras and representations,
Triass-infinity algebras, the diamond composition and its bracket, and
homotopy relative averaging operators.

A graded space is a tuple of degrees, one per basis vector.  An operation of
arity k is stored sparsely: bare operations as ``{(inputs, out): c}``,
tree-keyed ones as ``Cochain`` objects.  Every structure operation has
degree 1; operators P have degree 0.  Inserting an operation of degree e at
slot i costs the Koszul sign (-1)^(e (|x_1| + .. + |x_(i-1)|)).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .complexes import Cochain, circ
from .trees import BulletKind, distinguished, enumerate_trees, joints_table, tree_index

MAX_ARITY = 4
MAX_WINDOW = 4
MAX_EXP_TERMS = 8


def _check_window(degs):
    if degs and max(degs) - min(degs) + 1 > MAX_WINDOW:
        raise ValueError(f"degree window wider than {MAX_WINDOW}")


def koszul_prefix(degs, ins, i: int, e: int) -> int:
    """(-1)^(e * (|x_1| + .. + |x_(i-1)|)) for basis inputs ``ins``."""
    if e % 2 == 0:
        return 1
    s = sum(degs[x] for x in ins[:i - 1])
    return -1 if s % 2 else 1


@dataclass
class GradedSpec:
    """Operations {k: op} on a graded space; bare or tree-keyed."""

    degs: tuple
    ops: dict
    treed: bool = False
    degree: int = 1

    def __post_init__(self):
        self.degs = tuple(self.degs)
        _check_window(self.degs)
        n = len(self.degs)
        clean = {}
        for k, op in self.ops.items():
            if not 1 <= k <= MAX_ARITY:
                raise ValueError(f"arity {k} outside 1..{MAX_ARITY}")
            if self.treed:
                if not isinstance(op, Cochain):
                    op = Cochain(k, n, n, op)
                if op.arity != k or op.src_dim != n or op.dst_dim != n:
                    raise ValueError("tree-keyed operation has the wrong shape")
                items = ((ins, o, c) for (_, ins, o), c in op.data.items())
            else:
                op = {(tuple(ins), o): Fraction(c) for (ins, o), c in op.items() if c}
                for ins, o in op:
                    if len(ins) != k or not 0 <= o < n or any(not 0 <= x < n for x in ins):
                        raise ValueError(f"bad key {(ins, o)} for arity {k}")
                items = ((ins, o, c) for (ins, o), c in op.items())
            for ins, o, c in items:
                if self.degs[o] != sum(self.degs[x] for x in ins) + self.degree:
                    raise ValueError(f"operation of arity {k} breaks degree {self.degree} at {(ins, o)}")
            clean[k] = op
        self.ops = clean

    @property
    def dim(self) -> int:
        return len(self.degs)


def _bare_circ(f: dict, i: int, g: dict, degs, e: int) -> dict:
    """sum of sign * f(x_1.., g(x_i..), ..) for bare operations."""
    by_out = defaultdict(list)
    for (gins, go), c in g.items():
        by_out[go].append((gins, c))
    res: dict = defaultdict(Fraction)
    for (fins, fo), c in f.items():
        for gins, d in by_out.get(fins[i - 1], ()):
            s = koszul_prefix(degs, fins, i, e)
            res[(fins[:i - 1] + gins + fins[i:], fo)] += s * c * d
    return res


def _ainf_sum(spec: GradedSpec, n: int) -> dict:
    acc: dict = defaultdict(Fraction)
    for k, f in spec.ops.items():
        l = n + 1 - k
        g = spec.ops.get(l)
        if g is None or l < 1:
            continue
        for i in range(1, k + 1):
            for key, v in _bare_circ(f, i, g, spec.degs, spec.degree).items():
                acc[key] += v
    return {k: v for k, v in acc.items() if v}


@dataclass
class GradedReport:
    check: str
    violations: list = field(default_factory=list)
    subreports: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        return [f"n={n} {key} -> {v}" for n, key, v in self.violations]


def ainf_check(spec: GradedSpec, n_max: int = 4, keep=None) -> GradedReport:
    """The A-infinity identities for n = 1..n_max on all basis tuples."""
    if spec.treed:
        raise ValueError("ainf_check expects bare operations")
    if n_max > MAX_ARITY:
        raise ValueError(f"n_max is capped at {MAX_ARITY}")
    rep = GradedReport("ainf")
    for n in range(1, n_max + 1):
        for key, v in sorted(_ainf_sum(spec, n).items()):
            if keep is None or keep(key[0]):
                rep.violations.append((n, key, v))
    return rep


def combined_rep(a: GradedSpec, b_degs, nu: dict, eta: dict) -> GradedSpec:
    """A (+) B with mu on pure A, nu on pure B and eta on mixed inputs."""
    dA = a.dim
    arities = set(a.ops) | set(nu)
    missing = sorted(k for k in arities if k >= 2 and k not in eta)
    if missing:
        raise ValueError(f"missing eta components for arities {missing}")
    degs = a.degs + tuple(b_degs)
    ops: dict = {}
    for k in set(a.ops) | set(nu) | set(eta):
        op = {}
        for (ins, o), c in a.ops.get(k, {}).items():
            op[(tuple(ins), o)] = Fraction(c)
        for (ins, o), c in nu.get(k, {}).items():
            op[(tuple(dA + x for x in ins), dA + o)] = Fraction(c)
        for (ins, o), c in eta.get(k, {}).items():
            ins = tuple(ins)
            if all(x < dA for x in ins) or all(x >= dA for x in ins):
                raise ValueError("eta must be given on mixed inputs (A indices first, then B offset by dim A)")
            if o < dA:
                raise ValueError("eta takes values in B")
            op[(ins, o)] = Fraction(c)
        ops[k] = op
    return GradedSpec(degs, ops)


def ainf_rep_check(a: GradedSpec, b_degs, nu: dict, eta: dict, n_max: int = 4) -> GradedReport:
    """Identities with at least one B slot; eta keys use combined indices
    (A basis first, B basis offset by dim A), nu keys use B indices."""
    dA = a.dim
    comb = combined_rep(a, b_degs, nu, eta)
    rep = ainf_check(comb, n_max, keep=lambda ins: any(x >= dA for x in ins))
    rep.check = "ainf_rep"
    return rep


def adjoint_rep(a: GradedSpec):
    """eta_k = mu_k on A (+) A with the second copy as B."""
    dA = a.dim
    nu, eta = {}, {}
    for k, op in a.ops.items():
        nu[k] = dict(op)
        e = {}
        for (ins, o), c in op.items():
            for mask in range(1, 2 ** k - 1):
                lifted = tuple(x + dA * ((mask >> j) & 1) for j, x in enumerate(ins))
                e[(lifted, dA + o)] = c
        eta[k] = e
    return a.degs, nu, eta


# -- tree-keyed operations ------------------------------------------------------------

def diamond(pk: Cochain, wl: Cochain, degs, w_degree: int) -> Cochain:
    """(pi_k ⋄ varpi_l)(T; x) = sum_i sign pi_k(R_0 T; .., varpi_l(R_i T; x_i..), ..)."""
    acc = None
    for i in range(1, pk.arity + 1):
        term = circ(pk, i, wl, sign=lambda fins, i=i: koszul_prefix(degs, fins, i, w_degree))
        acc = term if acc is None else acc + term
    return acc


def _add_into(acc: dict, k: int, c: Cochain, coef=1):
    if c.is_zero():
        return
    c = c if coef == 1 else c.scale(coef)
    acc[k] = acc[k] + c if k in acc else c


def big_bracket(pi: dict, m: int, varpi: dict, n: int, degs, max_arity: int = MAX_ARITY) -> dict:
    """{![pi, varpi]!} = sum pi_k ⋄ varpi_l - (-1)^(mn) varpi_l ⋄ pi_k, arities <= max_arity."""
    acc: dict = {}
    s = -1 if (m * n) % 2 else 1
    for k, pk in pi.items():
        for l, wl in varpi.items():
            r = k + l - 1
            if r > max_arity:
                continue
            _add_into(acc, r, diamond(pk, wl, degs, n))
            _add_into(acc, r, diamond(wl, pk, degs, m), -s)
    return {k: v for k, v in acc.items() if not v.is_zero()}


def triassinf_check(spec: GradedSpec, n_max: int = 4) -> GradedReport:
    """pi ⋄ pi = 0 arity by arity (that is, 1/2 {![pi, pi]!} = 0), over all trees;
    sub-report 'diass' restricts to binary trees."""
    if not spec.treed:
        raise ValueError("triassinf_check expects tree-keyed operations")
    if n_max > MAX_ARITY:
        raise ValueError(f"n_max is capped at {MAX_ARITY}")
    from .trees import binary_mask
    rep = GradedReport("triassinf")
    diass = GradedReport("diass_inf")
    sums: dict = {}
    for k, pk in spec.ops.items():
        for l, pl in spec.ops.items():
            r = k + l - 1
            if r <= n_max:
                _add_into(sums, r, diamond(pk, pl, spec.degs, spec.degree))
    for r in sorted(sums):
        mask = binary_mask(r)
        for (t, ins, o), v in sorted(sums[r].data.items()):
            rep.violations.append((r, (t, ins, o), v))
            if mask[t]:
                diass.violations.append((r, (t, ins, o), v))
    rep.subreports["diass"] = diass
    return rep


def restrict_distinguished(spec: GradedSpec, kind: BulletKind) -> GradedSpec:
    """pi_k restricted to the distinguished tree of each arity, as bare operations."""
    ops = {}
    for k, pk in spec.ops.items():
        t = tree_index(distinguished(k, kind))
        ops[k] = {(ins, o): c for (tt, ins, o), c in pk.data.items() if tt == t}
    return GradedSpec(spec.degs, ops, degree=spec.degree)


def tree_lift(bare: dict, k: int, dA: int, dim: int, lam) -> Cochain:
    """Spread a bare operation on A (+) B over T_k: A-outputs on every tree,
    B-outputs lam^(l-2) times the value on inputs whose B slots are the joints of T."""
    lam = Fraction(lam)
    data: dict = defaultdict(Fraction)
    joints = joints_table(k)
    for (ins, o), c in bare.items():
        if o < dA:
            if any(x >= dA for x in ins):
                continue
            for t in range(len(enumerate_trees(k))):
                data[(t, ins, o)] += c
            continue
        bslots = {j for j, x in enumerate(ins, 1) if x >= dA}
        for t, J in enumerate(joints):
            if len(J) + 1 < 2:
                raise ValueError("trees must have at least two grafting factors")
            if set(J) == bslots:
                data[(t, ins, o)] += c * lam ** (len(J) - 1)
    return Cochain(k, dim, dim, data)


def induced_triassinf(a: GradedSpec, b_degs, nu: dict, eta: dict, lam) -> GradedSpec:
    """pi_k(T; (a_i, x_i)) = (mu_k(a_1..a_k), lam^(l-2) (eta_k + nu_k)(a_1.., x_(i_1), .., a_k))
    with B arguments exactly at the joints of T = T^1 v .. v T^l."""
    lam = Fraction(lam)
    if lam == 0:
        raise ValueError("weight must be nonzero")
    comb = combined_rep(a, b_degs, nu, eta)
    ops = {k: tree_lift(op, k, a.dim, comb.dim, lam) for k, op in comb.ops.items()}
    return GradedSpec(comb.degs, ops, treed=True)


# -- homotopy relative averaging operators ----------------------------------------------

@dataclass
class HomotopyOperator:
    """P = sum_k P_k with P_k: K[T_k] (x) B^k -> A of degree 0; keys (tree, B inputs, A output)."""

    components: dict

    def embed(self, dA: int, dB: int, degs) -> dict:
        n = dA + dB
        out = {}
        for k, comp in self.components.items():
            data = {}
            for (t, ins, o), c in (comp.data.items() if isinstance(comp, Cochain) else comp.items()):
                data[(t, tuple(dA + x for x in ins), o)] = Fraction(c)
            c = Cochain(k, n, n, data)
            for (_, ins, o), _v in c.data.items():
                if degs[o] != sum(degs[x] for x in ins):
                    raise ValueError("P components must have degree 0")
            out[k] = c
        return out


@dataclass
class HomotopyResult:
    defect: dict
    induced: GradedSpec | None
    terms: int

    @property
    def ok(self) -> bool:
        return all(c.is_zero() for c in self.defect.values())


def exp_action(pi: dict, P: dict, degs, max_arity: int = MAX_ARITY) -> tuple[dict, int]:
    """e^{![-, P]!} pi = sum_j 1/j! {![..{![pi, P]!}.., P]!}, arities <= max_arity."""
    total = {k: v for k, v in pi.items()}
    term = pi
    for j in range(1, MAX_EXP_TERMS + 1):
        term = big_bracket(term, 1, P, 0, degs, max_arity)
        if not term:
            return total, j
        for k, c in term.items():
            _add_into(total, k, c, Fraction(1, _fact(j)))
    raise ArithmeticError("exponential series did not terminate within the iteration bound")


def _fact(j):
    out = 1
    for i in range(2, j + 1):
        out *= i
    return out


def homotopy_operator_check(a: GradedSpec, b_degs, nu, eta, lam, P: HomotopyOperator,
                            max_arity: int = MAX_ARITY) -> HomotopyResult:
    """p(e^{![-, P]!} pi) for the induced Triass-infinity pi on A (+) B, through arity max_arity.
    When it vanishes the restriction to B gives the induced Triass-infinity structure on B."""
    pi_spec = induced_triassinf(a, b_degs, nu, eta, lam)
    dA, dB = a.dim, len(b_degs)
    degs = pi_spec.degs
    Pemb = P.embed(dA, dB, degs)
    total, nterms = exp_action(pi_spec.ops, Pemb, degs, max_arity)
    defect, induced = {}, {}
    for k, c in total.items():
        d_data, i_data = {}, {}
        for (t, ins, o), v in c.data.items():
            if all(x >= dA for x in ins):
                if o < dA:
                    d_data[(t, tuple(x - dA for x in ins), o)] = v
                else:
                    i_data[(t, tuple(x - dA for x in ins), o - dA)] = v
        defect[k] = Cochain(k, dB, dA, d_data)
        induced[k] = Cochain(k, dB, dB, i_data)
    ok = all(c.is_zero() for c in defect.values())
    spec = GradedSpec(tuple(b_degs), induced, treed=True) if ok else None
    return HomotopyResult(defect, spec, nterms)


# -- strict structures as graded ones ------------------------------------------------------

def strict_ainf(mu) -> GradedSpec:
    """An associative algebra concentrated in degree -1 (only mu_2)."""
    n = len(mu)
    ops = {2: {((i, j), k): v for i in range(n) for j in range(n) for k, v in enumerate(mu[i][j]) if v}}
    return GradedSpec((-1,) * n, ops)


def strict_rep(b):
    """(degrees, nu, eta) for a bimodule concentrated in degree -1."""
    dA, dB = b.dimA, b.dimB
    nu = {2: {((i, j), k): v for i in range(dB) for j in range(dB) for k, v in enumerate(b.nu[i][j]) if v}}
    eta = {}
    for i in range(dA):
        for j in range(dB):
            for k, v in enumerate(b.l[i][j]):
                if v:
                    eta[((i, dA + j), dA + k)] = v
    for i in range(dB):
        for j in range(dA):
            for k, v in enumerate(b.r[i][j]):
                if v:
                    eta[((dA + i, j), dA + k)] = v
    return (-1,) * dB, nu, {2: eta}


def strict_triass(d) -> GradedSpec:
    """A triassociative algebra concentrated in degree -1 as tree-keyed pi_2."""
    from .complexes import pi_of
    return GradedSpec((-1,) * d.dim, {2: pi_of(d)}, treed=True)


def strict_operator(P) -> HomotopyOperator:
    return HomotopyOperator({1: {(0, (j,), i): P.entry(i, j)
                                 for i in range(P.dst_dim) for j in range(P.src_dim) if P.entry(i, j)}})


def interval_algebra() -> GradedSpec:
    """Cochains on an interval, shifted: idempotents e1, e2 in degree -1, u in degree 0,
    d e1 = u, d e2 = -u, e1 u = u = u e2 (signs fixed by the A-infinity identities)."""
    degs = (-1, -1, 0)
    m1 = {((0,), 2): 1, ((1,), 2): -1}
    m2 = {((0, 0), 0): 1, ((1, 1), 1): 1, ((0, 2), 2): 1, ((2, 1), 2): -1}
    return GradedSpec(degs, {1: m1, 2: m2})
