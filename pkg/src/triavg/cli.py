"""Command-line front end.

Exit status: 0 when every check passes, 1 when a check finds a violation,
2 for usage, file-format or input errors.  ``--format machine`` prints one
``STATUS | module | check | witness`` line per record.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from . import formats
from .exactla import fmt

MAX_TREE_ARITY = 6


class Output:
    def __init__(self, mode: str, stream=None):
        self.mode = mode
        self.stream = stream or sys.stdout
        self.failed = False

    def _emit(self, s: str):
        print(s, file=self.stream)

    def record(self, ok: bool, module: str, check: str, witness: str = "-", detail=()):
        """One verdict; ``detail`` holds violation lines shown in both modes."""
        status = "PASS" if ok else "FAIL"
        self.failed |= not ok
        if self.mode == "machine":
            if ok or not detail:
                self._emit(f"{status} | {module} | {check} | {witness}")
            for d in detail:
                self._emit(f"{status} | {module} | {check} | {d}")
        else:
            self._emit(f"{status} {module} {check}" + ("" if witness == "-" else f": {witness}"))
            for d in detail:
                self._emit("  " + d)

    def report(self, module: str, check: str, rep, witness: str = "-"):
        self.record(rep.ok, module, check, witness, rep.lines())
        for name, sub in getattr(rep, "subreports", {}).items():
            self.record(sub.ok, module, f"{check}/{name}", witness, sub.lines())

    def info(self, module: str, check: str, text: str):
        for line in text.splitlines() or [""]:
            self._emit(f"INFO | {module} | {check} | {line}" if self.mode == "machine" else line)


# -- helpers -----------------------------------------------------------------------

def _load(path):
    return formats.load(path)


def _weight(args):
    return Fraction(args.weight) if getattr(args, "weight", None) is not None else None


def _ravg(args, f=None):
    """A relative averaging spec from a file; an operator on A alone is read on
    the adjoint bimodule."""
    from .fixtures import as_relative
    f = f or _load(args.file)
    if f.bimodule is not None:
        return f.ravg(_weight(args))
    return as_relative(*f.averaging(_weight(args)))


def _degrees(spec: str) -> tuple:
    if ":" in spec:
        lo, hi = spec.split(":")
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(int(x) for x in spec.split(","))


def _alg_text(f) -> str:
    return formats.dumps(f).rstrip("\n")


# -- trees -------------------------------------------------------------------------

def cmd_trees(args, out: Output):
    from .trees import bullet, enumerate_trees, face, joints, parse, tree_index
    if args.action == "enumerate":
        n = int(args.arg)
        if not 0 <= n <= MAX_TREE_ARITY:
            raise ValueError(f"arity must be between 0 and {MAX_TREE_ARITY}")
        ts = enumerate_trees(n)
        out.info("trees", "enumerate", "\n".join(f"{i} {t.encode()}" for i, t in enumerate(ts)))
        out.info("trees", "count", f"|T_{n}| = {len(ts)}")
        return
    t = parse(args.arg)
    n = t.arity
    if args.action == "face":
        if args.i is None:
            raise ValueError("face needs a leaf index")
        i = int(args.i)
        if not 0 <= i <= n:
            raise ValueError(f"leaf index must be between 0 and {n}")
        out.info("trees", "face", face(t, i).encode())
        return
    lines = [f"arity {n}", f"index {tree_index(t)}",
             "joints " + " ".join(map(str, joints(t))),
             "slots " + " ".join(f"{i}:{bullet(t, i)}" for i in range(1, n + 1))]
    out.info("trees", "classify", "\n".join(lines))


# -- check -------------------------------------------------------------------------

def cmd_check(args, out: Output):
    from .algebras import check_assoc, check_bimodule, check_triass
    from .operators import check_averaging, check_relative_averaging
    f = _load(args.file)
    kind = args.kind
    if kind == "assoc":
        f.need("assoc")
        out.report("algebras", "assoc", check_assoc(f.assoc), args.file)
    elif kind == "bimodule":
        f.need("bimodule")
        out.report("algebras", "assoc", check_assoc(f.assoc), args.file)
        out.report("algebras", "bimodule", check_bimodule(f.bimodule), args.file)
    elif kind == "triass":
        f.need("triass")
        out.report("algebras", "triass", check_triass(f.triass), args.file)
    elif kind == "averaging":
        a, P, lam = f.averaging(_weight(args))
        out.report("algebras", "assoc", check_assoc(a), args.file)
        out.report("operators", "averaging", check_averaging(a, P, lam), args.file)
    else:
        s = _ravg(args, f)
        out.report("algebras", "bimodule", check_bimodule(s.bimodule), args.file)
        out.report("operators", "relative", check_relative_averaging(s), args.file)


# -- induce --------------------------------------------------------------------------

def cmd_induce(args, out: Output):
    from .algebras import (check_triass, check_tridendriform, induced_tridendriform,
                           sparse3, triass_to_ravg)
    from .operators import RAvgSpec, check_relative_averaging, induced_triass
    f = _load(args.file)
    if args.kind == "triass":
        s = _ravg(args, f)
        rep = check_relative_averaging(s)
        out.report("operators", "relative", rep, args.file)
        if not rep.ok:
            return
        d = induced_triass(s)
        out.info("operators", "induced", _alg_text(formats.from_triass(d)))
        out.report("algebras", "triass", check_triass(d))
    elif args.kind == "tridend":
        f.need("triass")
        t = induced_tridendriform(f.triass)
        lines = [f"{name} {i} {j} {k} {fmt(v)}" for name in ("prec", "succ", "curly")
                 for (i, j, k), v in sorted(sparse3(getattr(t, name)).items())]
        out.info("algebras", "induced", "\n".join([f"dims D={t.dim}"] + lines))
        out.report("algebras", "tridendriform", check_tridendriform(t))
    else:
        f.need("triass")
        b, q = triass_to_ravg(f.triass)
        s = RAvgSpec(b, q, 1)
        out.info("algebras", "induced", _alg_text(formats.from_ravg(s)))
        out.report("operators", "relative", check_relative_averaging(s))


# -- cohomology ------------------------------------------------------------------------

def cmd_cohomology(args, out: Output):
    from . import cohomology as co
    f = _load(args.file)
    kind = args.kind
    if kind == "triass":
        f.need("triass")
        cx = co.triass_complex(f.triass)
    elif kind == "averaging":
        cx = co.avg_complex(*f.averaging(_weight(args)))
    elif kind == "operator":
        cx = co.operator_complex(_ravg(args, f))
    elif kind == "assact":
        f.need("bimodule")
        cx = co.assact_complex(f.bimodule)
    else:
        cx = co.ravg_complex(_ravg(args, f))
    degs = args.degree
    for n in degs:
        if not 1 <= n <= co.MAX_DEGREE:
            raise ValueError(f"degree must be between 1 and {co.MAX_DEGREE}")
    reps = [cx.betti(n) for n in degs]
    out.info("cohomology", kind, co.format_table(reps))
    if args.reps:
        for r in reps:
            for j, v in enumerate(r.representatives):
                out.info("cohomology", f"H{r.degree} rep {j}", co.dump_representative(v))
    sq = all(cx.square_is_zero(n) for n in degs if n + 2 <= cx.max_degree)
    out.record(sq, "cohomology", f"{kind} d^2=0")


def cmd_les(args, out: Output):
    from .cohomology import MAX_DEGREE, long_exact_check
    s = _ravg(args)
    degs = args.range
    if min(degs) < 1 or max(degs) >= MAX_DEGREE + 1:
        raise ValueError(f"range must lie in 1:{MAX_DEGREE}")
    rep = long_exact_check(s, degs)
    for node, line in zip(rep.nodes, rep.lines()):
        out.record(node.exact, "cohomology", "les", line)


# -- deformations -------------------------------------------------------------------------

def cmd_deform(args, out: Output):
    from . import cohomology as co
    s = _ravg(args)
    cx = co.RAvgComplex(s)
    if args.action == "classify":
        b = cx.betti(2)
        out.info("cohomology", "deform", f"dim H^2 = {b.dim_H}")
        for j, v in enumerate(b.representatives):
            out.info("cohomology", f"class {j}", co.dump_representative(v))
        return
    if not args.direction:
        raise ValueError("deform check needs a direction file")
    g = _load(args.direction)
    g.need("assoc", "bimodule", "P")
    if (g.assoc.dim, g.bimodule.dimB) != (s.dimA, s.dimB):
        raise ValueError("direction has different dimensions from the structure")
    d = (g.assoc.mu, g.bimodule.nu, g.bimodule.l, g.bimodule.r, g.P)
    r = co.check_infinitesimal(s, d, cx)
    cls = "-" if r.cohomology_class is None else "(" + ",".join(fmt(x) for x in r.cohomology_class) + ")"
    out.record(r.is_deformation, "cohomology", "deformation mod t^2", args.direction)
    out.record(r.is_cocycle, "cohomology", "2-cocycle", f"class {cls}")
    out.record(r.agree, "cohomology", "deformation iff cocycle")


# -- Maurer-Cartan ----------------------------------------------------------------------------

def cmd_mc(args, out: Output):
    from .complexes import mc_operator
    from .linfty import mc_pair_check
    from .operators import check_relative_averaging
    s = _ravg(args)
    direct = check_relative_averaging(s).ok
    if args.kind == "operator":
        defect = mc_operator(s)
        out.record(defect.is_zero(), "complexes", "dP + 1/2 [P,P] = 0", "-",
                   [] if defect.is_zero() else defect.dump().splitlines())
        zero = defect.is_zero()
    else:
        defect = mc_pair_check(s)
        zero = defect.is_zero()
        detail = []
        for k, c in sorted(defect.h.items()):
            detail += [f"h{k} {line}" for line in c.dump().splitlines()]
        for k, c in sorted(defect.a.items()):
            detail += [f"a{k} {line}" for line in c.dump().splitlines()]
        out.record(zero, "linfty", "sum 1/k! l_k(alpha..) = 0", "-", detail)
    out.record(zero == direct, "operators", "agrees with direct check",
               f"direct={'pass' if direct else 'fail'}")


def cmd_linf(args, out: Output):
    from .linfty import Twisted, higher_jacobi_check, jacobi_samples, mc_element, mc_sum
    s = _ravg(args)
    v, alpha = mc_element(s)
    rng = random.Random(args.seed)
    samples = jacobi_samples(v, rng, args.samples, args.max_n)
    bad = higher_jacobi_check(v, samples, args.max_n)
    out.record(not bad, "linfty", "jacobi", f"{len(samples)} tuples",
               [f"n={n} tuple {i}" for n, i in bad])
    if mc_sum(v, alpha).is_zero():
        tw = Twisted(v, alpha, check_mc=False)
        bad = higher_jacobi_check(v, samples, args.max_n, lk=tw.lk)
        out.record(not bad, "linfty", "twisted jacobi", f"{len(samples)} tuples",
                   [f"n={n} tuple {i}" for n, i in bad])
    else:
        out.record(False, "linfty", "alpha is Maurer-Cartan")


# -- free ---------------------------------------------------------------------------------------

def _alphabet(spec: str) -> tuple:
    return tuple(x for x in spec.replace(",", " ").split() if x)


def cmd_free(args, out: Output):
    from . import free
    if args.action == "enumerate":
        ws = free.enumerate_words(_alphabet(args.alphabet), args.max_len, args.max_depth, args.rules)
        out.info("free", "enumerate", "\n".join(free.show(w) for w in ws))
        out.info("free", "count", str(len(ws)))
        return
    if args.action == "confluence":
        ws = free.all_words(_alphabet(args.alphabet), args.max_len, args.max_depth)
        fails = free.confluence_check(ws, args.rules)
        out.record(not fails, "free", f"confluence ({args.rules})", f"{len(ws)} words",
                   [x.line() for x in fails[:args.limit]])
        return
    alphabet = _alphabet(args.alphabet) if args.alphabet else None
    p = free.WordPoly.parse(args.expr, alphabet)
    if args.action == "normalize":
        if args.weight is None:
            raise ValueError("--weight is required")
        lam = Fraction(args.weight)
        nf = free.normal_form(p, lam, args.rules)
        if args.trace:
            q = p
            while True:
                q, step = free.rewrite_step(q, lam, args.rules)
                if step is None:
                    break
                out.info("free", "step", step.line())
        out.info("free", "normal form", "\n".join(nf.lines()) or "0")
        return
    f = _load(args.file)
    a, P, lam2 = f.averaging(_weight(args))
    images = {}
    for g in args.gen:
        name, _, vals = g.partition("=")
        images[name] = tuple(Fraction(x) for x in vals.split(","))
        if len(images[name]) != a.dim:
            raise ValueError(f"image of {name} must have {a.dim} entries")
    ev = free.Evaluator(a, P, lam2, images)
    v1 = ev(p)
    v2 = ev(free.normal_form(p, lam2))
    out.info("free", "value", "[" + " ".join(fmt(x) for x in v1) + "]")
    out.record(v1 == v2, "free", "value equals value of normal form")


# -- homotopy ------------------------------------------------------------------------------------

def cmd_homotopy(args, out: Output):
    from . import homotopy as ho
    from .trees import BulletKind
    from .complexes import pi_of
    from .operators import induced_triass
    f = _load(args.file)
    n = args.max_n
    if args.kind == "ainf":
        f.need("assoc")
        A = ho.strict_ainf(f.assoc.mu)
        out.report("homotopy", "ainf", ho.ainf_check(A, n))
        if f.bimodule is not None:
            bd, nu, eta = ho.strict_rep(f.bimodule)
            out.report("homotopy", "ainf rep", ho.ainf_rep_check(A, bd, nu, eta, n))
        return
    if args.kind == "triassinf":
        if f.triass is not None:
            spec = ho.strict_triass(f.triass)
        else:
            s = _ravg(args, f)
            A = ho.strict_ainf(s.bimodule.mu)
            bd, nu, eta = ho.strict_rep(s.bimodule)
            spec = ho.induced_triassinf(A, bd, nu, eta, s.lam)
        out.report("homotopy", "triassinf", ho.triassinf_check(spec, n))
        for kind in BulletKind:
            out.report("homotopy", f"ainf restricted to {kind}", ho.ainf_check(ho.restrict_distinguished(spec, kind), n))
        return
    s = _ravg(args, f)
    A = ho.strict_ainf(s.bimodule.mu)
    bd, nu, eta = ho.strict_rep(s.bimodule)
    res = ho.homotopy_operator_check(A, bd, nu, eta, s.lam, ho.strict_operator(s.P), n)
    detail = []
    for k, c in sorted(res.defect.items()):
        detail += [f"arity {k}: {line}" for line in c.dump().splitlines()]
    out.record(res.ok, "homotopy", "p(e^[-,P] pi) = 0", f"{res.terms} terms", detail)
    if res.ok:
        same = res.induced.ops.get(2) == pi_of(induced_triass(s))
        out.record(same, "homotopy", "induced pi_2 matches x.P(y), P(x).y, lam xy")


# -- parser -----------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "machine"), default="human",
                        help="machine prints 'STATUS | module | check | witness' lines")
    weight = argparse.ArgumentParser(add_help=False)
    weight.add_argument("--weight", help="weight lam as an integer or p/q (overrides the file)")

    p = argparse.ArgumentParser(prog="triavg", description="Averaging operators, triassociative "
                                "algebras and their cohomology, with exact arithmetic.")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("trees", parents=[common], help="planar trees indexing cochains")
    t.add_argument("action", choices=("enumerate", "face", "classify"))
    t.add_argument("arg", help="arity for enumerate, a tree encoding such as '((| |) |)' otherwise")
    t.add_argument("i", nargs="?", help="leaf to delete (face)")
    t.set_defaults(func=cmd_trees)

    c = sub.add_parser("check", parents=[common, weight], help="axiom checks on a .alg file")
    c.add_argument("kind", choices=("assoc", "bimodule", "triass", "averaging", "relative"))
    c.add_argument("file")
    c.set_defaults(func=cmd_check)

    i = sub.add_parser("induce", parents=[common, weight],
                       help="induced triassociative, tridendriform or relative averaging structures")
    i.add_argument("kind", choices=("triass", "tridend", "ravg"))
    i.add_argument("file")
    i.set_defaults(func=cmd_induce)

    h = sub.add_parser("cohomology", parents=[common, weight], help="Betti numbers of the cochain complexes")
    h.add_argument("kind", choices=("triass", "operator", "relative", "averaging", "assact"))
    h.add_argument("file")
    h.add_argument("--degree", type=_degrees, default=(1, 2, 3), help="e.g. 2, 1,2 or 1:3")
    h.add_argument("--reps", action="store_true", help="print representatives of each class")
    h.set_defaults(func=cmd_cohomology)

    le = sub.add_parser("les", parents=[common, weight], help="exactness of the long exact sequence")
    le.add_argument("file")
    le.add_argument("--range", type=_degrees, default=(1, 2), help="degrees, e.g. 1:2")
    le.set_defaults(func=cmd_les)

    d = sub.add_parser("deform", parents=[common, weight], help="infinitesimal deformations")
    d.add_argument("action", choices=("classify", "check"))
    d.add_argument("file")
    d.add_argument("direction", nargs="?", help=".alg file holding (mu1, nu1, l1, r1, P1)")
    d.set_defaults(func=cmd_deform)

    m = sub.add_parser("mc", parents=[common, weight], help="Maurer-Cartan characterizations")
    m.add_argument("kind", choices=("operator", "pair"))
    m.add_argument("file")
    m.set_defaults(func=cmd_mc)

    li = sub.add_parser("linf", parents=[common, weight], help="L-infinity structure checks")
    li.add_argument("action", choices=("jacobi",))
    li.add_argument("file")
    li.add_argument("--max-n", type=int, default=4)
    li.add_argument("--samples", type=int, default=6, help="tuples per arity")
    li.add_argument("--seed", type=int, default=0)
    li.set_defaults(func=cmd_linf)

    fr = sub.add_parser("free", parents=[common, weight], help="the free averaging algebra")
    fr.add_argument("action", choices=("normalize", "enumerate", "eval", "confluence"))
    fr.add_argument("operands", nargs="*", metavar="EXPR [FILE]",
                    help="a quoted word such as '[ x ] [ y ]'; eval also takes an averaging algebra file")
    fr.add_argument("--alphabet", default=None, help="generators, e.g. x,y")
    fr.add_argument("--max-len", type=int, default=3)
    fr.add_argument("--max-depth", type=int, default=2)
    fr.add_argument("--rules", choices=("completed", "basic"), default="completed")
    fr.add_argument("--gen", action="append", default=[], help="generator image, e.g. x=1,0")
    fr.add_argument("--trace", action="store_true", help="print every rewrite step")
    fr.add_argument("--limit", type=int, default=5, help="failures to print")
    fr.set_defaults(func=cmd_free)

    ho = sub.add_parser("homotopy", parents=[common, weight], help="strict data seen as homotopy data")
    ho.add_argument("kind", choices=("ainf", "triassinf", "operator"))
    ho.add_argument("file")
    ho.add_argument("--max-n", type=int, default=3)
    ho.set_defaults(func=cmd_homotopy)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    # argparse binds optional positionals before later options are seen, so
    # free's operands may come back as leftovers
    args, extra = parser.parse_known_args(argv)
    if extra:
        if args.command != "free" or any(x.startswith("--") for x in extra):
            parser.error("unrecognized arguments: " + " ".join(extra))
        args.operands = list(args.operands) + extra
    out = Output(args.format)
    if args.command == "free" and args.action in ("enumerate", "confluence") and not args.alphabet:
        args.alphabet = "x"
    if args.command == "free":
        ops = args.operands
        need = {"normalize": 1, "eval": 2}.get(args.action, 0)
        if len(ops) != need:
            parser.error(f"free {args.action} takes {need} operand(s)")
        args.expr = ops[0] if ops else ""
        args.file = ops[1] if len(ops) > 1 else None
    try:
        args.func(args, out)
    except (formats.FormatError, ValueError, KeyError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"error: {msg}", file=sys.stderr)
        return 2
    return 1 if out.failed else 0


if __name__ == "__main__":
    sys.exit(main())
