"""The .alg text format for structure constants.

    # comment
    dims A=2 B=2          # D=n for a bare triassociative algebra
    weight 2
    [assoc]
    mu i j k c            # e_i e_j = ... + c e_k
    [bimodule]
    nu i j k c            # product on B
    l i j k c             # e_i . b_j
    r i j k c             # b_i . e_j
    [triass]
    dashv i j k c         # likewise vdash, perp
    [operator]
    P i k c               # P(b_k) = ... + c e_i  (P(e_k) when B is absent)

Indices are 0-based and coefficients are integers or p/q.  Entries not
listed are zero; listing an entry twice is an error.  Every error names the
line it was found on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebras import AssocSpec, BimodSpec, LinearOp, TriassSpec, sparse3, tensor3
from .exactla import fmt
from .operators import RAvgSpec


class FormatError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        super().__init__(f"line {line}: {msg}" if line else msg)
        self.line = line


_SECTIONS = {
    "assoc": {"mu": 3},
    "bimodule": {"nu": 3, "l": 3, "r": 3},
    "triass": {"dashv": 3, "vdash": 3, "perp": 3},
    "operator": {"P": 2},
}


@dataclass
class AlgFile:
    """Whatever a file declared; absent parts are None."""

    dims: dict
    weight: Fraction | None = None
    assoc: AssocSpec | None = None
    bimodule: BimodSpec | None = None
    triass: TriassSpec | None = None
    P: LinearOp | None = None

    def need(self, *parts: str):
        missing = [p for p in parts if getattr(self, p) is None]
        if missing:
            raise FormatError("file has no " + ", ".join(missing))

    def ravg(self, weight=None) -> RAvgSpec:
        self.need("bimodule", "P")
        return RAvgSpec(self.bimodule, self.P, self._weight(weight))

    def averaging(self, weight=None):
        """(A, P, lam) for an operator on A itself."""
        self.need("assoc", "P")
        if self.P.src_dim != self.assoc.dim or self.P.dst_dim != self.assoc.dim:
            raise FormatError("operator does not act on A")
        return self.assoc, self.P, self._weight(weight)

    def _weight(self, weight) -> Fraction:
        lam = Fraction(weight) if weight is not None else self.weight
        if lam is None:
            raise FormatError("no weight given (use a 'weight' line or --weight)")
        return lam


def _rat(tok: str, line: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"bad coefficient {tok!r}", line) from None


def _int(tok: str, line: int) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise FormatError(f"bad index {tok!r}", line) from None
    if v < 0:
        raise FormatError(f"negative index {v}", line)
    return v


def loads(text: str) -> AlgFile:
    dims: dict = {}
    weight = None
    section = None
    entries: dict = {}          # (section, key) -> {idx: (value, line)}
    seen_sections: dict = {}
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise FormatError(f"malformed section header {line!r}", no)
            section = line[1:-1].strip()
            if section not in _SECTIONS:
                raise FormatError(f"unknown section [{section}]", no)
            if section in seen_sections:
                raise FormatError(f"section [{section}] repeated (first at line {seen_sections[section]})", no)
            seen_sections[section] = no
            continue
        toks = line.split()
        head = toks[0]
        if head == "dims":
            if dims:
                raise FormatError("dims given twice", no)
            for t in toks[1:]:
                name, eq, val = t.partition("=")
                if not eq or name not in ("A", "B", "D"):
                    raise FormatError(f"bad dims field {t!r}", no)
                dims[name] = _int(val, no)
            if not dims:
                raise FormatError("dims needs at least one field", no)
            continue
        if head == "weight":
            if len(toks) != 2:
                raise FormatError("weight takes one value", no)
            if weight is not None:
                raise FormatError("weight given twice", no)
            weight = _rat(toks[1], no)
            continue
        if section is None:
            raise FormatError(f"entry {head!r} outside any section", no)
        keys = _SECTIONS[section]
        if head not in keys:
            raise FormatError(f"{head!r} does not belong in [{section}]", no)
        arity = keys[head]
        if len(toks) != arity + 2:
            raise FormatError(f"{head} needs {arity} indices and a coefficient", no)
        idx = tuple(_int(t, no) for t in toks[1:-1])
        bucket = entries.setdefault((section, head), {})
        if idx in bucket:
            raise FormatError(f"{head} {' '.join(map(str, idx))} already set at line {bucket[idx][1]}", no)
        bucket[idx] = (_rat(toks[-1], no), no)
    if not dims:
        raise FormatError("missing 'dims' line")
    return _build(dims, weight, entries, seen_sections)


def _tensor(entries, section, key, shape):
    data = {}
    for idx, (v, no) in entries.get((section, key), {}).items():
        for axis, (i, n) in enumerate(zip(idx, shape)):
            if i >= n:
                raise FormatError(f"{key} index {i} in position {axis + 1} exceeds dimension {n}", no)
        data[idx] = v
    return data


def _build(dims, weight, entries, sections) -> AlgFile:
    out = AlgFile(dict(dims), weight)
    if "D" in dims and ("A" in dims or "B" in dims):
        raise FormatError("dims D cannot be combined with A or B")
    dA, dB, dD = dims.get("A"), dims.get("B"), dims.get("D")
    for sec, need in (("assoc", "A"), ("bimodule", "B"), ("triass", "D")):
        if sec in sections and dims.get(need) is None:
            raise FormatError(f"[{sec}] needs dims {need}=", sections[sec])
    if "assoc" in sections:
        out.assoc = AssocSpec(dA, tensor3(dA, dA, dA, _tensor(entries, "assoc", "mu", (dA,) * 3)))
    if "bimodule" in sections:
        if out.assoc is None:
            raise FormatError("[bimodule] needs an [assoc] section", sections["bimodule"])
        nu = tensor3(dB, dB, dB, _tensor(entries, "bimodule", "nu", (dB,) * 3))
        l = tensor3(dA, dB, dB, _tensor(entries, "bimodule", "l", (dA, dB, dB)))
        r = tensor3(dB, dA, dB, _tensor(entries, "bimodule", "r", (dB, dA, dB)))
        out.bimodule = BimodSpec(out.assoc, dB, nu, l, r)
    if "triass" in sections:
        ts = {k: tensor3(dD, dD, dD, _tensor(entries, "triass", k, (dD,) * 3))
              for k in ("dashv", "vdash", "perp")}
        out.triass = TriassSpec(dD, ts["dashv"], ts["vdash"], ts["perp"])
    if "operator" in sections:
        if dA is None:
            raise FormatError("[operator] needs dims A=", sections["operator"])
        src = dB if dB is not None else dA
        data = _tensor(entries, "operator", "P", (dA, src))
        rows = [[data.get((i, k), Fraction(0)) for k in range(src)] for i in range(dA)]
        out.P = LinearOp(src, dA, rows)
    return out


def load(path) -> AlgFile:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def _lines3(key, t):
    return [f"{key} {i} {j} {k} {fmt(v)}" for (i, j, k), v in sorted(sparse3(t).items())]


def dumps(f: AlgFile) -> str:
    """Canonical text; loads(dumps(f)) reproduces f."""
    out = ["dims " + " ".join(f"{k}={f.dims[k]}" for k in ("A", "B", "D") if k in f.dims)]
    if f.weight is not None:
        out.append(f"weight {fmt(f.weight)}")
    if f.assoc is not None:
        out += ["[assoc]"] + _lines3("mu", f.assoc.mu)
    if f.bimodule is not None:
        b = f.bimodule
        out += ["[bimodule]"] + _lines3("nu", b.nu) + _lines3("l", b.l) + _lines3("r", b.r)
    if f.triass is not None:
        out += ["[triass]"]
        for k, t in f.triass.tensors().items():
            out += _lines3(k, t)
    if f.P is not None:
        out += ["[operator]"]
        out += [f"P {i} {k} {fmt(f.P.entry(i, k))}" for i in range(f.P.dst_dim)
                for k in range(f.P.src_dim) if f.P.entry(i, k)]
    return "\n".join(out) + "\n"


def dump(f: AlgFile, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(f))


# -- constructors from in-memory specs -------------------------------------------

def from_averaging(a: AssocSpec, P: LinearOp, lam) -> AlgFile:
    return AlgFile({"A": a.dim}, Fraction(lam), assoc=a, P=P)


def from_ravg(s: RAvgSpec) -> AlgFile:
    b = s.bimodule
    return AlgFile({"A": b.dimA, "B": b.dimB}, s.lam, assoc=b.algebra, bimodule=b, P=s.P)


def from_bimodule(b: BimodSpec) -> AlgFile:
    return AlgFile({"A": b.dimA, "B": b.dimB}, assoc=b.algebra, bimodule=b)


def from_assoc(a: AssocSpec) -> AlgFile:
    return AlgFile({"A": a.dim}, assoc=a)


def from_triass(d: TriassSpec) -> AlgFile:
    return AlgFile({"D": d.dim}, triass=d)


def same(f: AlgFile, g: AlgFile) -> bool:
    return dumps(f) == dumps(g)
