"""Bracketed words and the free averaging algebra of weight lam.

A word is a tuple of atoms; an atom is a generator name (str) or a
``Bracket`` holding a word.  The empty tuple is the unit.  Concrete syntax:
generators are identifiers separated by spaces, ``[ w ]`` is the bracket of w.

The defining relations are oriented towards the bracket-reducing form

    [u][v]     -> lam [u v]
    [[u] v]    -> lam [u v]
    [u [v]]    -> lam [u v]        (u, v possibly empty)

These three alone are not confluent: [x][[x]][x] reaches both
lam^2 [x [x] x] and lam^3 [x x x].  The completed system replaces the two
nested rules by

    [u [v] w]  -> lam [u v w]

which lies in the same ideal (P(uP(v))P(w) = lam P(uP(v)w) and the left side
is lam^2 P(uvw)).  ``rules="basic"`` keeps the three-rule system so the
failure can be reproduced.  Normal forms of the completed system are
alternating products of generator words and brackets of generator words.

Each rule deletes one bracket and never deepens another, so the sum of
bracket depths drops on every step.  A monomial always rewrites to lam times
a monomial, which makes normal forms of polynomials cheap to compute.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .algebras import AssocSpec, LinearOp
from .exactla import RatMatrix, fmt, solve
from .operators import check_averaging

MAX_LEN = 6
MAX_DEPTH = 3
MAX_STEPS = 10_000


class Bracket:
    """The bracket of a word; hash, bracket count and measure are cached
    since words nest deeply."""

    __slots__ = ("inner", "_h", "count", "weight")

    def __init__(self, inner):
        self.inner = tuple(inner)
        self._h = hash(("[", self.inner))
        # weight = sum of nesting depths of this bracket and those inside it
        c = m = 0
        for a in self.inner:
            if not isinstance(a, str):
                c += a.count
                m += a.weight
        self.count = 1 + c
        self.weight = 1 + m + c

    def __eq__(self, other) -> bool:
        return isinstance(other, Bracket) and self._h == other._h and self.inner == other.inner

    def __hash__(self) -> int:
        return self._h

    def __repr__(self) -> str:
        return f"Bracket({self.inner!r})"


class WordSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


# -- syntax ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\[)|(\])|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def parse(s: str, alphabet=None) -> tuple:
    """Parse concrete syntax into a word; positions in errors are 0-based."""
    stack: list[tuple[list, int]] = [([], -1)]
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if m is None:          # trailing whitespace
            break
        start = m.start(m.lastindex)
        pos = m.end()
        opn, cls, ident, bad = m.groups()
        if opn:
            stack.append(([], start))
        elif cls:
            if len(stack) == 1:
                raise WordSyntaxError("unbalanced ']'", start)
            inner, _ = stack.pop()
            stack[-1][0].append(Bracket(tuple(inner)))
        elif ident:
            if alphabet is not None and ident not in alphabet:
                raise WordSyntaxError(f"unknown generator {ident!r}", start)
            stack[-1][0].append(ident)
        else:
            raise WordSyntaxError(f"unexpected character {bad!r}", start)
    if len(stack) > 1:
        raise WordSyntaxError("unbalanced '['", stack[-1][1])
    return tuple(stack[0][0])


def show(w: tuple) -> str:
    if not w:
        return "1"
    return " ".join(a if isinstance(a, str) else "[ " + show(a.inner) + " ]"
                    if a.inner else "[ ]" for a in w)


def pretty(w: tuple) -> str:
    """Compact display with floor brackets."""
    return "".join(a if isinstance(a, str) else "⌊" + pretty(a.inner) + "⌋" for a in w) or "1"


def length(w: tuple) -> int:
    """Number of generator occurrences."""
    return sum(1 if isinstance(a, str) else length(a.inner) for a in w)


def depth(w: tuple) -> int:
    return max((1 + depth(a.inner) for a in w if isinstance(a, Bracket)), default=0)


def bracket_count(w: tuple) -> int:
    return sum(0 if isinstance(a, str) else a.count for a in w)


def measure(w: tuple) -> int:
    """Sum over brackets of their nesting depth; drops on every rewrite."""
    return sum(0 if isinstance(a, str) else a.weight for a in w)


def sort_key(w: tuple):
    return (length(w), bracket_count(w), _struct_key(w))


def _struct_key(w: tuple):
    return tuple((0, a) if isinstance(a, str) else (1, _struct_key(a.inner)) for a in w)


# -- polynomials ---------------------------------------------------------------

class WordPoly:
    """Finite rational combination of words, zero coefficients dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t: dict = {}
        for w, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                t[w] = t.get(w, Fraction(0)) + c
                if not t[w]:
                    del t[w]
        self.terms = t

    @classmethod
    def word(cls, w: tuple, c=1) -> WordPoly:
        return cls({w: c})

    @classmethod
    def parse(cls, s: str, alphabet=None) -> WordPoly:
        return cls.word(parse(s, alphabet))

    def __add__(self, other: WordPoly) -> WordPoly:
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t.get(w, Fraction(0)) + c
        return WordPoly(t)

    def __sub__(self, other: WordPoly) -> WordPoly:
        return self + other.scale(-1)

    def scale(self, c) -> WordPoly:
        return WordPoly({w: c * v for w, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, WordPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def items(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: sort_key(kv[0]))

    def lines(self) -> list[str]:
        return [f"{fmt(c)} * {show(w)}" for w, c in self.items()]

    def __repr__(self) -> str:
        return " + ".join(f"{fmt(c)}*{pretty(w)}" for w, c in self.items()) or "0"


# -- redexes -------------------------------------------------------------------

class Redex(NamedTuple):
    """A rule instance: ``path`` leads through brackets to the word holding it,
    ``index`` is the atom where it starts."""

    path: tuple
    index: int
    rule: str       # "adjacent", "nested-left", "nested-right" or "nested-inner"
    sub: int = 0    # for nested rules, position of the inner bracket

    @property
    def width(self) -> int:
        return 2 if self.rule == "adjacent" else 1

    def contains(self, other: Redex) -> bool:
        if other == self:
            return False
        n = len(self.path)
        if other.path[:n] != self.path:
            return False
        if len(other.path) == n:
            # a nested redex lives inside one of the two brackets of an adjacent pair
            return self.width == 2 and other.width == 1 and \
                self.index <= other.index <= self.index + 1
        return self.index <= other.path[n] < self.index + self.width


RULE_SETS = ("completed", "basic")


def redexes(w: tuple, rules: str = "completed", path: tuple = ()) -> list[Redex]:
    out = []
    for i, a in enumerate(w):
        if isinstance(a, str):
            continue
        out.extend(redexes(a.inner, rules, path + (i,)))
        inner = a.inner
        last = len(inner) - 1
        for j, b in enumerate(inner):
            if not isinstance(b, Bracket):
                continue
            if j == 0:
                out.append(Redex(path, i, "nested-left", 0))
            elif j == last:
                out.append(Redex(path, i, "nested-right", j))
            elif rules == "completed":
                out.append(Redex(path, i, "nested-inner", j))
        if i + 1 < len(w) and isinstance(w[i + 1], Bracket):
            out.append(Redex(path, i, "adjacent"))
    return out


def leftmost_innermost(w: tuple, rules: str = "completed") -> Redex | None:
    rs = redexes(w, rules)
    inner = [r for r in rs if not any(r.contains(s) for s in rs)]
    if not inner:
        return None
    return min(inner, key=lambda r: (r.path + (r.index,), r.sub, r.rule))


def apply_redex(w: tuple, r: Redex) -> tuple:
    """The word obtained by firing r; the coefficient is always lam."""
    if r.path:
        i = r.path[0]
        sub = Redex(r.path[1:], r.index, r.rule, r.sub)
        return w[:i] + (Bracket(apply_redex(w[i].inner, sub)),) + w[i + 1:]
    i = r.index
    if r.rule == "adjacent":
        return w[:i] + (Bracket(w[i].inner + w[i + 1].inner),) + w[i + 2:]
    inner = w[i].inner
    j = r.sub
    new = inner[:j] + inner[j].inner + inner[j + 1:]
    return w[:i] + (Bracket(new),) + w[i + 1:]


def is_irreducible(w: tuple, rules: str = "completed") -> bool:
    return not redexes(w, rules)


def _check_weight(lam) -> Fraction:
    lam = Fraction(lam)
    if lam == 0:
        raise ValueError("weight must be nonzero")
    return lam


@dataclass(frozen=True)
class Step:
    word: tuple
    redex: Redex
    result: tuple

    def line(self) -> str:
        return f"{self.redex.rule} at {self.redex.path + (self.redex.index,)}: " \
               f"{pretty(self.word)} -> lam {pretty(self.result)}"


def rewrite_step(p: WordPoly, lam, rules: str = "completed") -> tuple[WordPoly, Step | None]:
    """Fire the leftmost-innermost redex of the first reducible word."""
    lam = _check_weight(lam)
    for w, c in p.items():
        r = leftmost_innermost(w, rules)
        if r is None:
            continue
        new = apply_redex(w, r)
        terms = dict(p.terms)
        del terms[w]
        return WordPoly(terms) + WordPoly.word(new, lam * c), Step(w, r, new)
    return p, None


def _gens(w: tuple) -> tuple:
    return tuple(x for a in w for x in ((a,) if isinstance(a, str) else _gens(a.inner)))


@lru_cache(maxsize=None)
def _closed_nf(w: tuple) -> tuple:
    """Normal form of the completed system in one pass: flatten every
    bracket's contents, then merge neighbouring brackets."""
    out: list = []
    for a in w:
        if isinstance(a, str):
            out.append(a)
        elif out and isinstance(out[-1], Bracket):
            out[-1] = Bracket(out[-1].inner + _gens(a.inner))
        else:
            out.append(Bracket(_gens(a.inner)))
    return tuple(out)


def reduce_by_steps(w: tuple, rules: str = "completed") -> tuple[tuple, list[Step]]:
    """Leftmost-innermost rewriting to a fixed point, with the step trace.

    Raises if the bracket-depth measure fails to drop or the step bound is hit.
    """
    trace = []
    while True:
        r = leftmost_innermost(w, rules)
        if r is None:
            return w, trace
        new = apply_redex(w, r)
        if measure(new) >= measure(w):
            raise AssertionError("termination measure did not decrease")
        trace.append(Step(w, r, new))
        w = new
        if len(trace) > MAX_STEPS:
            raise RuntimeError("rewrite bound exceeded")


@lru_cache(maxsize=None)
def _nf_word(w: tuple, rules: str) -> tuple[tuple, int]:
    """(normal word, number of steps); the coefficient is lam**steps."""
    if rules == "completed":
        nw = _closed_nf(w)
    else:
        nw = reduce_by_steps(w, rules)[0]
    return nw, bracket_count(w) - bracket_count(nw)


def normal_word(w: tuple, rules: str = "completed") -> tuple[tuple, int]:
    """Normal form of a single word as (word, k); the coefficient is lam**k."""
    return _nf_word(w, rules)


def normal_form(p: WordPoly | tuple, lam, rules: str = "completed") -> WordPoly:
    lam = _check_weight(lam)
    if isinstance(p, tuple):
        p = WordPoly.word(p)
    out = WordPoly()
    for w, c in p.terms.items():
        nw, k = _nf_word(w, rules)
        out = out + WordPoly.word(nw, c * lam ** k)
    return out


def all_normal_forms(w: tuple, lam, rules: str = "completed") -> set[tuple[Fraction, tuple]]:
    """Every (coefficient, word) reachable by some maximal rewrite sequence."""
    lam = _check_weight(lam)
    return {(lam ** k, nw) for k, nw in _terminal(w, rules)}


@lru_cache(maxsize=None)
def _terminal(w: tuple, rules: str) -> frozenset:
    rs = redexes(w, rules)
    if not rs:
        return frozenset({(0, w)})
    out = set()
    m = measure(w)
    for r in rs:
        new = apply_redex(w, r)
        if measure(new) >= m:
            raise AssertionError(f"termination measure did not decrease at {pretty(w)}")
        for k, nw in _terminal(new, rules):
            out.add((k + 1, nw))
    return frozenset(out)


@lru_cache(maxsize=None)
def _unique_terminal(w: tuple, rules: str):
    """The one normal form every rewrite sequence of w reaches, or None if
    two sequences disagree.  Checks the termination measure on every step."""
    rs = redexes(w, rules)
    if not rs:
        return w
    m = measure(w)
    found = None
    for r in rs:
        new = apply_redex(w, r)
        if measure(new) >= m:
            raise AssertionError(f"termination measure did not decrease at {pretty(w)}")
        nw = _unique_terminal(new, rules)
        if nw is None or (found is not None and nw != found):
            return None
        found = nw
    return found


@dataclass(frozen=True)
class CriticalFailure:
    word: tuple
    first: Redex
    second: Redex
    forms: tuple

    def line(self) -> str:
        return f"{pretty(self.word)}: {self.first.rule} vs {self.second.rule} -> " + \
            ", ".join(f"{k}:{pretty(w)}" for k, w in self.forms)


def confluence_check(words, rules: str = "completed") -> list[CriticalFailure]:
    """Words whose maximal rewrite sequences disagree, with a diverging redex pair.

    Every step of every sequence is also checked to lower the termination
    measure, so an empty result certifies termination and confluence on the
    given words.
    """
    fails = []
    for w in words:
        if _unique_terminal(w, rules) is not None:
            continue
        rs = redexes(w, rules)
        by = {r: _terminal(apply_redex(w, r), rules) for r in rs}
        pair = next(((a, b) for a in rs for b in rs if by[a] != by[b]), (rs[0], rs[0]))
        fails.append(CriticalFailure(w, pair[0], pair[1], tuple(sorted(_terminal(w, rules), key=repr))))
    return fails


# -- enumeration ---------------------------------------------------------------

def _check_bounds(max_len, max_depth):
    if not 0 <= max_len <= MAX_LEN or not 0 <= max_depth <= MAX_DEPTH:
        raise ValueError(f"bounds must satisfy len <= {MAX_LEN}, depth <= {MAX_DEPTH}")


@lru_cache(maxsize=None)
def _words(alphabet: tuple, n: int, d: int, irreducible: str | None) -> tuple:
    """Words with exactly n generators, depth <= d, no empty brackets.

    ``irreducible`` filters to normal forms of the named rule set.
    """
    if n == 0:
        return ((),)
    out = []
    for k in range(1, n + 1):
        heads = [(g,) for g in alphabet] if k == 1 else []
        if d > 0:
            for inner in _words(alphabet, k, d - 1, irreducible):
                if irreducible == "basic" and (isinstance(inner[0], Bracket) or isinstance(inner[-1], Bracket)):
                    continue
                if irreducible == "completed" and any(isinstance(x, Bracket) for x in inner):
                    continue
                heads.append((Bracket(inner),))
        for h in heads:
            for rest in _words(alphabet, n - k, d, irreducible):
                if irreducible and rest and isinstance(h[0], Bracket) and isinstance(rest[0], Bracket):
                    continue
                out.append(h + rest)
    return tuple(out)


def enumerate_words(alphabet, max_len: int, max_depth: int, rules: str = "completed") -> list[tuple]:
    """Irreducible words with 1..max_len generators and depth <= max_depth, canonical order."""
    _check_bounds(max_len, max_depth)
    if rules not in RULE_SETS:
        raise ValueError(f"unknown rule set {rules!r}")
    alphabet = tuple(sorted(alphabet))
    out = [w for n in range(1, max_len + 1) for w in _words(alphabet, n, max_depth, rules)]
    return sorted(out, key=sort_key)


def all_words(alphabet, max_len: int, max_depth: int) -> list[tuple]:
    """Every bracketed word (reducible or not) within the bounds.

    Grouped by generator count and otherwise in generation order, which is
    deterministic; sorting half a million nested words costs more than the
    checks that consume them.
    """
    _check_bounds(max_len, max_depth)
    alphabet = tuple(sorted(alphabet))
    return [w for n in range(1, max_len + 1) for w in _words(alphabet, n, max_depth, None)]


# -- evaluation ----------------------------------------------------------------

def _unit(a: AssocSpec):
    n = a.dim
    # solve e*e_i = e_i and e_i*e = e_i for e
    rows, rhs = [], []
    for i in range(n):
        for k in range(n):
            rows.append([a.mu[m][i][k] for m in range(n)])
            rhs.append(Fraction(int(i == k)))
            rows.append([a.mu[i][m][k] for m in range(n)])
            rhs.append(Fraction(int(i == k)))
    x = solve(RatMatrix.from_rows(rows), rhs) if n else ()
    if x is None:
        raise ValueError("target algebra has no unit; the empty word cannot be evaluated")
    return tuple(x)


def _num(x: Fraction):
    return x.numerator if x.denominator == 1 else x


class Evaluator:
    """The averaging-algebra morphism extending a map on generators.

    Values are memoized per word and built from the value of the word minus
    its last atom.  Integral entries are stored as ints, which keeps the
    arithmetic exact and several times faster than Fraction.
    """

    def __init__(self, a: AssocSpec, P: LinearOp, lam, f, verify: bool = True):
        self.a, self.P, self.lam = a, P, Fraction(lam)
        if verify:
            rep = check_averaging(a, P, self.lam)
            if not rep.ok:
                raise ValueError("target is not an averaging algebra: " + "; ".join(rep.lines()[:3]))
        self.f = {g: tuple(_num(Fraction(x)) for x in v) for g, v in dict(f).items()}
        n = a.dim
        self._mu = [[[(k, _num(c)) for k, c in enumerate(a.mu[i][j]) if c] for j in range(n)]
                    for i in range(n)]
        self._P = [[(i, _num(P.entry(i, j))) for i in range(n) if P.entry(i, j)] for j in range(n)]
        self._memo: dict = {(): tuple(_num(x) for x in _unit(a))} if self._has_unit() else {}

    def _has_unit(self) -> bool:
        try:
            _unit(self.a)
        except ValueError:
            return False
        return True

    def _mul(self, u, v) -> tuple:
        out = [0] * self.a.dim
        for i, x in enumerate(u):
            if x:
                row = self._mu[i]
                for j, y in enumerate(v):
                    if y:
                        xy = x * y
                        for k, c in row[j]:
                            out[k] += xy * c
        return tuple(out)

    def _apply_P(self, v) -> tuple:
        out = [0] * self.a.dim
        for j, x in enumerate(v):
            if x:
                for i, c in self._P[j]:
                    out[i] += c * x
        return tuple(out)

    def _atom(self, atom) -> tuple:
        if isinstance(atom, str):
            if atom not in self.f:
                raise KeyError(f"no image for generator {atom!r}")
            return self.f[atom]
        return self._apply_P(self.word(atom.inner))

    def word(self, w: tuple) -> tuple:
        v = self._memo.get(w)
        if v is not None:
            return v
        if not w:
            _unit(self.a)          # raises with a clear message
        x = self._atom(w[-1])
        v = x if len(w) == 1 else self._mul(self.word(w[:-1]), x)
        self._memo[w] = v
        return v

    def __call__(self, p: WordPoly | tuple) -> tuple:
        if isinstance(p, tuple):
            return tuple(Fraction(x) for x in self.word(p))
        out = [Fraction(0)] * self.a.dim
        for w, c in p.terms.items():
            out = [o + c * x for o, x in zip(out, self.word(w))]
        return tuple(out)


def universal_morphism(f, target, w: WordPoly | tuple) -> tuple:
    """Evaluate w in target = (A, P, lam) with generators sent through f."""
    a, P, lam = target
    return Evaluator(a, P, lam, f)(w)


def factorization_failures(ev: Evaluator, words, rules: str = "completed") -> list[tuple]:
    """Words whose value differs from the value of their normal form."""
    out = []
    powers: dict = {}
    for w in words:
        nw, k = normal_word(w, rules)
        if k not in powers:
            powers[k] = _num(ev.lam ** k)
        c = powers[k]
        if ev.word(w) != tuple(c * x for x in ev.word(nw)):
            out.append(w)
    return out
