"""Independent oracles, written without the package's own algorithms."""

from __future__ import annotations

from fractions import Fraction
from itertools import product


# -- planar rooted trees -----------------------------------------------------------

def _binary(n):
    """Planar binary trees with n + 1 leaves as nested pairs; a leaf is None."""
    if n == 0:
        return [None]
    return [(l, r) for k in range(n) for l in _binary(k) for r in _binary(n - 1 - k)]


def _internal_edges(t, path=()):
    """Paths to internal vertices other than the root."""
    if t is None:
        return []
    out = [path] if path else []
    for i, c in enumerate(t):
        out += _internal_edges(c, path + (i,))
    return out


def _contract(t, paths):
    """Merge each chosen vertex into its parent, giving a tree with tuple children."""
    def go(node, path):
        if node is None:
            return None
        kids = []
        for i, c in enumerate(node):
            sub = go(c, path + (i,))
            if c is not None and path + (i,) in paths:
                kids.extend(sub)
            else:
                kids.append(sub)
        return tuple(kids)
    return go(t, ())


def brute_force_trees(n: int) -> set:
    """Every planar tree with n + 1 leaves and no unary vertex arises from
    some binary tree by contracting internal edges."""
    if n == 0:
        return {None}
    out = set()
    for t in _binary(n):
        edges = _internal_edges(t)
        for mask in product((0, 1), repeat=len(edges)):
            out.add(_contract(t, frozenset(e for e, m in zip(edges, mask) if m)))
    return out


def brute_force_tree_count(n: int) -> int:
    return len(brute_force_trees(n))


def schroeder_hipparchus(n: int) -> int:
    """Little Schroeder numbers: s(1) = s(2) = 1,
    n s(n) = 3 (2n - 3) s(n - 1) - (n - 3) s(n - 2); trees of arity n = s(n + 1)."""
    s = {1: 1, 2: 1}
    for m in range(3, n + 2):
        s[m] = (3 * (2 * m - 3) * s[m - 1] - (m - 3) * s[m - 2]) // m
    return s[n + 1]


def tree_to_string(t) -> str:
    """The package's text encoding of a nested-tuple tree."""
    if t is None:
        return "|"
    return "(" + " ".join(tree_to_string(c) for c in t) + ")"


# -- algebra identities, written out with plain loops -----------------------------------

def mul(t, u, v):
    n = len(t[0][0]) if t and t[0] else 0
    out = [Fraction(0)] * n
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                if b:
                    for k, c in enumerate(t[i][j]):
                        out[k] += a * b * c
    return tuple(out)


def basis(n):
    return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]


def is_triass(d) -> bool:
    """All eleven relations of a triassociative algebra on basis triples."""
    L, R, B = d.dashv, d.vdash, d.perp
    for x, y, z in product(basis(d.dim), repeat=3):
        def m(t, u, v):
            return mul(t, u, v)
        rel = [
            (m(L, m(L, x, y), z), m(L, x, m(L, y, z))),
            (m(L, m(L, x, y), z), m(L, x, m(R, y, z))),
            (m(L, m(R, x, y), z), m(R, x, m(L, y, z))),
            (m(R, m(L, x, y), z), m(R, x, m(R, y, z))),
            (m(R, m(R, x, y), z), m(R, x, m(R, y, z))),
            (m(L, m(L, x, y), z), m(L, x, m(B, y, z))),
            (m(L, m(B, x, y), z), m(B, x, m(L, y, z))),
            (m(B, m(L, x, y), z), m(B, x, m(R, y, z))),
            (m(B, m(R, x, y), z), m(R, x, m(B, y, z))),
            (m(R, m(B, x, y), z), m(R, x, m(R, y, z))),
            (m(B, m(B, x, y), z), m(B, x, m(B, y, z))),
        ]
        if any(a != b for a, b in rel):
            return False
    return True


def is_relative_averaging(s) -> bool:
    b, P = s.bimodule, s.P
    for x, y in product(basis(b.dimB), repeat=2):
        pp = mul(b.mu, P(x), P(y))
        if pp != P(mul(b.l, P(x), y)) or pp != P(mul(b.r, x, P(y))):
            return False
        if pp != tuple(s.lam * v for v in P(mul(b.nu, x, y))):
            return False
    return True


# -- free averaging algebra ----------------------------------------------------------

def has_redex(w) -> bool:
    """Pattern search for the completed rules: two adjacent brackets, or a
    bracket with another bracket anywhere inside it."""
    for a, b in zip(w, w[1:]):
        if not isinstance(a, str) and not isinstance(b, str):
            return True
    for a in w:
        if not isinstance(a, str):
            if any(not isinstance(x, str) for x in a.inner):
                return True
            if has_redex(a.inner):
                return True
    return False


# -- linear algebra --------------------------------------------------------------

def rank_by_elimination(rows) -> int:
    """Textbook Gauss-Jordan over Fraction, no integer tricks."""
    m = [[Fraction(x) for x in r] for r in rows]
    rank, ncols = 0, len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[rank], m[p] = m[p], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank
