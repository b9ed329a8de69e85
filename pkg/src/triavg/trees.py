"""Planar rooted trees indexing the cochain spaces.

A tree in T_n has n+1 leaves and every internal node has at least two
children.  T_0 is the lone leaf.  Text encoding: a leaf is ``|`` and a node
is ``(`` followed by its children joined by single spaces and ``)``; the
unique 1-tree is ``(| |)``.  ``enumerate_trees(n)`` lists T_n sorted by this
encoding, and a tree's position in that list is its index everywhere else
(cochain keys, dump files).

Leaves are numbered 0..n from left to right.  Input slot j of an arity-n
cochain sits between leaves j-1 and j.
"""

from __future__ import annotations

import enum
import threading
from functools import lru_cache
from itertools import product


class BulletKind(enum.Enum):
    DASHV = "⊣"
    VDASH = "⊢"
    PERP = "⊥"

    def __str__(self) -> str:
        return self.value


class PlanarTree:
    """Immutable planar tree; ``children == ()`` means a leaf."""

    __slots__ = ("children", "_enc", "_leaves")

    def __init__(self, children=()):
        children = tuple(children)
        if len(children) == 1:
            raise ValueError("internal nodes need at least two children")
        self.children = children
        self._enc = None
        self._leaves = 1 if not children else sum(c.leaves for c in children)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def leaves(self) -> int:
        return self._leaves

    @property
    def arity(self) -> int:
        """n for a tree in T_n."""
        return self._leaves - 1

    def encode(self) -> str:
        if self._enc is None:
            if not self.children:
                self._enc = "|"
            else:
                self._enc = "(" + " ".join(c.encode() for c in self.children) + ")"
        return self._enc

    def __str__(self) -> str:
        return self.encode()

    def __repr__(self) -> str:
        return f"PlanarTree({self.encode()!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PlanarTree) and self.encode() == other.encode()

    def __hash__(self) -> int:
        return hash(self.encode())

    def __lt__(self, other: PlanarTree) -> bool:
        return self.encode() < other.encode()


LEAF = PlanarTree()


def parse(s: str) -> PlanarTree:
    """Parse the text encoding; whitespace between tokens is not significant."""
    tokens = [c for c in s if not c.isspace()]
    pos = 0

    def node() -> PlanarTree:
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError(f"unexpected end of tree at token {pos}")
        c = tokens[pos]
        if c == "|":
            pos += 1
            return LEAF
        if c != "(":
            raise ValueError(f"unexpected {c!r} at token {pos}")
        start = pos
        pos += 1
        kids = []
        while pos < len(tokens) and tokens[pos] != ")":
            kids.append(node())
        if pos >= len(tokens):
            raise ValueError(f"unbalanced '(' at token {start}")
        pos += 1
        if len(kids) < 2:
            raise ValueError(f"node at token {start} has {len(kids)} child(ren); need at least 2")
        return PlanarTree(kids)

    t = node()
    if pos != len(tokens):
        raise ValueError(f"trailing input at token {pos}")
    return t


def _with_leaves(L: int) -> list[PlanarTree]:
    if L == 1:
        return [LEAF]
    out = []
    for comp in _compositions(L):
        for kids in product(*(_with_leaves(c) for c in comp)):
            out.append(PlanarTree(kids))
    return out


def _compositions(L: int):
    """Compositions of L into at least two positive parts."""
    def rec(rest, parts):
        if rest == 0:
            if len(parts) >= 2:
                yield tuple(parts)
            return
        for first in range(1, rest + 1):
            if first == L:
                continue
            yield from rec(rest - first, parts + [first])
    yield from rec(L, [])


_lock = threading.Lock()
_cache: dict[int, tuple] = {}


def enumerate_trees(n: int) -> tuple[PlanarTree, ...]:
    """All trees of T_n, sorted by their text encoding."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    with _lock:
        if n not in _cache:
            _cache[n] = tuple(sorted(_with_leaves(n + 1), key=PlanarTree.encode))
        return _cache[n]


@lru_cache(maxsize=None)
def _index_map(n: int) -> dict:
    return {t: i for i, t in enumerate(enumerate_trees(n))}


def tree_index(t: PlanarTree) -> int:
    return _index_map(t.arity)[t]


def graft(parts) -> PlanarTree:
    parts = list(parts)
    if len(parts) < 2:
        raise ValueError("grafting needs at least two trees")
    return PlanarTree(parts)


def decompose(t: PlanarTree) -> list[PlanarTree]:
    if t.is_leaf:
        raise ValueError("the one-leaf tree is not a grafting")
    return list(t.children)


def joints(t: PlanarTree) -> tuple[int, ...]:
    """Input slots sitting between consecutive grafting factors of t.

    For t = T1 v ... v Tk with leaf counts i1..ik these are
    i1, i1+i2, ..., i1+...+i(k-1).
    """
    out, acc = [], 0
    for c in decompose(t)[:-1]:
        acc += c.leaves
        out.append(acc)
    return tuple(out)


def restrict(t: PlanarTree, keep) -> PlanarTree:
    """Subtree spanned by the leaves in ``keep``, unary nodes collapsed."""
    keep = set(keep)
    if not keep:
        raise ValueError("cannot restrict to an empty set of leaves")
    counter = [0]

    def rec(s):
        if s.is_leaf:
            i = counter[0]
            counter[0] += 1
            return s if i in keep else None
        kids = [k for k in (rec(c) for c in s.children) if k is not None]
        if not kids:
            return None
        if len(kids) == 1:
            return kids[0]
        return PlanarTree(kids)

    return rec(t)


def face(t: PlanarTree, i: int) -> PlanarTree:
    """d_i: delete leaf i and collapse the node it leaves unary."""
    n = t.arity
    if n < 1:
        raise ValueError("faces are defined on T_n for n >= 1")
    if not 0 <= i <= n:
        raise ValueError(f"leaf index {i} out of range 0..{n}")
    return restrict(t, [j for j in range(n + 1) if j != i])


def _leaf_parents(t: PlanarTree):
    """(parent, position among siblings) for every leaf, left to right."""
    out = []

    def rec(s):
        for pos, c in enumerate(s.children):
            if c.is_leaf:
                out.append((s, pos))
            else:
                rec(c)

    rec(t)
    return out


def bullet(t: PlanarTree, i: int) -> BulletKind:
    """The product attached to slot i of the triassociative differential."""
    n = t.arity
    if n < 1:
        raise ValueError("bullet is defined on T_n for n >= 1")
    if not 0 <= i <= n:
        raise ValueError(f"leaf index {i} out of range 0..{n}")
    kids = t.children
    if i == 0:
        if kids[0].is_leaf:
            return BulletKind.DASHV if len(kids) == 2 else BulletKind.PERP
        return BulletKind.VDASH
    if i == n:
        if kids[-1].is_leaf:
            return BulletKind.VDASH if len(kids) == 2 else BulletKind.PERP
        return BulletKind.DASHV
    parent, pos = _leaf_parents(t)[i]
    if pos == 0:
        return BulletKind.DASHV
    if pos == len(parent.children) - 1:
        return BulletKind.VDASH
    return BulletKind.PERP


def _check_r_domain(m: int, i: int, n: int, t: PlanarTree):
    if m < 1 or n < 1 or not 1 <= i <= m:
        raise ValueError(f"invalid (m; i, n) = ({m}; {i}, {n})")
    if t.arity != m + n - 1:
        raise ValueError(f"tree must lie in T_{m + n - 1}")


def r_zero(m: int, i: int, n: int, t: PlanarTree) -> PlanarTree:
    """d_i o ... o d_{i+n-2} applied right to left; lands in T_m."""
    _check_r_domain(m, i, n, t)
    for j in range(i + n - 2, i - 1, -1):
        t = face(t, j)
    return t


def r_i(m: int, i: int, n: int, t: PlanarTree) -> PlanarTree:
    """d_0 o ... o d_{i-2} o d_{i+n} o ... o d_{m+n-1} applied right to left; lands in T_n."""
    _check_r_domain(m, i, n, t)
    for j in range(m + n - 1, i + n - 1, -1):
        t = face(t, j)
    for j in range(i - 2, -1, -1):
        t = face(t, j)
    return t


def distinguished(n: int, kind: BulletKind) -> PlanarTree:
    """The three face-stable trees of T_n.

    DASHV: every internal node is (leaf, subtree), e.g. ``(| (| |))``;
    VDASH: every internal node is (subtree, leaf), e.g. ``((| |) |)``;
    PERP: the corolla with n+1 leaves.
    """
    if n < 1:
        raise ValueError("distinguished trees exist for n >= 1")
    if kind is BulletKind.PERP:
        return PlanarTree([LEAF] * (n + 1))
    t = LEAF
    for _ in range(n):
        t = PlanarTree([LEAF, t]) if kind is BulletKind.DASHV else PlanarTree([t, LEAF])
    return t


# -- tables used by cochain composition -------------------------------------

@lru_cache(maxsize=None)
def composition_table(m: int, i: int, n: int) -> dict:
    """{(index of R0(T), index of Ri(T)): [indices of T in T_{m+n-1}]}."""
    out: dict = {}
    for k, t in enumerate(enumerate_trees(m + n - 1)):
        key = (tree_index(r_zero(m, i, n, t)), tree_index(r_i(m, i, n, t)))
        out.setdefault(key, []).append(k)
    return {key: tuple(v) for key, v in out.items()}


@lru_cache(maxsize=None)
def face_table(n: int) -> tuple:
    """face_table(n)[k][i] = index of d_i(T_k) in T_{n-1}."""
    return tuple(tuple(tree_index(face(t, i)) for i in range(n + 1))
                 for t in enumerate_trees(n))


@lru_cache(maxsize=None)
def bullet_table(n: int) -> tuple:
    return tuple(tuple(bullet(t, i) for i in range(n + 1)) for t in enumerate_trees(n))


@lru_cache(maxsize=None)
def joints_table(n: int) -> tuple:
    return tuple(joints(t) for t in enumerate_trees(n))


@lru_cache(maxsize=None)
def binary_mask(n: int) -> tuple:
    """True for trees all of whose nodes are binary."""
    def is_binary(t):
        return t.is_leaf or (len(t.children) == 2 and all(is_binary(c) for c in t.children))
    return tuple(is_binary(t) for t in enumerate_trees(n))


def product_tree(kind: BulletKind) -> PlanarTree:
    """The 2-tree carrying a given product: ⊣ (| (| |)), ⊢ ((| |) |), ⊥ (| | |)."""
    return distinguished(2, kind)
