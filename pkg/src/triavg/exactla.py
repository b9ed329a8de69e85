"""Exact rational linear algebra.

Scalars are ``fractions.Fraction``.  Elimination works on integer rows: each
row is scaled to clear denominators and kept primitive (content 1), so the
inner loop only multiplies Python integers.  Pivots are chosen by leading
column, the first row reaching a given leading column owns it.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

Rat = Fraction

_SPARSE_THRESHOLD = 0.1


def rat(x) -> Fraction:
    """Parse ``"p/q"``, ``"p"``, int or Fraction into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s or any(c in s for c in ".eE "):
            raise ValueError(f"not an exact rational: {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def fmt(x) -> str:
    """Serialize a rational as ``p/q`` or ``p``."""
    return str(Fraction(x))


class RatMatrix:
    """Immutable rows x cols matrix over Q.

    Stored densely unless at most 10% of the entries are nonzero, in which
    case only the nonzero entries of each row are kept.
    """

    __slots__ = ("rows", "cols", "_dense", "_sparse")

    def __init__(self, rows: int, cols: int, entries=None):
        self.rows = rows
        self.cols = cols
        if entries is None:
            entries = [Fraction(0)] * (rows * cols)
        entries = [Fraction(e) for e in entries]
        if len(entries) != rows * cols:
            raise ValueError("entries length must equal rows * cols")
        self._dense = None
        self._sparse = None
        nnz = sum(1 for e in entries if e)
        if rows * cols and nnz <= _SPARSE_THRESHOLD * rows * cols:
            self._sparse = tuple(
                {j: entries[i * cols + j] for j in range(cols) if entries[i * cols + j]}
                for i in range(rows))
        else:
            self._dense = tuple(entries)

    @classmethod
    def from_rows(cls, rows) -> RatMatrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [e for r in rows for e in r])

    @classmethod
    def from_sparse_columns(cls, rows: int, columns) -> RatMatrix:
        """Build from a list of column dicts ``{row: value}``; stays sparse."""
        m = cls.__new__(cls)
        m.rows, m.cols = rows, len(columns)
        row_dicts = [dict() for _ in range(rows)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    if not 0 <= i < rows:
                        raise ValueError("row index out of range")
                    row_dicts[i][j] = Fraction(v)
        m._dense = None
        m._sparse = tuple(row_dicts)
        return m

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @property
    def is_sparse(self) -> bool:
        return self._sparse is not None

    @property
    def entries(self) -> tuple:
        if self._dense is not None:
            return self._dense
        out = [Fraction(0)] * (self.rows * self.cols)
        for i, r in enumerate(self._sparse):
            for j, v in r.items():
                out[i * self.cols + j] = v
        return tuple(out)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        if self._dense is not None:
            return self._dense[i * self.cols + j]
        return self._sparse[i].get(j, Fraction(0))

    def row_dicts(self) -> list[dict]:
        if self._sparse is not None:
            return [dict(r) for r in self._sparse]
        c = self.cols
        return [{j: self._dense[i * c + j] for j in range(c) if self._dense[i * c + j]}
                for i in range(self.rows)]

    def col_dicts(self) -> list[dict]:
        cols = [dict() for _ in range(self.cols)]
        for i, r in enumerate(self.row_dicts()):
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def to_lists(self) -> list[list[Fraction]]:
        e = self.entries
        return [list(e[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def transpose(self) -> RatMatrix:
        return RatMatrix.from_sparse_columns(self.cols, self.row_dicts())

    def __matmul__(self, other: RatMatrix) -> RatMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        right = other.row_dicts()
        cols = [dict() for _ in range(other.cols)]
        for i, r in enumerate(self.row_dicts()):
            acc = {}
            for k, a in r.items():
                for j, b in right[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            for j, v in acc.items():
                if v:
                    cols[j][i] = v
        return RatMatrix.from_sparse_columns(self.rows, cols)

    def apply(self, v) -> tuple:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        out = []
        for r in self.row_dicts():
            out.append(sum((a * v[j] for j, a in r.items()), Fraction(0)))
        return tuple(out)

    def is_zero(self) -> bool:
        return all(not r for r in self.row_dicts())

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and \
            self.row_dicts() == other.row_dicts()

    def __repr__(self) -> str:
        return f"RatMatrix({self.rows}x{self.cols})"


# -- integer echelon machinery ----------------------------------------------

def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        row = {k: v // g for k, v in row.items()}
    lead = row[min(row)]
    if lead < 0:
        row = {k: -v for k, v in row.items()}
    return row


def _int_row(row) -> dict:
    """Scale a rational row (dict or sequence) to a primitive integer dict."""
    if not isinstance(row, dict):
        row = {j: v for j, v in enumerate(row) if v}
    else:
        row = {j: v for j, v in row.items() if v}
    if not row:
        return {}
    den = 1
    for v in row.values():
        den = lcm(den, Fraction(v).denominator)
    out = {j: int(Fraction(v) * den) for j, v in row.items()}
    return _primitive(out)


class Echelon:
    """Incrementally maintained integer echelon basis of a row space."""

    def __init__(self):
        self.pivots: dict[int, dict] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, row) -> dict:
        row = _int_row(row)
        while row:
            c = min(row)
            p = self.pivots.get(c)
            if p is None:
                return row
            a, b = p[c], row[c]
            new = {k: a * v for k, v in row.items()}
            for k, v in p.items():
                w = new.get(k, 0) - b * v
                if w:
                    new[k] = w
                else:
                    new.pop(k, None)
            row = _primitive(new) if new else new
        return row

    def insert(self, row) -> bool:
        row = self.reduce(row)
        if not row:
            return False
        self.pivots[min(row)] = row
        return True

    def contains(self, row) -> bool:
        return not self.reduce(row)

    def reduced_rows(self) -> dict[int, dict]:
        """Back-substitute so every pivot column is zero in the other rows."""
        done: dict[int, dict] = {}
        for c in sorted(self.pivots, reverse=True):
            row = dict(self.pivots[c])
            for c2 in sorted(k for k in row if k in done and k != c):
                p = done[c2]
                if c2 not in row:
                    continue
                a, b = p[c2], row[c2]
                new = {k: a * v for k, v in row.items()}
                for k, v in p.items():
                    w = new.get(k, 0) - b * v
                    if w:
                        new[k] = w
                    else:
                        new.pop(k, None)
                row = _primitive(new)
            done[c] = row
        return done


def rank(M: RatMatrix) -> int:
    """Rank over Q by integer elimination; feeds the shorter side."""
    vecs = M.row_dicts() if M.rows <= M.cols else M.col_dicts()
    bound = min(M.rows, M.cols)
    e = Echelon()
    for v in vecs:
        if len(e) == bound:
            break
        e.insert(v)
    return len(e)


def kernel_basis(M: RatMatrix) -> list[tuple]:
    """Basis of ker(M), one vector per free column, in reduced echelon form.

    The vector attached to free column f has a 1 in position f, zeros in the
    other free columns and the forced values in the pivot columns.
    """
    e = Echelon()
    for r in M.row_dicts():
        if len(e) == M.cols:
            break
        e.insert(r)
    red = e.reduced_rows()
    free = [j for j in range(M.cols) if j not in red]
    basis = []
    for f in free:
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for c, row in red.items():
            if f in row:
                v[c] = Fraction(-row[f], row[c])
        basis.append(tuple(v))
    return basis


def span_rank(vectors) -> int:
    e = Echelon()
    for v in vectors:
        e.insert(v)
    return len(e)


def in_span(vectors, v) -> bool:
    e = Echelon()
    for w in vectors:
        e.insert(w)
    return e.contains(v)


def independent_subset(vectors) -> list:
    """Greedy maximal independent subsequence, in input order."""
    e = Echelon()
    return [v for v in vectors if e.insert(v)]


def cokernel_quotient(im, ker) -> tuple[int, list]:
    """dim span(ker)/span(im) and representatives completing im to ker.

    Raises ValueError when some image vector lies outside span(ker); for a
    cochain complex that means the differential does not square to zero.
    """
    ek = Echelon()
    for v in ker:
        ek.insert(v)
    for v in im:
        if not ek.contains(v):
            raise ValueError("image is not contained in kernel")
    ei = Echelon()
    for v in im:
        ei.insert(v)
    reps = [v for v in ker if ei.insert(v)]
    return len(reps), reps


def solve(M: RatMatrix, b) -> tuple | None:
    """One solution x of Mx = b, or None if the system is inconsistent."""
    if len(b) != M.rows:
        raise ValueError("right-hand side length mismatch")
    n = M.cols
    e = Echelon()
    for r, bi in zip(M.row_dicts(), b):
        row = dict(r)
        if bi:
            row[n] = Fraction(bi)
        e.insert(row)
    if n in e.pivots:
        return None
    red = e.reduced_rows()
    x = [Fraction(0)] * n
    for c, row in red.items():
        if n in row:
            x[c] = Fraction(row[n], row[c])
    return tuple(x)
