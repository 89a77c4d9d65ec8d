"""Sparse exact linear algebra over the rationals.

Matrices are stored as dictionaries ``{(row, col): Fraction}`` with no stored
zeros.  Rank and kernel computations use fraction-free row elimination over
the integers: every row is scaled to a primitive integer vector and two rows
are combined as ``a*r - b*p`` followed by division by the content.
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

from .errors import NotAComplex, ShapeMismatch

Q = Fraction


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted")
    return Fraction(x)


def fraction_str(x: Fraction) -> str:
    x = to_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class RationalMatrix:
    """Immutable sparse matrix with exact rational entries."""

    __slots__ = ("rows", "cols", "_e", "_rank", "_rowd", "_cold")

    def __init__(self, rows: int, cols: int, entries=()):
        if rows < 0 or cols < 0:
            raise ShapeMismatch("negative matrix shape")
        self.rows = rows
        self.cols = cols
        e: dict = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for item in items:
            if len(item) == 2:
                (r, c), v = item
            else:
                r, c, v = item
            if not (0 <= r < rows and 0 <= c < cols):
                raise ShapeMismatch(f"entry ({r},{c}) outside {rows}x{cols}")
            v = to_fraction(v)
            if v:
                s = e.get((r, c), 0) + v
                if s:
                    e[(r, c)] = s
                else:
                    e.pop((r, c), None)
        self._e = e
        self._rank = None
        self._rowd = None
        self._cold = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def _raw(cls, rows, cols, e):
        m = cls.__new__(cls)
        m.rows, m.cols, m._e, m._rank, m._rowd, m._cold = rows, cols, e, None, None, None
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls._raw(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls._raw(n, n, {(i, i): Q(1) for i in range(n)})

    @classmethod
    def diag(cls, values) -> "RationalMatrix":
        values = [to_fraction(v) for v in values]
        n = len(values)
        return cls._raw(n, n, {(i, i): v for i, v in enumerate(values) if v})

    @classmethod
    def from_dense(cls, data, cols: int | None = None) -> "RationalMatrix":
        data = [list(r) for r in data]
        ncols = cols if cols is not None else (len(data[0]) if data else 0)
        ents = {}
        for r, row in enumerate(data):
            if len(row) != ncols:
                raise ShapeMismatch("ragged dense matrix")
            for c, v in enumerate(row):
                v = to_fraction(v)
                if v:
                    ents[(r, c)] = v
        return cls._raw(len(data), ncols, ents)

    @classmethod
    def from_columns(cls, rows: int, columns: list) -> "RationalMatrix":
        """Columns given as dicts ``{row: value}``."""
        ents = {}
        for c, col in enumerate(columns):
            for r, v in col.items():
                if v:
                    if not 0 <= r < rows:
                        raise ShapeMismatch(f"row {r} outside {rows}")
                    ents[(r, c)] = to_fraction(v)
        return cls._raw(rows, len(columns), ents)

    @classmethod
    def block(cls, row_dims, col_dims, blocks) -> "RationalMatrix":
        """Assemble from ``blocks[(i, j)]`` placed on the given grid."""
        roff = [0]
        for d in row_dims:
            roff.append(roff[-1] + d)
        coff = [0]
        for d in col_dims:
            coff.append(coff[-1] + d)
        ents = {}
        for (i, j), b in blocks.items():
            if b is None:
                continue
            if b.shape != (row_dims[i], col_dims[j]):
                raise ShapeMismatch(f"block ({i},{j}) has shape {b.shape}")
            for (r, c), v in b._e.items():
                ents[(r + roff[i], c + coff[j])] = v
        return cls._raw(roff[-1], coff[-1], ents)

    # -- accessors --------------------------------------------------------
    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def entries(self):
        return self._e

    @property
    def nnz(self) -> int:
        return len(self._e)

    def __getitem__(self, rc) -> Fraction:
        return self._e.get(rc, Q(0))

    def triples(self):
        return sorted((r, c, v) for (r, c), v in self._e.items())

    def row_dict(self):
        if self._rowd is None:
            d = defaultdict(dict)
            for (r, c), v in self._e.items():
                d[r][c] = v
            self._rowd = dict(d)
        return self._rowd

    def col_dict(self):
        d = defaultdict(dict)
        for (r, c), v in self._e.items():
            d[c][r] = v
        return dict(d)

    def column(self, c: int) -> dict:
        return {r: v for (r, cc), v in self._e.items() if cc == c}

    def to_dense(self):
        out = [[Q(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self._e.items():
            out[r][c] = v
        return out

    def is_zero(self) -> bool:
        return not self._e

    # -- arithmetic -------------------------------------------------------
    def transpose(self) -> "RationalMatrix":
        return RationalMatrix._raw(self.cols, self.rows, {(c, r): v for (r, c), v in self._e.items()})

    T = property(transpose)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        orow = other.row_dict()
        out: dict = {}
        for (r, k), v in self._e.items():
            row = orow.get(k)
            if not row:
                continue
            for c, w in row.items():
                key = (r, c)
                s = out.get(key, 0) + v * w
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return RationalMatrix._raw(self.rows, other.cols, out)

    def apply(self, vec: Mapping[int, Fraction]) -> dict:
        """Multiply a sparse column vector given as ``{index: value}``."""
        cd = self._cols_cache()
        out: dict = {}
        for c, x in vec.items():
            if not x:
                continue
            for r, v in cd.get(c, {}).items():
                s = out.get(r, 0) + v * x
                if s:
                    out[r] = s
                else:
                    out.pop(r, None)
        return out

    def _cols_cache(self):
        if self._cold is None:
            self._cold = self.col_dict()
        return self._cold

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        out = dict(self._e)
        for k, v in other._e.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return RationalMatrix._raw(self.rows, self.cols, out)

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix._raw(self.rows, self.cols, {k: -v for k, v in self._e.items()})

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + (-other)

    def scale(self, c) -> "RationalMatrix":
        c = to_fraction(c)
        if not c:
            return RationalMatrix.zeros(self.rows, self.cols)
        return RationalMatrix._raw(self.rows, self.cols, {k: v * c for k, v in self._e.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._e == other._e

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self._e.items())))

    def submatrix(self, rows: list[int], cols: list[int]) -> "RationalMatrix":
        rpos = {r: i for i, r in enumerate(rows)}
        cpos = {c: j for j, c in enumerate(cols)}
        ents = {}
        for (r, c), v in self._e.items():
            if r in rpos and c in cpos:
                ents[(rpos[r], cpos[c])] = v
        return RationalMatrix._raw(len(rows), len(cols), ents)

    def __repr__(self):
        return f"RationalMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


class SubspaceBasis:
    """Linearly independent vectors in ``Q^ambient_dim``."""

    __slots__ = ("ambient_dim", "vectors")

    def __init__(self, ambient_dim: int, vectors: Iterable):
        self.ambient_dim = ambient_dim
        vs = []
        for v in vectors:
            v = tuple(to_fraction(x) for x in v)
            if len(v) != ambient_dim:
                raise ShapeMismatch("vector length differs from ambient dimension")
            vs.append(v)
        self.vectors = tuple(vs)

    def __len__(self):
        return len(self.vectors)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def as_matrix(self) -> RationalMatrix:
        """Matrix whose columns are the basis vectors."""
        ents = {}
        for j, v in enumerate(self.vectors):
            for i, x in enumerate(v):
                if x:
                    ents[(i, j)] = x
        return RationalMatrix._raw(self.ambient_dim, len(self.vectors), ents)


# -- fraction-free elimination ---------------------------------------------

def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


def _integer_rows(m: RationalMatrix) -> list:
    rows = []
    for r, row in sorted(m.row_dict().items()):
        den = 1
        for v in row.values():
            den = den * v.denominator // gcd(den, v.denominator)
        rows.append(_primitive({c: int(v * den) for c, v in row.items()}))
    return rows


def _echelon(rows: list, ncols: int) -> list:
    """Row echelon form of integer rows; returns [(pivot_col, row)] in column order.

    Pivot rule: among candidate rows pick the entry of smallest bit size,
    breaking ties by the lowest row index.
    """
    active = {i: r for i, r in enumerate(rows) if r}
    colidx: dict = defaultdict(set)
    for i, r in active.items():
        for c in r:
            colidx[c].add(i)
    pivots = []
    for c in sorted(colidx):
        cand = colidx.get(c)
        if not cand:
            continue
        p = min(cand, key=lambda i: (abs(active[i][c]).bit_length(), i))
        prow = active.pop(p)
        for k in prow:
            colidx[k].discard(p)
        a = prow[c]
        for i in sorted(cand):
            row = active[i]
            b = row[c]
            g = gcd(a, b)
            ma, mb = a // g, b // g
            new = {k: v * ma for k, v in row.items()}
            for k, v in prow.items():
                s = new.get(k, 0) - v * mb
                if s:
                    new[k] = s
                else:
                    del new[k]
            new = _primitive(new)
            for k in row:
                if k not in new:
                    colidx[k].discard(i)
            for k in new:
                if k not in row:
                    colidx[k].add(i)
            if new:
                active[i] = new
            else:
                del active[i]
        pivots.append((c, prow))
    return pivots


def rank(m: RationalMatrix) -> int:
    if m._rank is None:
        if m.nnz == 0:
            m._rank = 0
        else:
            # eliminate along the shorter side
            mm = m if m.rows <= m.cols else m.transpose()
            m._rank = len(_echelon(_integer_rows(mm), mm.cols))
    return m._rank


def _rref(m: RationalMatrix):
    """Reduced row echelon form as rational rows: list of (pivot_col, {col: Fraction})."""
    ech = _echelon(_integer_rows(m), m.cols)
    rows = []
    for c, r in ech:
        a = r[c]
        rows.append((c, {k: Q(v, a) for k, v in r.items()}))
    # back substitution from the bottom
    for i in range(len(rows) - 1, -1, -1):
        c, r = rows[i]
        for j in range(i):
            cj, rj = rows[j]
            f = rj.get(c)
            if f:
                for k, v in r.items():
                    s = rj.get(k, 0) - f * v
                    if s:
                        rj[k] = s
                    else:
                        rj.pop(k, None)
    return rows


def kernel_basis(m: RationalMatrix) -> SubspaceBasis:
    rows = _rref(m)
    pivcols = {c for c, _ in rows}
    free = [c for c in range(m.cols) if c not in pivcols]
    vecs = []
    # column f of the kernel: x_f = 1, x_pivot = -row[f]
    byfree = defaultdict(list)
    for c, r in rows:
        for k, v in r.items():
            if k != c:
                byfree[k].append((c, v))
    for f in free:
        v = [Q(0)] * m.cols
        v[f] = Q(1)
        for c, coef in byfree.get(f, ()):
            v[c] = -coef
        vecs.append(v)
    return SubspaceBasis(m.cols, vecs)


def image_basis(m: RationalMatrix) -> SubspaceBasis:
    """Basis of the column space (reduced echelon vectors)."""
    rows = _rref(m.transpose())
    vecs = []
    for _, r in rows:
        v = [Q(0)] * m.rows
        for k, x in r.items():
            v[k] = x
        vecs.append(v)
    return SubspaceBasis(m.rows, vecs)


def pivot_columns(m: RationalMatrix) -> list:
    """Indices of a maximal independent set of columns, chosen greedily from the left."""
    return [c for c, _ in _rref(m)]


def solve(a: RationalMatrix, b: RationalMatrix):
    """Return some x with a @ x == b, or None if inconsistent."""
    if a.rows != b.rows:
        raise ShapeMismatch("solve: row counts differ")
    aug = RationalMatrix.block([a.rows], [a.cols, b.cols], {(0, 0): a, (0, 1): b})
    rows = _rref(aug)
    ents = {}
    for c, r in rows:
        if c >= a.cols:
            return None
        for k, v in r.items():
            if k >= a.cols:
                ents[(c, k - a.cols)] = v
    return RationalMatrix(a.cols, b.cols, ents)


def inverse(a: RationalMatrix) -> RationalMatrix:
    if a.rows != a.cols:
        raise ShapeMismatch("inverse of a non-square matrix")
    x = solve(a, RationalMatrix.identity(a.rows))
    if x is None or rank(a) != a.rows:
        raise ValueError("matrix is singular")
    return x


def nullity(m: RationalMatrix) -> int:
    return m.cols - rank(m)


def homology_dims(spaces: Mapping[int, int], diffs: Mapping[int, RationalMatrix], check: bool = True) -> dict:
    """dim H_n = dim ker d_n - rank d_{n+1}, for every degree in ``spaces``."""
    for n, d in diffs.items():
        want = (spaces.get(n - 1, 0), spaces.get(n, 0))
        if d.shape != want:
            raise ShapeMismatch(f"d_{n} has shape {d.shape}, expected {want}")
    if check:
        for n, d in diffs.items():
            up = diffs.get(n + 1)
            if up is not None and d.nnz and up.nnz and not (d @ up).is_zero():
                raise NotAComplex(f"d_{n} d_{n + 1} != 0")
    out = {}
    for n in sorted(spaces):
        dn = diffs.get(n)
        up = diffs.get(n + 1)
        r_out = rank(dn) if dn is not None else 0
        r_in = rank(up) if up is not None else 0
        out[n] = spaces[n] - r_out - r_in
    return out
