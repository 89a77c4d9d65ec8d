"""Chain complexes of finite-dimensional rational vector spaces.

Grading is homological: differentials lower degree by one.  A complex stores
``dims[n]`` and matrices ``d[n]`` of shape ``(dims[n-1], dims[n])`` acting on
column vectors.  Shift follows ``X[k]_i = X_{i+k}`` with differential
``(-1)^k d``; the cone of ``f: X -> Y`` is ``X_{n-1} + Y_n`` with block
differential ``[[-d_X, 0], [-f, d_Y]]``; duals use
``(d phi) = -(-1)^{|phi|} phi o d`` so that evaluation is a chain map.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Mapping

from . import debug
from .errors import NotAComplex, ParseError, ShapeMismatch
from .exactla import (
    RationalMatrix,
    fraction_str,
    homology_dims,
    kernel_basis,
    rank,
    solve,
    to_fraction,
)

Q = Fraction


class ChainComplex:
    """Finitely supported chain complex with optional basis labels."""

    __slots__ = ("dims", "d", "labels", "meta", "_hom")

    def __init__(self, dims: Mapping[int, int], d: Mapping[int, RationalMatrix] | None = None,
                 labels: Mapping[int, list] | None = None, check: bool = True, meta: dict | None = None):
        self.dims = {int(n): int(k) for n, k in dims.items() if k}
        dd = {}
        for n, m in (d or {}).items():
            n = int(n)
            want = (self.dims.get(n - 1, 0), self.dims.get(n, 0))
            if m.shape != want:
                raise ShapeMismatch(f"d_{n} has shape {m.shape}, expected {want}")
            if m.nnz:
                dd[n] = m
        self.d = dd
        self.labels = {}
        for n, labs in (labels or {}).items():
            if self.dims.get(n, 0):
                if len(labs) != self.dims[n]:
                    raise ShapeMismatch(f"degree {n} has {len(labs)} labels for dim {self.dims[n]}")
                self.labels[n] = list(labs)
        self.meta = dict(meta or {})
        self._hom = None
        if check:
            self.check()

    def check(self):
        for n, m in self.d.items():
            up = self.d.get(n + 1)
            if up is not None and not (m @ up).is_zero():
                raise NotAComplex(f"d_{n} d_{n + 1} != 0")

    # -- accessors ---------------------------------------------------------
    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def diff(self, n: int) -> RationalMatrix:
        m = self.d.get(n)
        if m is None:
            return RationalMatrix.zeros(self.dim(n - 1), self.dim(n))
        return m

    @property
    def degrees(self) -> list:
        return sorted(self.dims)

    @property
    def support(self):
        if not self.dims:
            return (0, -1)
        return (min(self.dims), max(self.dims))

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def label(self, n: int, i: int) -> str:
        labs = self.labels.get(n)
        return str(labs[i]) if labs else f"e{n}_{i}"

    def homology(self) -> dict:
        if self._hom is None:
            self._hom = homology_dims(self.dims, self.d, check=False)
        return dict(self._hom)

    def betti(self) -> dict:
        return {n: h for n, h in self.homology().items() if h}

    def is_acyclic(self) -> bool:
        return not any(self.homology().values())

    def euler(self) -> int:
        return sum((-1) ** (n % 2) * k for n, k in self.dims.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return self.dims == other.dims and self.d == other.d

    def __repr__(self):
        return f"ChainComplex(dims={dict(sorted(self.dims.items()))})"

    # -- flat view ---------------------------------------------------------
    def offsets(self) -> dict:
        off, pos = {}, 0
        for n in self.degrees:
            off[n] = pos
            pos += self.dims[n]
        return off

    def total_differential(self) -> RationalMatrix:
        off = self.offsets()
        ents = {}
        for n, m in self.d.items():
            for (r, c), v in m.entries.items():
                ents[(off[n - 1] + r, off[n] + c)] = v
        N = self.total_dim
        return RationalMatrix(N, N, ents)

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        out = {
            "dims": {str(n): k for n, k in sorted(self.dims.items())},
            "diff": {str(n): [[r, c, fraction_str(v)] for r, c, v in m.triples()]
                     for n, m in sorted(self.d.items())},
        }
        if self.labels:
            out["labels"] = {str(n): [str(x) for x in labs] for n, labs in sorted(self.labels.items())}
        return out

    @classmethod
    def from_json(cls, obj) -> "ChainComplex":
        if isinstance(obj, str):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from None
        if not isinstance(obj, dict) or "dims" not in obj:
            raise ParseError("field 'dims' is required")
        try:
            dims = {int(n): int(k) for n, k in obj["dims"].items()}
        except (ValueError, AttributeError, TypeError):
            raise ParseError("field 'dims' must map integer degrees to integers") from None
        if any(k < 0 for k in dims.values()):
            raise ParseError("field 'dims' has a negative dimension")
        d = {}
        for n, trip in (obj.get("diff") or {}).items():
            try:
                n = int(n)
                ents = [(int(r), int(c), to_fraction(v)) for r, c, v in trip]
            except (ValueError, TypeError, ZeroDivisionError):
                raise ParseError(f"field 'diff.{n}' must be a list of [row, col, \"p/q\"]") from None
            try:
                d[n] = RationalMatrix(dims.get(n - 1, 0), dims.get(n, 0), ents)
            except ShapeMismatch as exc:
                raise ParseError(f"field 'diff.{n}': {exc}") from None
        labels = {int(n): v for n, v in (obj.get("labels") or {}).items()}
        try:
            return cls(dims, d, labels)
        except ShapeMismatch as exc:
            raise ParseError(str(exc)) from None


class ChainMap:
    """Degree-``degree`` map of complexes, components ``f[n]: X_n -> Y_{n+degree}``."""

    __slots__ = ("source", "target", "f", "degree")

    def __init__(self, source: ChainComplex, target: ChainComplex, f: Mapping[int, RationalMatrix],
                 degree: int = 0, check: bool = True):
        self.source, self.target, self.degree = source, target, degree
        comps = {}
        for n, m in f.items():
            want = (target.dim(n + degree), source.dim(n))
            if m.shape != want:
                raise ShapeMismatch(f"component {n} has shape {m.shape}, expected {want}")
            if m.nnz:
                comps[n] = m
        self.f = comps
        if check and not self.commutes():
            raise NotAComplex("map does not commute with the differentials")

    def comp(self, n: int) -> RationalMatrix:
        m = self.f.get(n)
        if m is None:
            return RationalMatrix.zeros(self.target.dim(n + self.degree), self.source.dim(n))
        return m

    def commutes(self) -> bool:
        sign = -1 if self.degree % 2 else 1
        degs = set(self.source.dims) | {n - self.degree for n in self.target.dims}
        for n in degs:
            lhs = self.target.diff(n + self.degree) @ self.comp(n)
            rhs = self.comp(n - 1) @ self.source.diff(n)
            if lhs != rhs.scale(sign):
                return False
        return True

    def compose(self, other: "ChainMap") -> "ChainMap":
        """``self o other``."""
        comps = {n: self.comp(n + other.degree) @ other.comp(n) for n in other.source.dims}
        return ChainMap(other.source, self.target, comps, self.degree + other.degree, check=False)

    def is_isomorphism(self) -> bool:
        if self.degree != 0:
            return False
        for n in set(self.source.dims) | set(self.target.dims):
            if self.source.dim(n) != self.target.dim(n) or rank(self.comp(n)) != self.source.dim(n):
                return False
        return True


def identity_map(X: ChainComplex) -> ChainMap:
    return ChainMap(X, X, {n: RationalMatrix.identity(k) for n, k in X.dims.items()}, check=False)


def zero_map(X: ChainComplex, Y: ChainComplex) -> ChainMap:
    return ChainMap(X, Y, {}, check=False)


def sphere(E_dim: int, n: int) -> ChainComplex:
    return ChainComplex({n: E_dim})


def disk(E_dim: int, n: int) -> ChainComplex:
    return ChainComplex({n: E_dim, n - 1: E_dim}, {n: RationalMatrix.identity(E_dim)})


def zero_complex() -> ChainComplex:
    return ChainComplex({})


def shift(X: ChainComplex, k: int) -> ChainComplex:
    sign = -1 if k % 2 else 1
    dims = {n - k: m for n, m in X.dims.items()}
    d = {n - k: m.scale(sign) for n, m in X.d.items()}
    labels = {n - k: v for n, v in X.labels.items()}
    return ChainComplex(dims, d, labels, check=False, meta=X.meta)


def shift_map(f: ChainMap, k: int) -> ChainMap:
    return ChainMap(shift(f.source, k), shift(f.target, k), {n - k: m for n, m in f.f.items()},
                    f.degree, check=False)


def direct_sum(*Xs: ChainComplex) -> ChainComplex:
    degs = sorted(set().union(*[X.dims for X in Xs])) if Xs else []
    dims = {n: sum(X.dim(n) for X in Xs) for n in degs}
    d = {}
    for n in degs:
        blocks = {(i, i): X.diff(n) for i, X in enumerate(Xs)}
        m = RationalMatrix.block([X.dim(n - 1) for X in Xs], [X.dim(n) for X in Xs], blocks)
        if m.nnz:
            d[n] = m
    return ChainComplex(dims, d, check=False)


def cone(f: ChainMap) -> ChainComplex:
    if f.degree != 0:
        raise ShapeMismatch("cone needs a degree-zero map")
    X, Y = f.source, f.target
    xsign = 1 if debug.active("cone-sign") else -1
    degs = sorted({n + 1 for n in X.dims} | set(Y.dims))
    dims = {n: X.dim(n - 1) + Y.dim(n) for n in degs}
    d = {}
    for n in degs:
        blocks = {
            (0, 0): X.diff(n - 1).scale(xsign),
            (1, 0): -f.comp(n - 1),
            (1, 1): Y.diff(n),
        }
        m = RationalMatrix.block([X.dim(n - 2), Y.dim(n - 1)], [X.dim(n - 1), Y.dim(n)], blocks)
        if m.nnz:
            d[n] = m
    labels = {}
    if X.labels or Y.labels:
        for n in degs:
            labels[n] = ([f"s({X.label(n - 1, i)})" for i in range(X.dim(n - 1))]
                         + [Y.label(n, i) for i in range(Y.dim(n))])
    return ChainComplex(dims, d, labels, check=not debug.active("cone-sign"))


def cone_sequence(f: ChainMap):
    """Canonical inclusion ``Y -> cone(f)`` and projection ``cone(f) -> X[-1]``."""
    C = cone(f)
    X, Y = f.source, f.target
    inc, proj = {}, {}
    for n in C.dims:
        xd, yd = X.dim(n - 1), Y.dim(n)
        if yd:
            inc[n] = RationalMatrix(xd + yd, yd, {(xd + i, i): 1 for i in range(yd)})
        if xd:
            proj[n] = RationalMatrix(xd, xd + yd, {(i, i): 1 for i in range(xd)})
    Xs = shift(X, -1)
    return (ChainMap(Y, C, inc, check=False), ChainMap(C, Xs, proj, check=False))


def truncate_ge(X: ChainComplex, n: int) -> ChainComplex:
    dims, d, labels = {}, {}, {}
    for m, k in X.dims.items():
        if m > n:
            dims[m] = k
            if m in X.labels:
                labels[m] = X.labels[m]
    for m, mat in X.d.items():
        if m > n + 1:
            d[m] = mat
    K = kernel_basis(X.diff(n)).as_matrix()
    if K.cols:
        dims[n] = K.cols
        up = X.diff(n + 1)
        if up.cols:
            coords = solve(K, up)
            d[n + 1] = coords
    return ChainComplex(dims, d, labels, check=False)


def tensor(X: ChainComplex, Y: ChainComplex) -> ChainComplex:
    """Graded tensor product; basis of degree n ordered by (deg x, x, y)."""
    koszul = not debug.active("tensor-sign")
    index, labels = {}, {}
    for i in X.degrees:
        for j in Y.degrees:
            n = i + j
            lst = labels.setdefault(n, [])
            for a in range(X.dims[i]):
                for b in range(Y.dims[j]):
                    index[(i, a, j, b)] = (n, len(lst))
                    lst.append(f"{X.label(i, a)}|{Y.label(j, b)}")
    dims = {n: len(v) for n, v in labels.items()}
    ents: dict = {}
    for (i, a, j, b), (n, col) in index.items():
        for r, v in X.diff(i).apply({a: 1}).items():
            ents.setdefault(n, {})[(index[(i - 1, r, j, b)][1], col)] = v
        sign = -1 if (i % 2 and koszul) else 1
        for r, v in Y.diff(j).apply({b: 1}).items():
            key = (index[(i, a, j - 1, r)][1], col)
            bucket = ents.setdefault(n, {})
            bucket[key] = bucket.get(key, 0) + sign * v
    d = {n: RationalMatrix(dims.get(n - 1, 0), dims[n], e) for n, e in ents.items()}
    has_labels = bool(X.labels or Y.labels)
    return ChainComplex(dims, d, labels if has_labels else None, check=koszul)


def dual(X: ChainComplex) -> ChainComplex:
    dims = {-n: k for n, k in X.dims.items()}
    d = {}
    for n in dims:
        src = X.d.get(1 - n)
        if src is not None:
            sign = 1 if n % 2 else -1
            d[n] = src.transpose().scale(sign)
    labels = {-n: [f"{x}^" for x in v] for n, v in X.labels.items()}
    return ChainComplex(dims, d, labels, check=False)


def dual_map(f: ChainMap) -> ChainMap:
    """Transpose of a degree-zero chain map, ``Y^v -> X^v``."""
    if f.degree:
        raise ShapeMismatch("dual_map expects a degree-zero map")
    comps = {-n: m.transpose() for n, m in f.f.items()}
    return ChainMap(dual(f.target), dual(f.source), comps, check=False)


def double_dual_iso(X: ChainComplex) -> ChainMap:
    """Evaluation ``X -> X^vv``, ``x -> (phi -> (-1)^{|x||phi|} phi(x))``."""
    comps = {n: RationalMatrix.identity(k).scale(-1 if n % 2 else 1) for n, k in X.dims.items()}
    return ChainMap(X, dual(dual(X)), comps, check=False)


def is_quasi_iso(f: ChainMap) -> bool:
    return cone(f).is_acyclic()


def from_flat(degrees: list, columns: list, labels: list | None = None, meta=None) -> ChainComplex:
    """Build a complex from a flat graded basis.

    ``degrees[i]`` is the degree of basis vector i and ``columns[i]`` the
    differential of vector i as ``{j: coeff}`` in flat indices.
    """
    pos, dims = [], {}
    for g in degrees:
        pos.append(dims.get(g, 0))
        dims[g] = dims.get(g, 0) + 1
    ents: dict = {}
    for i, col in enumerate(columns):
        g = degrees[i]
        for j, v in col.items():
            if not v:
                continue
            if degrees[j] != g - 1:
                raise ShapeMismatch(f"differential of basis {i} has degree {degrees[j] - g}")
            ents.setdefault(g, []).append((pos[j], pos[i], v))
    d = {g: RationalMatrix(dims.get(g - 1, 0), dims[g], e) for g, e in ents.items()}
    labs = None
    if labels is not None:
        labs = {}
        for i, g in enumerate(degrees):
            labs.setdefault(g, []).append(labels[i])
    return ChainComplex(dims, d, labs, check=False, meta=meta)


def flat_chain_map(source: ChainComplex, source_degrees: list, target: ChainComplex, target_degrees: list,
                   M: RationalMatrix, degree: int = 0, check: bool = False) -> ChainMap:
    """Chain map from a matrix between flat bases (as used by :func:`from_flat`)."""
    sp, tp = flat_positions(source_degrees), flat_positions(target_degrees)
    ents: dict = {}
    for r, c, v in M.triples():
        g = source_degrees[c]
        if target_degrees[r] != g + degree:
            raise ShapeMismatch(f"entry ({r},{c}) does not have degree {degree}")
        ents.setdefault(g, []).append((tp[r], sp[c], v))
    comps = {g: RationalMatrix(target.dim(g + degree), source.dim(g), e) for g, e in ents.items()}
    return ChainMap(source, target, comps, degree, check=check)


def flat_positions(degrees: list) -> list:
    """Position of each flat basis vector inside its degree block."""
    seen: dict = {}
    out = []
    for g in degrees:
        out.append(seen.get(g, 0))
        seen[g] = seen.get(g, 0) + 1
    return out
