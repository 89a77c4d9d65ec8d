"""Symmetric modules and the products built on them.

A symmetric module exposes, for every arity ``n``, a graded basis with a
differential and an action of the symmetric group.  Internally the action is
given by ``relabel(n, i, lam)``: rename input ``p`` to ``lam[p]``.  This is a
left action; the right action of the module structure is
``act(sigma) = relabel(sigma^-1)`` so that ``act(st) = act(t) act(s)``.

Permutations are tuples with ``p[i]`` the image of ``i``.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from . import trees as T
from .complexes import ChainComplex, ChainMap, from_flat
from .errors import ArityOverflow, NotAComplex, NotReduced, ParseError, ShapeMismatch
from .exactla import RationalMatrix, pivot_columns, solve, to_fraction

ONE = Fraction(1)


class SymModule:
    """Base class; subclasses implement ``dim``, ``degree`` and ``relabel``."""

    name = "M"
    max_arity = 0
    min_arity = 0

    def _register(self, name: str):
        self.name = name
        self.key = T.register(self, name)

    # -- required ---------------------------------------------------------
    def dim(self, n: int) -> int:
        raise NotImplementedError

    def degree(self, n: int, i: int) -> int:
        raise NotImplementedError

    def relabel(self, n: int, i: int, lam) -> dict:
        raise NotImplementedError

    # -- optional ---------------------------------------------------------
    def diff(self, n: int, i: int) -> dict:
        return {}

    def weight(self, n: int, i: int) -> int:
        return 0

    def label(self, n: int, i: int) -> str:
        return f"{self.name}{n}_{i}"

    # -- derived ----------------------------------------------------------
    def arities(self):
        return [n for n in range(self.min_arity, self.max_arity + 1) if self.dim(n)]

    def act(self, n: int, i: int, sigma) -> dict:
        """Right action of ``sigma`` on basis vector ``i``."""
        return self.relabel(n, i, T.inverse_perm(sigma))

    def action_matrix(self, n: int, sigma) -> RationalMatrix:
        return RationalMatrix.from_columns(self.dim(n), [self.act(n, i, sigma) for i in range(self.dim(n))])

    def relabel_matrix(self, n: int, lam) -> RationalMatrix:
        return RationalMatrix.from_columns(self.dim(n), [self.relabel(n, i, lam) for i in range(self.dim(n))])

    def diff_matrix(self, n: int) -> RationalMatrix:
        return RationalMatrix.from_columns(self.dim(n), [self.diff(n, i) for i in range(self.dim(n))])

    def degrees(self, n: int) -> list:
        return [self.degree(n, i) for i in range(self.dim(n))]

    def component(self, n: int) -> ChainComplex:
        """Arity-n component as a chain complex (basis grouped by degree)."""
        return from_flat(self.degrees(n), [self.diff(n, i) for i in range(self.dim(n))],
                         [self.label(n, i) for i in range(self.dim(n))])

    def check(self, arities=None):
        """Validate group action and differential; raises on failure."""
        for n in arities or self.arities():
            D = self.diff_matrix(n)
            if not (D @ D).is_zero():
                raise NotAComplex(f"{self.name}: d^2 != 0 in arity {n}")
            for i in range(self.dim(n)):
                for j, _ in self.diff(n, i).items():
                    if self.degree(n, j) != self.degree(n, i) - 1:
                        raise ShapeMismatch(f"{self.name}: differential not of degree -1")
            if n < 2:
                continue
            gens = [adjacent(n, k) for k in range(n - 1)]
            for s in gens:
                A = self.action_matrix(n, s)
                if A @ A != RationalMatrix.identity(self.dim(n)):
                    raise ShapeMismatch(f"{self.name}: transposition does not square to 1")
                if A @ D != D @ A:
                    raise NotAComplex(f"{self.name}: action is not a chain map in arity {n}")
                for i in range(self.dim(n)):
                    for j in A.apply({i: 1}):
                        if self.degree(n, j) != self.degree(n, i):
                            raise ShapeMismatch(f"{self.name}: action changes degree")
            for a, b in itertools.product(all_perms(n)[:12], repeat=2):
                ab = T.compose_perm(a, b)
                lhs = self.action_matrix(n, ab)
                rhs = self.action_matrix(n, b) @ self.action_matrix(n, a)
                if lhs != rhs:
                    raise ShapeMismatch(f"{self.name}: not a right action in arity {n}")
        return True

    def averaging_idempotent(self, n: int) -> RationalMatrix:
        perms = all_perms(n)
        acc = RationalMatrix.zeros(self.dim(n), self.dim(n))
        for p in perms:
            acc = acc + self.action_matrix(n, p)
        return acc.scale(Fraction(1, len(perms)))

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} max_arity={self.max_arity}>"


@lru_cache(maxsize=None)
def all_perms(n: int) -> tuple:
    return tuple(itertools.permutations(range(n)))


def adjacent(n: int, k: int) -> tuple:
    p = list(range(n))
    p[k], p[k + 1] = p[k + 1], p[k]
    return tuple(p)


# -- concrete modules ---------------------------------------------------------

class ExplicitSymModule(SymModule):
    """Module given by graded bases, differentials and adjacent-transposition matrices.

    ``generators[n][k]`` is the matrix of the right action of the
    transposition ``(k k+1)``; the full action is rebuilt and validated.
    """

    def __init__(self, degrees: dict, generators: dict | None = None, diffs: dict | None = None,
                 labels: dict | None = None, name: str = "M", check: bool = True):
        self._deg = {int(n): list(v) for n, v in degrees.items()}
        self.max_arity = max(self._deg) if self._deg else 0
        self.min_arity = min(self._deg) if self._deg else 0
        self._gens = {int(n): list(v) for n, v in (generators or {}).items()}
        self._diff = {}
        for n, m in (diffs or {}).items():
            m = m if isinstance(m, RationalMatrix) else RationalMatrix.from_dense(m)
            self._diff[int(n)] = m.col_dict()
        self._labels = {int(n): list(v) for n, v in (labels or {}).items()}
        self._actions: dict = {}
        self._register(name)
        for n in self._deg:
            self._build_action(n)
        if check:
            self.check()

    def dim(self, n):
        return len(self._deg.get(n, ()))

    def degree(self, n, i):
        return self._deg[n][i]

    def diff(self, n, i):
        return dict(self._diff.get(n, {}).get(i, {}))

    def label(self, n, i):
        labs = self._labels.get(n)
        return labs[i] if labs else super().label(n, i)

    def _build_action(self, n):
        d = self.dim(n)
        ident = tuple(range(n))
        table = {ident: RationalMatrix.identity(d)}
        if n >= 2:
            gens = self._gens.get(n)
            if gens is None or len(gens) != n - 1:
                raise ShapeMismatch(f"arity {n} needs {n - 1} transposition matrices")
            gens = [g if isinstance(g, RationalMatrix) else RationalMatrix.from_dense(g) for g in gens]
            frontier = [ident]
            while frontier:
                nxt = []
                for p in frontier:
                    for k, g in enumerate(gens):
                        q = T.compose_perm(p, adjacent(n, k))
                        m = g @ table[p]
                        if q in table:
                            if table[q] != m:
                                raise ShapeMismatch(f"transposition matrices do not define an action in arity {n}")
                        else:
                            table[q] = m
                            nxt.append(q)
                frontier = nxt
        self._actions[n] = {p: m.col_dict() for p, m in table.items()}

    def act(self, n, i, sigma):
        return dict(self._actions[n][tuple(sigma)].get(i, {}))

    def relabel(self, n, i, lam):
        return self.act(n, i, T.inverse_perm(lam))


class SignTwisted(SymModule):
    """Trivial or sign representation in each arity, one basis vector of given degree."""

    def __init__(self, max_arity: int, degree_fn, sign: bool, name: str, min_arity: int = 1):
        self.max_arity = max_arity
        self.min_arity = min_arity
        self._degree_fn = degree_fn
        self._sign = sign
        self._register(name)

    def dim(self, n):
        return 1 if self.min_arity <= n <= self.max_arity else 0

    def degree(self, n, i):
        return self._degree_fn(n)

    def relabel(self, n, i, lam):
        return {0: Fraction(T.perm_sign(lam) if self._sign else 1)}


class UnitModule(SymModule):
    """The unit I: one-dimensional in arity 1."""

    def __init__(self):
        self.max_arity = 1
        self.min_arity = 1
        self._register("I")

    def dim(self, n):
        return 1 if n == 1 else 0

    def degree(self, n, i):
        return 0

    def relabel(self, n, i, lam):
        return {0: ONE}

    def label(self, n, i):
        return "id"


class VectorModule(SymModule):
    """A chain complex viewed as an arity-0 module (its flat basis)."""

    def __init__(self, X: ChainComplex, name: str = "V", weights=None):
        self.complex = X
        self.max_arity = 0
        self.min_arity = 0
        self._deg, self._lab, self._pos = [], [], {}
        for n in X.degrees:
            for i in range(X.dims[n]):
                self._pos[(n, i)] = len(self._deg)
                self._deg.append(n)
                self._lab.append(X.label(n, i) if X.labels else f"{name}{len(self._deg) - 1}")
        self._weights = list(weights) if weights is not None else [1] * len(self._deg)
        self._diff = []
        for n in X.degrees:
            for i in range(X.dims[n]):
                col = X.diff(n).apply({i: 1})
                self._diff.append({self._pos[(n - 1, r)]: v for r, v in col.items()})
        self._register(name)

    def dim(self, n):
        return len(self._deg) if n == 0 else 0

    def degree(self, n, i):
        return self._deg[i]

    def weight(self, n, i):
        return self._weights[i]

    def relabel(self, n, i, lam):
        return {i: ONE}

    def diff(self, n, i):
        return dict(self._diff[i])

    def label(self, n, i):
        return self._lab[i]

    def vertices(self):
        return [(self.key, 0, i, ()) for i in range(len(self._deg))]

    def flat_index(self, degree: int, pos: int) -> int:
        return self._pos[(degree, pos)]


class TreeModule(SymModule):
    """Module whose arity-n basis is a list of canonical trees with leaves 0..n-1."""

    def __init__(self, name: str, max_arity: int, min_arity: int = 1):
        self.max_arity = max_arity
        self.min_arity = min_arity
        self._bases: dict = {}
        self._index: dict = {}
        self._register(name)

    def basis(self, n: int) -> tuple:
        if n not in self._bases:
            b = tuple(self._enumerate(n)) if self.min_arity <= n <= self.max_arity else ()
            self._bases[n] = b
            self._index[n] = {t: i for i, t in enumerate(b)}
        return self._bases[n]

    def index(self, n: int) -> dict:
        self.basis(n)
        return self._index[n]

    def _enumerate(self, n):
        raise NotImplementedError

    def dim(self, n):
        return len(self.basis(n))

    def degree(self, n, i):
        return T.tdeg(self.basis(n)[i])

    def weight(self, n, i):
        return T.tweight(self.basis(n)[i])

    def label(self, n, i):
        return T.show(self.basis(n)[i])

    def coords(self, n: int, terms: dict) -> dict:
        """Canonicalize a combination of trees and express it in the basis."""
        idx = self.index(n)
        out: dict = {}
        for t, c in T.lincomb_canonical(terms).items():
            j = idx.get(t)
            if j is None:
                if self._drop(t):
                    continue
                raise KeyError(f"{T.show(t)} is not a basis tree of {self.name}({n})")
            out[j] = out.get(j, 0) + c
        return {j: c for j, c in out.items() if c}

    def _drop(self, t) -> bool:
        return False

    def relabel(self, n, i, lam):
        t = T.map_leaves(self.basis(n)[i], lambda p: lam[p])
        return self.coords(n, {t: ONE})

    def diff(self, n, i):
        return self.coords(n, T.internal_diff(self.basis(n)[i]))


class CompositeModule(TreeModule):
    """``M_1 o M_2 o ... o M_r`` on leaves."""

    def __init__(self, levels, max_arity: int, name: str | None = None, keep=None):
        self.levels = tuple(levels)
        self._keep = keep
        name = name or "(" + "o".join(m.name for m in self.levels) + ")"
        super().__init__(name, max_arity)

    def _enumerate(self, n):
        ts = T.leaf_trees(tuple(m.key for m in self.levels), tuple(range(n)))
        if self._keep is not None:
            ts = [t for t in ts if self._keep(t)]
        return ts

    def _drop(self, t):
        return self._keep is not None and not self._keep(t)


class InfCompositeModule(TreeModule):
    """``M o_(1) N``: exactly one N vertex, the remaining inputs bare."""

    def __init__(self, M: SymModule, N: SymModule, max_arity: int, name: str | None = None, keep=None):
        self.top, self.bottom = M, N
        self._keep = keep
        super().__init__(name or f"({M.name}o(1){N.name})", max_arity)

    def _enumerate(self, n):
        ts = T.inf_leaf_trees(self.top.key, self.bottom.key, n)
        if self._keep is not None:
            ts = [t for t in ts if self._keep(t)]
        return ts

    def _drop(self, t):
        return self._keep is not None and not self._keep(t)


class MixedCompositeModule(TreeModule):
    """``M o (N1; N2)``: children from N1 except exactly one from N2."""

    def __init__(self, M, N1, N2, max_arity: int, name: str | None = None):
        self.top, self.n1, self.n2 = M, N1, N2
        super().__init__(name or f"({M.name}o({N1.name};{N2.name}))", max_arity)

    def _enumerate(self, n):
        out = []
        for blocks in T.set_partitions(tuple(range(n))):
            blocks = sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0])
            k = len(blocks)
            if k > self.top.max_arity or not self.top.dim(k):
                continue
            for j in range(k):
                subs = []
                for l, b in enumerate(blocks):
                    mod = self.n2 if l == j else self.n1
                    subs.append([(mod.key, len(b), i, b) for i in range(mod.dim(len(b)))]
                                if len(b) <= mod.max_arity else [])
                for i in range(self.top.dim(k)):
                    for combo in itertools.product(*subs):
                        out.append((self.top.key, k, i, tuple(combo)))
        out.sort(key=T._tree_order)
        return out


class TensorSymModule(SymModule):
    """Day tensor product: induced modules indexed by shuffles."""

    def __init__(self, M: SymModule, N: SymModule, name: str | None = None):
        self.M, self.N = M, N
        self.max_arity = M.max_arity + N.max_arity
        self.min_arity = M.min_arity + N.min_arity
        self._bases: dict = {}
        self._register(name or f"({M.name}(x){N.name})")

    def basis(self, n):
        if n > self.max_arity:
            raise ArityOverflow(f"arity {n} exceeds {self.max_arity}")
        if n not in self._bases:
            out = []
            for i in range(0, n + 1):
                j = n - i
                if not (self.M.dim(i) and self.N.dim(j)):
                    continue
                for S in itertools.combinations(range(n), i):
                    for a in range(self.M.dim(i)):
                        for b in range(self.N.dim(j)):
                            out.append((S, a, b))
            self._bases[n] = (tuple(out), {x: k for k, x in enumerate(out)})
        return self._bases[n][0]

    def dim(self, n):
        return len(self.basis(n)) if n <= self.max_arity else 0

    def degree(self, n, k):
        S, a, b = self.basis(n)[k]
        i = len(S)
        return self.M.degree(i, a) + self.N.degree(n - i, b)

    def _parts(self, n, S):
        Sc = tuple(x for x in range(n) if x not in S)
        return S, Sc

    def relabel(self, n, k, lam):
        S, a, b = self.basis(n)[k]
        S, Sc = self._parts(n, S)
        newS = tuple(sorted(lam[x] for x in S))
        newSc = tuple(sorted(lam[x] for x in Sc))
        la = tuple(newS.index(lam[x]) for x in S)
        lb = tuple(newSc.index(lam[x]) for x in Sc)
        index = self._bases[n][1]
        out = {}
        for a2, ca in self.M.relabel(len(S), a, la).items():
            for b2, cb in self.N.relabel(len(Sc), b, lb).items():
                out[index[(newS, a2, b2)]] = ca * cb
        return out

    def diff(self, n, k):
        S, a, b = self.basis(n)[k]
        i = len(S)
        index = self._bases[n][1]
        out = {}
        for a2, c in self.M.diff(i, a).items():
            out[index[(S, a2, b)]] = out.get(index[(S, a2, b)], 0) + c
        sign = -1 if self.M.degree(i, a) % 2 else 1
        for b2, c in self.N.diff(n - i, b).items():
            key = index[(S, a, b2)]
            out[key] = out.get(key, 0) + sign * c
        return {x: v for x, v in out.items() if v}


class HadamardModule(SymModule):
    """Arity-wise tensor product with the diagonal action."""

    def __init__(self, M: SymModule, N: SymModule, name: str | None = None):
        self.M, self.N = M, N
        self.max_arity = min(M.max_arity, N.max_arity)
        self.min_arity = max(M.min_arity, N.min_arity)
        self._register(name or f"({M.name}(x)H{N.name})")

    def dim(self, n):
        return self.M.dim(n) * self.N.dim(n)

    def _split(self, n, i):
        return divmod(i, self.N.dim(n))

    def degree(self, n, i):
        a, b = self._split(n, i)
        return self.M.degree(n, a) + self.N.degree(n, b)

    def weight(self, n, i):
        a, b = self._split(n, i)
        return self.M.weight(n, a) + self.N.weight(n, b)

    def label(self, n, i):
        a, b = self._split(n, i)
        return f"{self.M.label(n, a)}*{self.N.label(n, b)}"

    def relabel(self, n, i, lam):
        a, b = self._split(n, i)
        dn = self.N.dim(n)
        out = {}
        for a2, ca in self.M.relabel(n, a, lam).items():
            for b2, cb in self.N.relabel(n, b, lam).items():
                out[a2 * dn + b2] = ca * cb
        return out

    def diff(self, n, i):
        a, b = self._split(n, i)
        dn = self.N.dim(n)
        out = {}
        for a2, c in self.M.diff(n, a).items():
            out[a2 * dn + b] = out.get(a2 * dn + b, 0) + c
        sign = -1 if self.M.degree(n, a) % 2 else 1
        for b2, c in self.N.diff(n, b).items():
            out[a * dn + b2] = out.get(a * dn + b2, 0) + sign * c
        return {x: v for x, v in out.items() if v}


class DirectSumModule(SymModule):
    def __init__(self, M: SymModule, N: SymModule, name: str | None = None):
        self.M, self.N = M, N
        self.max_arity = max(M.max_arity, N.max_arity)
        self.min_arity = min(M.min_arity, N.min_arity)
        self._register(name or f"({M.name}+{N.name})")

    def dim(self, n):
        return self.M.dim(n) + self.N.dim(n)

    def _part(self, n, i):
        dm = self.M.dim(n)
        return (self.M, i, 0) if i < dm else (self.N, i - dm, dm)

    def degree(self, n, i):
        mod, j, _ = self._part(n, i)
        return mod.degree(n, j)

    def relabel(self, n, i, lam):
        mod, j, off = self._part(n, i)
        return {off + k: c for k, c in mod.relabel(n, j, lam).items()}

    def diff(self, n, i):
        mod, j, off = self._part(n, i)
        return {off + k: c for k, c in mod.diff(n, j).items()}


# -- maps ---------------------------------------------------------------------

class SymMap:
    """Equivariant map of given degree, ``fn(n, i) -> {j: c}`` on basis vectors."""

    def __init__(self, source: SymModule, target: SymModule, fn, degree: int = 0):
        self.source, self.target, self.fn, self.degree = source, target, fn, degree

    def __call__(self, n, i):
        return self.fn(n, i)

    def matrix(self, n) -> RationalMatrix:
        return RationalMatrix.from_columns(self.target.dim(n), [self.fn(n, i) for i in range(self.source.dim(n))])

    def is_equivariant(self, n) -> bool:
        F = self.matrix(n)
        for k in range(max(n - 1, 0)):
            s = adjacent(n, k)
            if self.target.action_matrix(n, s) @ F != F @ self.source.action_matrix(n, s):
                return False
        return True


def identity_symmap(M: SymModule) -> SymMap:
    return SymMap(M, M, lambda n, i: {i: ONE})


def zero_symmap(M: SymModule, N: SymModule, degree: int = 0) -> SymMap:
    return SymMap(M, N, lambda n, i: {}, degree)


# -- operations ----------------------------------------------------------------

def coinvariants(V: ChainComplex, action) -> tuple:
    """Coinvariants of ``V`` under a group action given as ``{sigma: {degree: matrix}}``.

    Returns ``(complex, projection)``; the complex is the image of the
    averaging idempotent with basis chosen among the projected basis vectors.
    """
    perms = list(action)
    dims, d, proj, sections = {}, {}, {}, {}
    for n in V.degrees:
        k = V.dims[n]
        acc = RationalMatrix.zeros(k, k)
        for p in perms:
            acc = acc + action[p].get(n, RationalMatrix.identity(k))
        E = acc.scale(Fraction(1, len(perms)))
        if not (E @ E == E):
            raise ShapeMismatch("averaging operator is not idempotent; the action is invalid")
        piv = pivot_columns(E)
        dims[n] = len(piv)
        if piv:
            B = E.submatrix(list(range(k)), piv)
            proj[n] = solve(B, E)
            sections[n] = B
    for n in V.degrees:
        if dims.get(n) and dims.get(n - 1):
            d[n] = proj[n - 1] @ V.diff(n) @ sections[n]
    C = ChainComplex(dims, d)
    return C, ChainMap(V, C, proj)


def tensor_sym(M: SymModule, N: SymModule) -> TensorSymModule:
    return TensorSymModule(M, N)


def hadamard(M: SymModule, N: SymModule) -> HadamardModule:
    return HadamardModule(M, N)


def _check_reduced(N: SymModule):
    if N.dim(0):
        raise NotReduced(f"{N.name}(0) is nonzero")


def composite(M: SymModule, N: SymModule, max_arity: int) -> CompositeModule:
    _check_reduced(N)
    return CompositeModule((M, N), max_arity)


def inf_composite(M: SymModule, N: SymModule, max_arity: int | None = None) -> InfCompositeModule:
    _check_reduced(N)
    if max_arity is None:
        max_arity = M.max_arity + N.max_arity - 1
    return InfCompositeModule(M, N, max_arity)


def inf_composite_map(f: SymMap, g: SymMap, max_arity: int) -> tuple:
    """The slot-sum map ``M1 o N1 -> M2 o (N1; N2)`` of ``f`` and ``g``.

    Returns ``(source, target, SymMap)``.
    """
    M1, N1, M2, N2 = f.source, g.source, f.target, g.target
    src = composite(M1, N1, max_arity)
    tgt = MixedCompositeModule(M2, N1, N2, max_arity)

    def fn(n, i):
        t = src.basis(n)[i]
        key, k, idx, ch = t
        out: dict = {}
        pos = M1.degree(k, idx)
        for j, c in enumerate(ch):
            sign = -1 if (g.degree % 2 and pos % 2) else 1
            _, b, bi, bch = c
            for bj, cg in g(b, bi).items():
                newc = (N2.key, b, bj, bch)
                for a2, cf in f(k, idx).items():
                    tree = (M2.key, k, a2, ch[:j] + (newc,) + ch[j + 1:])
                    T.add_into(out, {tree: sign * cf * cg})
            pos += T.tdeg(c)
        return tgt.coords(n, out)

    return src, tgt, SymMap(src, tgt, fn, f.degree + g.degree)


def schur(M: SymModule, V: ChainComplex, max_weight: int) -> dict:
    """Weight pieces ``M(n) (x)_{S_n} V^{(x)n}`` for n <= max_weight."""
    A = VectorModule(V)
    out = {}
    for w in range(0, max_weight + 1):
        if w == 0:
            basis = [(M.key, 0, i, ()) for i in range(M.dim(0))]
        else:
            basis = T.bottom_trees((M.key,), A.vertices(), lambda v: 1, w)
        out[w] = complex_from_trees(basis, T.internal_diff, meta={"weight": w, "max_weight": max_weight})
    return out


def complex_from_trees(basis, op, drop=None, meta=None, extra=None) -> ChainComplex:
    """Chain complex on a list of canonical trees with differential ``op``."""
    index = {t: i for i, t in enumerate(basis)}
    cols = []
    for t in basis:
        terms = T.lincomb_canonical(op(t))
        if extra is not None:
            T.add_into(terms, T.lincomb_canonical(extra(t)))
        col = {}
        for s, c in terms.items():
            j = index.get(s)
            if j is None:
                if drop is not None and drop(s):
                    continue
                raise KeyError(f"{T.show(s)} falls outside the basis")
            col[j] = col.get(j, 0) + c
        cols.append({j: c for j, c in col.items() if c})
    degs = [T.tdeg(t) for t in basis]
    return from_flat(degs, cols, [T.show(t) for t in basis], meta=meta)


def flat_matrix(basis_src, basis_tgt, fn, drop=None) -> RationalMatrix:
    """Matrix of a map between tree bases given on trees."""
    index = {t: i for i, t in enumerate(basis_tgt)}
    cols = []
    for t in basis_src:
        col = {}
        for s, c in T.lincomb_canonical(fn(t)).items():
            j = index.get(s)
            if j is None:
                if drop is not None and drop(s):
                    continue
                raise KeyError(f"{T.show(s)} falls outside the target basis")
            col[j] = col.get(j, 0) + c
        cols.append({j: c for j, c in col.items() if c})
    return RationalMatrix.from_columns(len(basis_tgt), cols)


def dims_by_arity(M: SymModule, max_arity: int) -> dict:
    return {n: M.dim(n) for n in range(0, max_arity + 1)}


def from_json(obj) -> ExplicitSymModule:
    """Parse ``{"arities": {n: {"degrees": [...], "generators": [...], "diff": [...]}}}``."""
    try:
        ar = obj["arities"]
        degrees, gens, diffs = {}, {}, {}
        for n, comp in ar.items():
            n = int(n)
            degrees[n] = [int(x) for x in comp["degrees"]]
            dim = len(degrees[n])
            if "generators" in comp:
                gens[n] = [RationalMatrix(dim, dim, [(r, c, to_fraction(v)) for r, c, v in g])
                           for g in comp["generators"]]
            if "diff" in comp:
                diffs[n] = RationalMatrix(dim, dim, [(r, c, to_fraction(v)) for r, c, v in comp["diff"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"invalid symmetric module description: {exc}") from None
    return ExplicitSymModule(degrees, gens, diffs, name=obj.get("name", "M"))


__all__ = [
    "SymModule", "ExplicitSymModule", "SignTwisted", "UnitModule", "VectorModule", "TreeModule",
    "CompositeModule", "InfCompositeModule", "MixedCompositeModule", "TensorSymModule",
    "HadamardModule", "DirectSumModule", "SymMap", "coinvariants", "tensor_sym", "hadamard",
    "composite", "inf_composite", "inf_composite_map", "schur", "complex_from_trees",
    "flat_matrix", "all_perms", "adjacent",
]
