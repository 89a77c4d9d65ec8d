"""Operads, cooperads and their (co)algebras.

Operads are stored through partial compositions ``compose(m, a, i, n, b)``:
the basis element ``b`` of arity ``n`` plugged into input ``i`` (0-based) of
the basis element ``a`` of arity ``m``.  Inputs of the result are the outer
inputs before ``i``, then the inner ones, then the remaining outer ones.
Full and infinitesimal compositions are derived on tree bases.

Cooperads are arity-wise duals of finite operads: the decomposition is the
transpose of the composition in the canonical tree bases, the action is
contragredient and the differential is the transpose of the operad's.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from . import debug
from . import trees as T
from .complexes import ChainComplex, dual, from_flat, shift
from .errors import (
    AlgebraAxiomFailure,
    AntisymmetryFailure,
    ArityViolation,
    JacobiFailure,
    LeibnizFailure,
    NotAlgebraOverTarget,
    NotAComplex,
    ParseError,
    ShapeMismatch,
)
from .exactla import RationalMatrix, to_fraction
from .symmod import (
    CompositeModule,
    HadamardModule,
    InfCompositeModule,
    SymModule,
    VectorModule,
    adjacent,
    all_perms,
    flat_matrix,
)

ONE = Fraction(1)


def _acc(out: dict, k, v):
    s = out.get(k, 0) + v
    if s:
        out[k] = s
    else:
        out.pop(k, None)


# -- operads ---------------------------------------------------------------------

class Operad(SymModule):
    """Operad given by partial compositions; subclasses define ``compose``."""

    unit_index = 0

    def compose(self, m: int, a: int, i: int, n: int, b: int) -> dict:
        raise NotImplementedError

    def augmentation(self, n: int, i: int) -> Fraction:
        return ONE if (n == 1 and i == self.unit_index) else Fraction(0)

    def partial_matrix(self, m: int, n: int, i: int) -> RationalMatrix:
        """Matrix of ``o_i: P(m) (x) P(n) -> P(m+n-1)``, column ``a*dim(n)+b``."""
        dn = self.dim(n)
        cols = []
        for a in range(self.dim(m)):
            for b in range(dn):
                cols.append(self.compose(m, a, i, n, b))
        return RationalMatrix.from_columns(self.dim(m + n - 1), cols)

    def vertex(self, n, i, children):
        return (self.key, n, i, tuple(children))

    def gamma1(self, n: int):
        """``(source_module, matrix)`` of the infinitesimal composition in arity n."""
        src = InfCompositeModule(self, self, n)
        tgt = [(self.key, n, j, tuple(range(n))) for j in range(self.dim(n))]
        return src, flat_matrix(src.basis(n), tgt, T.collapse)

    def gamma(self, n: int):
        src = CompositeModule((self, self), n)
        tgt = [(self.key, n, j, tuple(range(n))) for j in range(self.dim(n))]
        return src, flat_matrix(src.basis(n), tgt, T.collapse)

    def unit_vector(self) -> dict:
        return {self.unit_index: ONE}

    def check_axioms(self, max_arity: int | None = None):
        check_operad(self, max_arity or self.max_arity)
        return True


def check_operad(P: Operad, N: int):
    """Associativity, unit, equivariance and differential compatibility up to arity N."""
    ar = [n for n in range(1, N + 1) if P.dim(n)]
    def comp(x: dict, m, i, n, y: dict):
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for r, c in P.compose(m, a, i, n, b).items():
                    _acc(out, r, ca * cb * c)
        return out

    u = P.unit_vector()
    for n in ar:
        for a in range(P.dim(n)):
            if comp(u, 1, 0, n, {a: 1}) != {a: 1}:
                raise AlgebraAxiomFailure(f"{P.name}: left unit fails on {n},{a}")
            for i in range(n):
                if comp({a: 1}, n, i, 1, u) != {a: 1}:
                    raise AlgebraAxiomFailure(f"{P.name}: right unit fails on {n},{a},{i}")

    for l, m, n in itertools.product(ar, repeat=3):
        if l + m + n - 2 > N:
            continue
        for a, b, c in itertools.product(range(P.dim(l)), range(P.dim(m)), range(P.dim(n))):
            dc = P.degree(n, c)
            db = P.degree(m, b)
            for i in range(l):
                # sequential: (a o_i b) o_{i+j} c = a o_i (b o_j c)
                ab = P.compose(l, a, i, m, b)
                for j in range(m):
                    lhs = comp(ab, l + m - 1, i + j, n, {c: 1})
                    rhs = comp({a: 1}, l, i, m + n - 1, P.compose(m, b, j, n, c))
                    if lhs != rhs:
                        raise AlgebraAxiomFailure(f"{P.name}: sequential associativity ({l},{m},{n},{i},{j})")
                # parallel: (a o_i b) o_{k+m-1} c = (-1)^{|b||c|} (a o_k c) o_i b  for k > i
                for k in range(i + 1, l):
                    lhs = comp(ab, l + m - 1, k + m - 1, n, {c: 1})
                    ac = P.compose(l, a, k, n, c)
                    rhs = comp(ac, l + n - 1, i, m, {b: 1})
                    sign = -1 if (db % 2 and dc % 2) else 1
                    if lhs != {r: sign * v for r, v in rhs.items()}:
                        raise AlgebraAxiomFailure(f"{P.name}: parallel associativity ({l},{m},{n},{i},{k})")
    # differential is a derivation of each partial composition
    for m, n in itertools.product(ar, repeat=2):
        if m + n - 1 > N:
            continue
        for a, b in itertools.product(range(P.dim(m)), range(P.dim(n))):
            sa = -1 if P.degree(m, a) % 2 else 1
            for i in range(m):
                lhs: dict = {}
                for r, c in P.compose(m, a, i, n, b).items():
                    for s, e in P.diff(m + n - 1, r).items():
                        _acc(lhs, s, c * e)
                rhs = comp(P.diff(m, a), m, i, n, {b: 1})
                for s, e in comp({a: 1}, m, i, n, P.diff(n, b)).items():
                    _acc(rhs, s, sa * e)
                if lhs != rhs:
                    raise AlgebraAxiomFailure(f"{P.name}: differential is not a derivation ({m},{n},{i})")
    # equivariance of the full composition on trees
    for n in range(2, N + 1):
        src, G = P.gamma(n)
        for k in range(n - 1):
            s = adjacent(n, k)
            A = P.relabel_matrix(n, s)
            B = src.relabel_matrix(n, s)
            if A @ G != G @ B:
                raise AlgebraAxiomFailure(f"{P.name}: composition is not equivariant in arity {n}")
    for n in ar:
        P.check([n])


class AssOperad(Operad):
    """Associative operad; arity-n basis = words (permutations of 0..n-1)."""

    def __init__(self, max_arity: int, unital: bool = False):
        self.max_arity = max_arity
        self.min_arity = 0 if unital else 1
        self._register("Ass" if unital else "Ass_nu")

    def words(self, n):
        return all_perms(n)

    @lru_cache(maxsize=None)
    def _windex(self, n):
        return {w: i for i, w in enumerate(all_perms(n))}

    def dim(self, n):
        return len(all_perms(n)) if self.min_arity <= n <= self.max_arity else 0

    def degree(self, n, i):
        return 0

    def label(self, n, i):
        return "x" + "".join(str(x) for x in all_perms(n)[i]) if n else "1"

    def relabel(self, n, i, lam):
        w = all_perms(n)[i]
        return {self._windex(n)[tuple(lam[x] for x in w)]: ONE}

    def compose(self, m, a, i, n, b):
        if m + n - 1 > self.max_arity:
            return {}
        return {self._windex(m + n - 1)[ass_substitute(all_perms(m)[a], i, all_perms(n)[b])]: ONE}


def ass_substitute(u, i, v):
    n = len(v)
    out = []
    for x in u:
        if x < i:
            out.append(x)
        elif x == i:
            out.extend(y + i for y in v)
        else:
            out.append(x + n - 1)
    return tuple(out)


class CommOperad(Operad):
    def __init__(self, max_arity: int, unital: bool = False):
        self.max_arity = max_arity
        self.min_arity = 0 if unital else 1
        self._register("Comm" if unital else "Comm_nu")

    def dim(self, n):
        return 1 if self.min_arity <= n <= self.max_arity else 0

    def degree(self, n, i):
        return 0

    def label(self, n, i):
        return f"m{n}"

    def relabel(self, n, i, lam):
        return {0: ONE}

    def compose(self, m, a, i, n, b):
        return {0: ONE} if m + n - 1 <= self.max_arity else {}


class LieOperad(Operad):
    """Lie operad inside Ass: basis = left-normed brackets with first letter 0."""

    def __init__(self, max_arity: int):
        self.max_arity = max_arity
        self.min_arity = 1
        self._register("Lie")
        self._words = {}
        self._windex = {}

    def words(self, n):
        if n not in self._words:
            ws = [(0,) + p for p in itertools.permutations(range(1, n))] if n >= 1 else []
            self._words[n] = ws
            self._windex[n] = {w: i for i, w in enumerate(ws)}
        return self._words[n]

    def dim(self, n):
        return len(self.words(n)) if 1 <= n <= self.max_arity else 0

    def degree(self, n, i):
        return 0

    def label(self, n, i):
        w = self.words(n)[i]
        s = f"x{w[0]}"
        for x in w[1:]:
            s = f"[{s},x{x}]"
        return s

    @lru_cache(maxsize=None)
    def expand(self, n: int, i: int) -> tuple:
        """The basis element as a combination of words in Ass(n)."""
        w = self.words(n)[i]
        cur = {(w[0],): ONE}
        for x in w[1:]:
            nxt: dict = {}
            for u, c in cur.items():
                _acc(nxt, u + (x,), c)
                _acc(nxt, (x,) + u, -c)
            cur = nxt
        return tuple(sorted(cur.items()))

    def coords(self, n: int, vec: dict) -> dict:
        self.words(n)
        idx = self._windex[n]
        return {idx[u]: c for u, c in vec.items() if u[0] == 0 and c}

    @lru_cache(maxsize=None)
    def _relabel(self, n, i, lam):
        vec: dict = {}
        for u, c in self.expand(n, i):
            _acc(vec, tuple(lam[x] for x in u), c)
        self.words(n)
        return tuple(sorted(self.coords(n, vec).items()))

    def relabel(self, n, i, lam):
        return dict(self._relabel(n, i, tuple(lam)))

    @lru_cache(maxsize=None)
    def _compose(self, m, a, i, n, b):
        vec: dict = {}
        for u, cu in self.expand(m, a):
            for v, cv in self.expand(n, b):
                _acc(vec, ass_substitute(u, i, v), cu * cv)
        self.words(m + n - 1)
        return tuple(sorted(self.coords(m + n - 1, vec).items()))

    def compose(self, m, a, i, n, b):
        if m + n - 1 > self.max_arity:
            return {}
        return dict(self._compose(m, a, i, n, b))

    def ass_vector(self, n: int, coords: dict) -> dict:
        vec: dict = {}
        for i, c in coords.items():
            for u, cu in self.expand(n, i):
                _acc(vec, u, c * cu)
        return vec

    def closure_check(self, N: int) -> bool:
        """Compositions computed in Ass stay inside the Dynkin span."""
        for m in range(1, N + 1):
            for n in range(1, N + 2 - m):
                for a in range(self.dim(m)):
                    for b in range(self.dim(n)):
                        for i in range(m):
                            full: dict = {}
                            for u, cu in self.expand(m, a):
                                for v, cv in self.expand(n, b):
                                    _acc(full, ass_substitute(u, i, v), cu * cv)
                            if self.ass_vector(m + n - 1, self.compose(m, a, i, n, b)) != full:
                                return False
        return True


class SuspensionOperad(Operad):
    """Endomorphism operad of a one-dimensional space in degree 1.

    Arity n is spanned by ``nu_n`` of degree ``1-n`` with the sign action, and
    ``nu_m o_i nu_n = (-1)^{(n-1) i} nu_{m+n-1}`` for 0-based ``i``.
    """

    def __init__(self, max_arity: int):
        self.max_arity = max_arity
        self.min_arity = 1
        self._register("S")
        self._flip = debug.active("kappa-sign")

    def dim(self, n):
        return 1 if 1 <= n <= self.max_arity else 0

    def degree(self, n, i):
        return 1 - n

    def label(self, n, i):
        return f"nu{n}"

    def relabel(self, n, i, lam):
        return {0: Fraction(T.perm_sign(lam))}

    def compose(self, m, a, i, n, b):
        if m + n - 1 > self.max_arity:
            return {}
        s = -1 if ((n - 1) * i) % 2 else 1
        if self._flip and m == 2 and n == 2 and i == 1:
            s = -s
        return {0: Fraction(s)}


class HadamardOperad(HadamardModule, Operad):
    def __init__(self, P: Operad, Qp: Operad, name: str | None = None):
        HadamardModule.__init__(self, P, Qp, name or f"({P.name}(x)H{Qp.name})")
        self.unit_index = P.unit_index * Qp.dim(1) + Qp.unit_index

    def compose(self, m, a, i, n, b):
        P, Qp = self.M, self.N
        a1, a2 = divmod(a, Qp.dim(m))
        b1, b2 = divmod(b, Qp.dim(n))
        sign = -1 if (Qp.degree(m, a2) % 2 and P.degree(n, b1) % 2) else 1
        dr = Qp.dim(m + n - 1)
        out = {}
        for r1, c1 in P.compose(m, a1, i, n, b1).items():
            for r2, c2 in Qp.compose(m, a2, i, n, b2).items():
                out[r1 * dr + r2] = sign * c1 * c2
        return out


class EndOperad(Operad):
    """Reduced endomorphism operad of a finite complex W (arities >= 1)."""

    def __init__(self, W: ChainComplex, max_arity: int, name: str = "End"):
        self.W = W
        self.max_arity = max_arity
        self.min_arity = 1
        V = VectorModule(W, name="w")
        self._wdeg = [V.degree(0, i) for i in range(V.dim(0))]
        self._wd = [V.diff(0, i) for i in range(V.dim(0))]
        self._d = len(self._wdeg)
        self._register(name)
        self.unit_index = None

    def dim(self, n):
        return self._d ** (n + 1) if 1 <= n <= self.max_arity else 0

    def decode(self, n, i):
        o, rest = divmod(i, self._d ** n)
        ins = []
        for _ in range(n):
            rest, x = divmod(rest, self._d)
            ins.append(x)
        return o, tuple(reversed(ins))

    def encode(self, o, ins):
        i = o
        for x in ins:
            i = i * self._d + x
        return i

    def degree(self, n, i):
        o, ins = self.decode(n, i)
        return self._wdeg[o] - sum(self._wdeg[x] for x in ins)

    def label(self, n, i):
        o, ins = self.decode(n, i)
        return f"E[{o}<-{''.join(map(str, ins))}]"

    def relabel(self, n, i, lam):
        o, ins = self.decode(n, i)
        new = [0] * n
        for p in range(n):
            new[lam[p]] = ins[p]
        inv = T.inverse_perm(lam)
        sign = T.koszul_sign([self._wdeg[x] for x in new], inv)
        return {self.encode(o, new): Fraction(sign)}

    def compose(self, m, a, i, n, b):
        if m + n - 1 > self.max_arity:
            return {}
        o, A = self.decode(m, a)
        o2, B = self.decode(n, b)
        if o2 != A[i]:
            return {}
        before = sum(self._wdeg[x] for x in A[:i])
        sign = -1 if (self.degree(n, b) % 2 and before % 2) else 1
        return {self.encode(o, A[:i] + B + A[i + 1:]): Fraction(sign)}

    def diff(self, n, i):
        o, A = self.decode(n, i)
        out: dict = {}
        for o2, c in self._wd[o].items():
            _acc(out, self.encode(o2, A), c)
        sf = -1 if self.degree(n, i) % 2 else 1
        pre = 0
        for p in range(n):
            sp = -1 if pre % 2 else 1
            # (f o d)(w_A') picks up d(w_r) -> w_{A_p}
            for r in range(self._d):
                c = self._wd[r].get(A[p])
                if c:
                    _acc(out, self.encode(o, A[:p] + (r,) + A[p + 1:]), -sf * sp * c)
            pre += self._wdeg[A[p]]
        return out

    def unit_vector(self):
        return {self.encode(o, (o,)): ONE for o in range(self._d)}


class TensorOperad(Operad):
    """Tensor algebra T(V) as an arity-one operad, truncated at tensor length max_weight."""

    def __init__(self, V: ChainComplex, max_weight: int, name: str = "T"):
        self.V = V
        self.max_weight = max_weight
        self.max_arity = 1
        self.min_arity = 1
        self._vm = VectorModule(V, name="v")
        d = self._vm.dim(0)
        self._vdeg = [self._vm.degree(0, i) for i in range(d)]
        self._vd = [self._vm.diff(0, i) for i in range(d)]
        self._vlab = [self._vm.label(0, i) for i in range(d)]
        words = []
        for w in range(max_weight + 1):
            words.extend(itertools.product(range(d), repeat=w))
        self.words = words
        self._index = {w: i for i, w in enumerate(words)}
        self._register(name)
        self.unit_index = 0

    def dim(self, n):
        return len(self.words) if n == 1 else 0

    def degree(self, n, i):
        return sum(self._vdeg[x] for x in self.words[i])

    def weight(self, n, i):
        return len(self.words[i])

    def label(self, n, i):
        w = self.words[i]
        return "*".join(self._vlab[x] for x in w) if w else "1"

    def relabel(self, n, i, lam):
        return {i: ONE}

    def compose(self, m, a, i, n, b):
        w = self.words[a] + self.words[b]
        j = self._index.get(w)
        return {j: ONE} if j is not None else {}

    def diff(self, n, i):
        w = self.words[i]
        out: dict = {}
        pre = 0
        for p, x in enumerate(w):
            s = -1 if pre % 2 else 1
            for y, c in self._vd[x].items():
                _acc(out, self._index[w[:p] + (y,) + w[p + 1:]], s * c)
            pre += self._vdeg[x]
        return out

    def index_of(self, word) -> int:
        return self._index[tuple(word)]


# -- cooperads -------------------------------------------------------------------

class Cooperad(SymModule):
    """Arity-wise dual of a finite operad ``Q`` (naive pairing of canonical bases)."""

    def __init__(self, Q: Operad, name: str | None = None, weight_fn=None, label_fn=None):
        self.Q = Q
        self.max_arity = Q.max_arity
        self.min_arity = Q.min_arity
        self._weight_fn = weight_fn
        self._label_fn = label_fn
        self._register(name or f"{Q.name}^v")
        self._rel_cache: dict = {}
        self._dec: dict = {}
        self._decinf: dict = {}
        self.counit_index = Q.unit_index

    def dim(self, n):
        return self.Q.dim(n)

    def degree(self, n, i):
        return -self.Q.degree(n, i)

    def weight(self, n, i):
        if self._weight_fn is not None:
            return self._weight_fn(n, i)
        return self.Q.weight(n, i)

    def label(self, n, i):
        if self._label_fn is not None:
            return self._label_fn(n, i)
        return f"({self.Q.label(n, i)})^"

    def relabel(self, n, i, lam):
        lam = tuple(lam)
        ck = (n, lam)
        if ck not in self._rel_cache:
            mu = T.inverse_perm(lam)
            rows: dict = {}
            for j in range(self.Q.dim(n)):
                for r, c in self.Q.relabel(n, j, mu).items():
                    rows.setdefault(r, {})[j] = c
            self._rel_cache[ck] = rows
        return dict(self._rel_cache[ck].get(i, {}))

    def diff(self, n, i):
        out = {}
        for j in range(self.Q.dim(n)):
            c = self.Q.diff(n, j).get(i)
            if c:
                out[j] = c
        return out

    def counit(self, n, i) -> Fraction:
        return ONE if (n == 1 and i == self.counit_index) else Fraction(0)

    def _to_c(self, t):
        if type(t) is int:
            return t
        return (self.key, t[1], t[2], tuple(self._to_c(c) for c in t[3]))

    def decompose(self, n: int, i: int) -> tuple:
        """Full decomposition of a basis element as ``((coeff, template), ...)``."""
        if n not in self._dec:
            src = CompositeModule((self.Q, self.Q), n, keep=self._keep)
            table: dict = {}
            for t in src.basis(n):
                for s, c in T.lincomb_canonical(T.collapse(t)).items():
                    table.setdefault(s[2], []).append((c, self._to_c(t)))
            self._dec[n] = {j: tuple(v) for j, v in table.items()}
        return self._dec[n].get(i, ())

    def decompose_inf(self, n: int, i: int) -> tuple:
        """Infinitesimal decomposition ``((coeff, template), ...)``."""
        if n not in self._decinf:
            src = InfCompositeModule(self.Q, self.Q, n, keep=self._keep)
            table: dict = {}
            for t in src.basis(n):
                for s, c in T.lincomb_canonical(T.collapse(t)).items():
                    table.setdefault(s[2], []).append((c, self._to_c(t)))
            self._decinf[n] = {j: tuple(v) for j, v in table.items()}
        return self._decinf[n].get(i, ())

    _keep = None

    def delta1(self, n: int):
        """``(target_module, matrix)`` of the infinitesimal decomposition in arity n."""
        tgt = InfCompositeModule(self, self, n)
        idx = tgt.index(n)
        cols = []
        for i in range(self.dim(n)):
            col: dict = {}
            for c, t in self.decompose_inf(n, i):
                _acc(col, idx[t], c)
            cols.append(col)
        return tgt, RationalMatrix.from_columns(tgt.dim(n), cols)

    def delta(self, n: int):
        tgt = CompositeModule((self, self), n)
        idx = tgt.index(n)
        cols = []
        for i in range(self.dim(n)):
            col: dict = {}
            for c, t in self.decompose(n, i):
                _acc(col, idx[t], c)
            cols.append(col)
        return tgt, RationalMatrix.from_columns(tgt.dim(n), cols)


class TruncatedCooperad(Cooperad):
    """Dual of an arity-one operad, keeping decompositions within the weight bound."""

    def __init__(self, Q: Operad, max_weight: int, **kw):
        super().__init__(Q, **kw)
        self.max_weight = max_weight

    def _keep(self, t):
        return T.tweight(t) <= self.max_weight


# -- library constructors ------------------------------------------------------------

def ass_operad(max_arity: int, unital: bool = False) -> AssOperad:
    return AssOperad(max_arity, unital)


def comm_operad(max_arity: int) -> CommOperad:
    return CommOperad(max_arity, unital=True)


def comm_nu_operad(max_arity: int) -> CommOperad:
    return CommOperad(max_arity, unital=False)


def lie_operad(max_arity: int) -> LieOperad:
    return LieOperad(max_arity)


def cocomm_nu_cooperad(max_arity: int) -> Cooperad:
    return Cooperad(CommOperad(max_arity), name="coComm_nu", label_fn=lambda n, i: f"c{n}")


def suspension_operad(max_arity: int) -> SuspensionOperad:
    return SuspensionOperad(max_arity)


def suspension_cooperad(max_arity: int) -> Cooperad:
    return Cooperad(SuspensionOperad(max_arity), name="S^c", label_fn=lambda n, i: f"nu{n}^")


def shifted_cocomm(max_arity: int) -> Cooperad:
    """The source of kappa: dual of the Hadamard product of the suspension and Comm_nu."""
    Q = HadamardOperad(SuspensionOperad(max_arity), CommOperad(max_arity), name="S(x)Comm")
    return Cooperad(Q, name="S^c(x)coComm", weight_fn=lambda n, i: n - 1, label_fn=lambda n, i: f"c{n}")


def tensor_algebra(V: ChainComplex, max_weight: int) -> TensorOperad:
    _check_arity_one(V)
    return TensorOperad(V, max_weight)


def tensor_coalgebra(V: ChainComplex, max_weight: int) -> TruncatedCooperad:
    """Cofree arity-one cooperad on the suspension of V, truncated at max_weight."""
    _check_arity_one(V)
    U = dual(shift(V, -1))
    Q = TensorOperad(U, max_weight, name="T(sV^v)")
    return TruncatedCooperad(Q, max_weight, name="Tc(sV)", label_fn=_suspended_word_label(Q, V))


def koszul_dual_tensor_coalgebra(V: ChainComplex, max_weight: int = 1) -> TruncatedCooperad:
    """Sub-cooperad I + sV of the cofree one: words of length at most one."""
    _check_arity_one(V)
    U = dual(shift(V, -1))
    Q = TensorOperad(U, 1, name="T(sV^v)<=1")
    return TruncatedCooperad(Q, max(max_weight, 1), name="I+sV", label_fn=_suspended_word_label(Q, V))


def suspended_letters(Q, V) -> list:
    """``out[u]`` is the letter of V matching letter u of ``Q = T((sV)^v)``.

    Dualizing reverses the degree order, so letters are matched by
    (degree, position within the degree).
    """
    vm = VectorModule(V, name="v")
    out = []
    for u in range(Q._vm.dim(0)):
        g = Q._vm.degree(0, u)
        pos = u - Q._vm.flat_index(g, 0)
        out.append(vm.flat_index(-g - 1, pos))
    return out


def _suspended_word_label(Q, V):
    vm = VectorModule(V, name="v")
    letters = suspended_letters(Q, V)

    def lab(n, i):
        w = Q.words[i]
        return "*".join("s" + vm.label(0, letters[x]) for x in w) if w else "1"

    return lab


def _check_arity_one(V):
    if not isinstance(V, ChainComplex):
        raise ArityViolation("the tensor (co)algebra needs a plain complex concentrated in arity one")


# -- algebras over operads --------------------------------------------------------------

class OperadAlgebra(VectorModule):
    """Finite-dimensional algebra over an operad P.

    ``evaluate(k, idx, args)`` applies the basis operation ``idx`` of ``P(k)``
    to basis vectors ``args`` of the carrier and returns ``{j: c}``.
    """

    def __init__(self, P: Operad, carrier: ChainComplex, name: str = "A", weights=None):
        self.operad = P
        super().__init__(carrier, name=name, weights=weights)

    def evaluate(self, k: int, idx: int, args: tuple) -> dict:
        raise NotImplementedError

    def evaluate_tree(self, t) -> dict:
        """Collapse an operad vertex whose children are carrier vertices."""
        key, k, idx, ch = t
        if key != self.operad.key and not compatible(T.module(key), self.operad):
            raise NotAlgebraOverTarget("vertex does not belong to the algebra's operad")
        out = {}
        for j, c in self.evaluate(k, idx, tuple(x[2] for x in ch)).items():
            out[(self.key, 0, j, ())] = c
        return out

    def check_action(self, max_arity: int = 3):
        """Compatibility of evaluation with partial compositions, the action and d."""
        P = self.operad
        n_el = self.dim(0)

        def ev(k, idx, args):
            return self.evaluate(k, idx, tuple(args))

        def ev_lin(k, idx, arglists):
            out: dict = {}
            for combo in itertools.product(*[list(a.items()) for a in arglists]):
                coeff = ONE
                args = []
                for j, c in combo:
                    coeff *= c
                    args.append(j)
                for r, v in ev(k, idx, args).items():
                    _acc(out, r, coeff * v)
            return out

        ar = [n for n in range(1, max_arity + 1) if P.dim(n)]
        for m, n in itertools.product(ar, repeat=2):
            if m + n - 1 > max_arity:
                continue
            for a, b in itertools.product(range(P.dim(m)), range(P.dim(n))):
                for i in range(m):
                    for args in itertools.product(range(n_el), repeat=m + n - 1):
                        lhs: dict = {}
                        for r, c in P.compose(m, a, i, n, b).items():
                            for s, v in ev(m + n - 1, r, args).items():
                                _acc(lhs, s, c * v)
                        inner = ev(n, b, args[i:i + n])
                        before = sum(self.degree(0, x) for x in args[:i])
                        sign = -1 if (P.degree(n, b) % 2 and before % 2) else 1
                        arglists = [{x: ONE} for x in args[:i]] + [inner] + [{x: ONE} for x in args[i + n:]]
                        rhs = {s: sign * v for s, v in ev_lin(m, a, arglists).items()}
                        if lhs != rhs:
                            raise AlgebraAxiomFailure(f"action incompatible with o_{i} at ({m},{n})")
        for n in ar:
            for idx in range(P.dim(n)):
                for args in itertools.product(range(n_el), repeat=n):
                    for k in range(n - 1):
                        s = adjacent(n, k)
                        lhs: dict = {}
                        for r, c in P.relabel(n, idx, s).items():
                            for x, v in ev(n, r, args).items():
                                _acc(lhs, x, c * v)
                        # relabel(s) moves input k to k+1: feed the swapped arguments
                        sw = list(args)
                        sw[k], sw[k + 1] = sw[k + 1], sw[k]
                        sign = -1 if (self.degree(0, args[k]) % 2 and self.degree(0, args[k + 1]) % 2) else 1
                        rhs = {x: sign * v for x, v in ev(n, idx, sw).items()}
                        if lhs != rhs:
                            raise AlgebraAxiomFailure(f"action not equivariant in arity {n}")
        return True


class LieAlgebra(OperadAlgebra):
    """Graded dg Lie algebra from structure constants.

    ``bracket[(i, j)] = {k: c}`` gives ``[x_i, x_j]``; missing pairs are zero
    unless their graded-antisymmetric partner is present, in which case the
    partner determines them.
    """

    def __init__(self, degrees: list, bracket: dict, diff: dict | None = None, name: str = "g",
                 weights=None, max_arity: int = 8, check: bool = True, labels=None):
        degs = [int(g) for g in degrees]
        # the flat basis of a complex is ordered by degree; reindex the user's basis to match
        order = sorted(range(len(degs)), key=lambda j: (degs[j], j))
        new = {old: pos for pos, old in enumerate(order)}
        self.user_order = tuple(new[i] for i in range(len(degs)))
        br = {}
        for (i, j), v in bracket.items():
            v = {new[int(k)]: to_fraction(c) for k, c in v.items() if to_fraction(c)}
            if v:
                br[(new[int(i)], new[int(j)])] = v
        cols = [{} for _ in degs]
        for i, col in (diff or {}).items():
            cols[new[int(i)]] = {new[int(k)]: to_fraction(c) for k, c in col.items() if to_fraction(c)}
        sdegs = [degs[j] for j in order]
        labs = [labels[j] for j in order] if labels is not None else None
        wts = [weights[j] for j in order] if weights is not None else None
        X = from_flat(sdegs, cols, labs)
        self._given = br
        super().__init__(lie_operad_cached(max_arity), X, name=name, weights=wts)
        full = dict(br)
        for (i, j), v in br.items():
            if (j, i) not in br:
                s = -1 if (sdegs[i] % 2 and sdegs[j] % 2) else 1
                full[(j, i)] = {k: -s * c for k, c in v.items()}
        self._full = full
        if check:
            self.validate()

    def user_index(self, i):
        return self.user_order[i]

    def bracket(self, i: int, j: int) -> dict:
        return dict(self._full.get((i, j), {}))

    def bracket_lin(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self._full.get((i, j), {}).items():
                    _acc(out, k, a * b * c)
        return out

    def d_lin(self, x: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for k, c in self.diff(0, i).items():
                _acc(out, k, a * c)
        return out

    def deg(self, i):
        return self.degree(0, i)

    def validate(self):
        n = self.dim(0)
        for (i, j), v in self._full.items():
            for k in v:
                if self.deg(k) != self.deg(i) + self.deg(j):
                    raise ShapeMismatch(f"bracket of {i},{j} is not homogeneous")
        for i in range(n):
            for j in range(n):
                s = -1 if (self.deg(i) % 2 and self.deg(j) % 2) else 1
                a = self.bracket(i, j)
                b = {k: -s * c for k, c in self.bracket(j, i).items()}
                if a != b:
                    raise AntisymmetryFailure(f"[x{i},x{j}] != -(-1)^(|x||y|)[x{j},x{i}]", )
                if i == j and a and not self.deg(i) % 2:
                    raise AntisymmetryFailure(f"[x{i},x{i}] != 0 for an even element")
        for i in range(n):
            if self.d_lin(self.d_lin({i: ONE})):
                raise NotAComplex("d^2 != 0 on the Lie algebra")
        for i, j, k in itertools.product(range(n), repeat=3):
            x, y, z = {i: ONE}, {j: ONE}, {k: ONE}
            lhs = self.bracket_lin(x, self.bracket_lin(y, z))
            rhs = self.bracket_lin(self.bracket_lin(x, y), z)
            s = -1 if (self.deg(i) % 2 and self.deg(j) % 2) else 1
            for t, c in self.bracket_lin(y, self.bracket_lin(x, z)).items():
                _acc(rhs, t, s * c)
            if lhs != rhs:
                raise JacobiFailure(f"Jacobi fails on the triple ({i},{j},{k})")
        for i, j in itertools.product(range(n), repeat=2):
            x, y = {i: ONE}, {j: ONE}
            lhs = self.d_lin(self.bracket_lin(x, y))
            rhs = self.bracket_lin(self.d_lin(x), y)
            s = -1 if self.deg(i) % 2 else 1
            for t, c in self.bracket_lin(x, self.d_lin(y)).items():
                _acc(rhs, t, s * c)
            if lhs != rhs:
                raise LeibnizFailure(f"d is not a derivation on the pair ({i},{j})")
        return True

    def evaluate(self, k, idx, args):
        P = self.operad
        w = P.words(k)[idx]
        degs = [self.deg(a) for a in args]
        sign = T.koszul_sign(degs, T.inverse_perm(w))
        cur = {args[w[0]]: Fraction(sign)}
        for x in w[1:]:
            cur = self.bracket_lin(cur, {args[x]: ONE})
            if not cur:
                break
        return cur

    def is_abelian(self):
        return not self._full

    def to_json(self) -> dict:
        """Description in the internal (degree-sorted) basis."""
        n = self.dim(0)
        d = {str(i): [[k, str(c)] for k, c in sorted(self.diff(0, i).items())] for i in range(n) if self.diff(0, i)}
        return {
            "name": self.name,
            "degrees": [self.deg(i) for i in range(n)],
            "labels": [self.label(0, i) for i in range(n)],
            "bracket": [[i, j, [[k, str(c)] for k, c in sorted(v.items())]]
                        for (i, j), v in sorted(self._given.items())],
            "diff": d,
        }


_LIE_CACHE: dict = {}


def lie_operad_cached(max_arity: int) -> LieOperad:
    if max_arity not in _LIE_CACHE:
        _LIE_CACHE[max_arity] = LieOperad(max_arity)
    return _LIE_CACHE[max_arity]


def lie_algebra_from_constants(dims, d=None, bracket=None, name="g", labels=None, weights=None,
                               max_arity: int = 8) -> LieAlgebra:
    """Validated Lie algebra.

    ``dims`` is either a list of basis degrees or a mapping degree -> count
    (basis ordered by degree).  ``bracket`` maps ``(i, j)`` to ``{k: c}`` and
    ``d`` maps ``i`` to ``{k: c}``.
    """
    if isinstance(dims, dict):
        degs = []
        for g in sorted(dims):
            degs.extend([int(g)] * int(dims[g]))
    else:
        degs = [int(x) for x in dims]
    return LieAlgebra(degs, bracket or {}, d or {}, name=name, labels=labels, weights=weights,
                      max_arity=max_arity)


def abelian_lie(n: int, degree: int = 0) -> LieAlgebra:
    return lie_algebra_from_constants([degree] * n, name=f"abelian{n}",
                                      labels=[f"x{i}" for i in range(n)])


def sl2() -> LieAlgebra:
    # basis e, f, h
    br = {(0, 1): {2: 1}, (2, 0): {0: 2}, (2, 1): {1: -2}}
    return lie_algebra_from_constants([0, 0, 0], bracket=br, name="sl2", labels=["e", "f", "h"])


def heisenberg3() -> LieAlgebra:
    return lie_algebra_from_constants([0, 0, 0], bracket={(0, 1): {2: 1}}, name="heisenberg3",
                                      labels=["x", "y", "z"])


def cartan_sl2() -> LieAlgebra:
    return lie_algebra_from_constants([0], name="cartan", labels=["h"])


def free_lie_algebra(V: ChainComplex, max_weight: int, name: str = "Lie(V)") -> LieAlgebra:
    """Free Lie algebra on V truncated at bracket length max_weight.

    Built from the Schur functor of the Lie operad; the bracket grafts two
    trees under the binary generator and re-expresses the result in the
    canonical basis.
    """
    L = lie_operad_cached(max(max_weight, 2))
    A = VectorModule(V, name="v")
    basis, wts = [], []
    for w in range(1, max_weight + 1):
        bs = T.bottom_trees((L.key,), A.vertices(), lambda v: 1, w)
        basis.extend(bs)
        wts.extend([w] * len(bs))
    index = {t: i for i, t in enumerate(basis)}
    degs = [T.tdeg(t) for t in basis]

    bracket = {}
    for i, s in enumerate(basis):
        for j, t in enumerate(basis):
            if wts[i] + wts[j] > max_weight:
                continue
            tree = (L.key, 2, 0, (s, t))
            terms: dict = {}
            for g, c in T.lincomb_canonical(T.collapse(tree)).items():
                T.add_into(terms, {g: c})
            col = {}
            for g, c in terms.items():
                col[index[g]] = col.get(index[g], 0) + c
            col = {k: v for k, v in col.items() if v}
            if col:
                bracket[(i, j)] = col
    diff = {}
    for i, t in enumerate(basis):
        col = {}
        for g, c in T.lincomb_canonical(T.internal_diff(t)).items():
            col[index[g]] = col.get(index[g], 0) + c
        col = {k: v for k, v in col.items() if v}
        if col:
            diff[i] = col
    labels = [T.show(t) for t in basis]
    g = LieAlgebra(degs, bracket, diff, name=name, weights=wts, labels=labels, check=False)
    g.generators = [g.user_order[i] for i, t in enumerate(basis) if wts[i] == 1]
    return g


def lie_algebra_from_json(obj) -> LieAlgebra:
    try:
        if "degrees" in obj:
            degs = [int(x) for x in obj["degrees"]]
        else:
            degs = []
            for g, k in sorted(((int(g), int(k)) for g, k in obj["dims"].items())):
                degs.extend([g] * k)
        br = {}
        for i, j, terms in obj.get("bracket", []):
            br[(int(i), int(j))] = {int(k): to_fraction(c) for k, c in terms}
        d = {}
        for i, terms in (obj.get("diff") or obj.get("d") or {}).items():
            d[int(i)] = {int(k): to_fraction(c) for k, c in terms}
        labels = obj.get("labels")
        weights = obj.get("weights")
        if weights is not None:
            weights = [int(x) for x in weights]
            if len(weights) != len(degs):
                raise ParseError("field 'weights' must have one entry per basis vector")
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"invalid Lie algebra description: {exc}") from None
    for (i, j), v in br.items():
        for x in [i, j, *v]:
            if not 0 <= x < len(degs):
                raise ParseError(f"bracket index {x} out of range")
    for i, v in d.items():
        for x in [i, *v]:
            if not 0 <= x < len(degs):
                raise ParseError(f"differential index {x} out of range")
    return lie_algebra_from_constants(degs, d=d, bracket=br, name=obj.get("name", "g"), labels=labels,
                                      weights=weights)


def compatible(P, Q) -> bool:
    """Same library operad up to the arity bound (identical bases and structure)."""
    if P is Q:
        return True
    if type(P) is not type(Q) or type(P) not in (LieOperad, CommOperad, AssOperad, SuspensionOperad):
        return False
    return P.name == Q.name


class FreeAlgebra(OperadAlgebra):
    """Free P-algebra on a complex V, truncated at max_weight generators."""

    def __init__(self, P: Operad, V: ChainComplex, max_weight: int, name: str | None = None):
        self.gens = VectorModule(V, name="v")
        self.max_weight = max_weight
        basis, wts = [], []
        for w in range(1, max_weight + 1):
            bs = T.bottom_trees((P.key,), self.gens.vertices(), lambda v: 1, w)
            basis.extend(bs)
            wts.extend([w] * len(bs))
        order = sorted(range(len(basis)), key=lambda i: (T.tdeg(basis[i]), i))
        self.trees = [basis[i] for i in order]
        wts = [wts[i] for i in order]
        self._tindex = {t: i for i, t in enumerate(self.trees)}
        cols = []
        for t in self.trees:
            col: dict = {}
            for u, c in T.lincomb_canonical(T.internal_diff(t)).items():
                _acc(col, self._tindex[u], c)
            cols.append(col)
        X = from_flat([T.tdeg(t) for t in self.trees], cols, [T.show(t) for t in self.trees])
        super().__init__(P, X, name=name or f"{P.name}({len(self.gens.vertices())})", weights=wts)
        self.generators = [i for i, t in enumerate(self.trees) if wts[i] == 1]

    def evaluate(self, k, idx, args):
        tree = (self.operad.key, k, idx, tuple(self.trees[a] for a in args))
        out: dict = {}
        for u, c in T.lincomb_canonical(T.collapse(tree)).items():
            j = self._tindex.get(u)
            if j is not None:
                _acc(out, j, c)
        return out


# -- structure maps as matrices ---------------------------------------------------------

def gamma1(P: Operad, max_arity: int | None = None) -> dict:
    """Arity-wise matrices of the infinitesimal composition."""
    N = max_arity or P.max_arity
    return {n: P.gamma1(n)[1] for n in range(1, N + 1) if P.dim(n)}


def delta1(C: Cooperad, max_arity: int | None = None) -> dict:
    """Arity-wise matrices of the infinitesimal decomposition."""
    N = max_arity or C.max_arity
    return {n: C.delta1(n)[1] for n in range(1, N + 1) if C.dim(n)}


def check_cooperad(C: Cooperad, N: int | None = None) -> bool:
    """Coassociativity and counit, as transposes of the dual operad's identities."""
    N = N or C.max_arity
    Q = C.Q
    for n in range(1, N + 1):
        if not C.dim(n):
            continue
        src, G = Q.gamma(n)
        tgt, D = C.delta(n)
        # same canonical trees up to the key swap, so D must be the transpose of G
        keys = [C._to_c(t) for t in src.basis(n)]
        if keys != list(tgt.basis(n)):
            raise AlgebraAxiomFailure(f"{C.name}: tree bases do not match in arity {n}")
        if D != G.transpose():
            raise AlgebraAxiomFailure(f"{C.name}: decomposition is not the transpose in arity {n}")
        for i in range(C.dim(n)):
            counit = {}
            for c, t in C.decompose(n, i):
                # counit applied to the top vertex: keep terms whose top is the counit
                if t[1] == 1 and C.counit(1, t[2]):
                    T.add_into(counit, {t[3][0]: c * C.counit(1, t[2])})
            want = {(C.key, n, i, tuple(range(n))): ONE}
            if T.lincomb_canonical(counit) != want:
                raise AlgebraAxiomFailure(f"{C.name}: counit fails in arity {n}")
    return True


# -- the suspension isomorphism -------------------------------------------------------------

def suspension_iso_check(P: Operad, V: ChainComplex, max_weight: int, details: bool = False):
    """Compare ``P(V)[-1]`` with ``(S (x)_H P)(V[-1])`` weight by weight.

    The map sends ``(nu_k (x) mu) (x) (s v_1 ... s v_k)`` to
    ``(-1)^(k|mu| + sum_j (k-j)|v_j|) s(mu (x) v_1 ... v_k)``.  The check
    covers invertibility, compatibility with the differentials and
    independence of the coinvariant representative.
    """
    from .complexes import flat_chain_map, shift
    from .symmod import complex_from_trees, flat_matrix

    N = max(max_weight, 1)
    S = SuspensionOperad(max(N, P.max_arity))
    H = HadamardOperad(S, P, name=f"S(x){P.name}")
    A = VectorModule(V, name="v")
    B = VectorModule(shift(V, -1), name="sv")
    vdeg = [A.degree(0, i) for i in range(A.dim(0))]
    report = {}
    ok = True
    for w in range(1, max_weight + 1):
        lb = T.bottom_trees((P.key,), A.vertices(), lambda v: 1, w)
        rb = T.bottom_trees((H.key,), B.vertices(), lambda v: 1, w)
        lx = shift(complex_from_trees(lb, T.internal_diff), -1)
        rx = complex_from_trees(rb, T.internal_diff)

        def phi(t):
            key, k, idx, ch = t
            a_s, mu = divmod(idx, P.dim(k))
            e = k * P.degree(k, mu)
            for j, c in enumerate(ch, start=1):
                e += (k - j) * vdeg[c[2]]
            out: dict = {}
            for s, v in T.canonical((P.key, k, mu, tuple((A.key, 0, c[2], ()) for c in ch))):
                out[s] = v * (-1 if e % 2 else 1)
            return out

        M = flat_matrix(rb, lb, phi)
        f = flat_chain_map(rx, [T.tdeg(t) for t in rb], lx, [T.tdeg(t) + 1 for t in lb], M)
        iso = f.is_isomorphism()
        commutes = f.commutes()
        # the image must not depend on the representative of a coinvariant class
        well = True
        for t in rb:
            key, k, idx, ch = t
            for p in range(k - 1):
                sw = adjacent(k, p)
                sgn = -1 if (T.tdeg(ch[p]) % 2 and T.tdeg(ch[p + 1]) % 2) else 1
                kids = ch[:p] + (ch[p + 1], ch[p]) + ch[p + 2:]
                rep: dict = {}
                for j, c in H.relabel(k, idx, sw).items():
                    T.add_into(rep, {(key, k, j, kids): sgn * c})
                if T.lincomb_canonical(rep) != {t: ONE}:
                    well = False
                    continue
                img: dict = {}
                for u, c in rep.items():
                    T.add_into(img, T.lincomb_canonical(phi(u)), c)
                if img != T.lincomb_canonical(phi(t)):
                    well = False
        good = iso and commutes and well and lx.dims == rx.dims
        ok &= good
        report[w] = {"dims": {g: k for g, k in sorted(rx.dims.items())}, "iso": iso,
                     "commutes": commutes, "well_defined": well}
    return (ok, report) if details else ok


# -- free/cofree arity-one constructions ---------------------------------------------------

def tensor_extend(TV: TensorOperad, images: dict, target: TensorOperad) -> RationalMatrix:
    """Algebra map ``T(V) -> target`` determined by the images of the letters.

    ``images[i]`` is a combination of target words (by index).  Words whose
    image would exceed the target's truncation are sent to the truncated
    product.
    """
    cols = []
    for w in TV.words:
        cur = {target.unit_index: ONE}
        for x in w:
            nxt: dict = {}
            for a, ca in cur.items():
                for b, cb in images.get(x, {}).items():
                    for r, c in target.compose(1, a, 0, 1, b).items():
                        _acc(nxt, r, ca * cb * c)
            cur = nxt
        cols.append(cur)
    return RationalMatrix.from_columns(target.dim(1), cols)


# -- coalgebras over cooperads ------------------------------------------------------------

class CooperadCoalgebra(VectorModule):
    """Finite weight-graded coalgebra over a cooperad C.

    ``coproduct(i)`` returns ``((coeff, tree), ...)`` where each tree is a
    C-vertex over carrier vertices.  The reduced part must lower weight
    (conilpotence).
    """

    def __init__(self, C: Cooperad, carrier: ChainComplex, coproduct, weights, name: str = "D"):
        self.cooperad = C
        super().__init__(carrier, name=name, weights=weights)
        self._co = coproduct
        self._cache: dict = {}

    def coproduct(self, i: int) -> tuple:
        if i not in self._cache:
            terms = tuple(self._co(self, i))
            self._cache[i] = terms
        return self._cache[i]

    def reduced_coproduct(self, i: int) -> tuple:
        C = self.cooperad
        return tuple((c, t) for c, t in self.coproduct(i) if not (t[1] == 1 and C.counit(1, t[2])))

    def check(self, arities=None) -> bool:
        C = self.cooperad
        n = self.dim(0)
        for i in range(n):
            counit: dict = {}
            for c, t in self.coproduct(i):
                if t[1] == 1 and C.counit(1, t[2]):
                    T.add_into(counit, {t[3][0]: c})
                elif any(self.weight(0, x[2]) >= self.weight(0, i) for x in t[3]):
                    raise AlgebraAxiomFailure("reduced coproduct does not lower weight")
            if counit != {(self.key, 0, i, ()): ONE}:
                raise AlgebraAxiomFailure(f"counit fails on basis vector {i}")
        return True

    def is_coassociative(self) -> bool:
        """``(Delta_C o Id) Delta = (Id o Delta) Delta`` in ``C o C o D``."""
        C = self.cooperad
        for i in range(self.dim(0)):
            lhs: dict = {}
            rhs: dict = {}
            for c, t in self.coproduct(i):
                key, k, idx, ch = t
                for c2, tmpl in C.decompose(k, idx):
                    sub, s = T.substitute_signed(tmpl, ch)
                    T.add_into(lhs, T.canonical(sub), c * c2 * s)
                # the coproduct has degree 0, so applying it to every child costs no sign
                opts = [self.coproduct(x[2]) for x in ch]
                for combo in itertools.product(*opts):
                    coeff = c
                    for cx, _ in combo:
                        coeff *= cx
                    tree = (key, k, idx, tuple(tx for _, tx in combo))
                    T.add_into(rhs, T.canonical(tree), coeff)
            if T.lincomb_canonical(lhs) != T.lincomb_canonical(rhs):
                return False
        return True


def trivial_coalgebra(C: Cooperad, V: ChainComplex, name: str = "triv") -> CooperadCoalgebra:
    """Coalgebra with only the counit term in its coproduct."""
    ci = C.counit_index

    def co(D, i):
        return ((ONE, (C.key, 1, ci, ((D.key, 0, i, ()),))),)

    return CooperadCoalgebra(C, V, co, weights=None, name=name)
