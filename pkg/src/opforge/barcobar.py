"""Bar and cobar constructions, weight gradings and the Chevalley-Eilenberg algebra.

Bar elements are trees: a cooperad vertex whose children are algebra basis
vertices.  Cobar elements are operad vertices over coalgebra basis
vertices.  Both differentials split as ``d = d0 + d1`` where ``d0`` keeps
the weight and ``d1`` moves it by ``step``.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from . import debug
from . import trees as T
from .certificate import Certificate
from .complexes import ChainComplex, direct_sum, flat_chain_map, from_flat, is_quasi_iso, shift
from .errors import ArityViolation, NotAlgebraOverTarget
from .exactla import RationalMatrix
from .opcoop import CooperadCoalgebra, FreeAlgebra, OperadAlgebra, compatible
from .twisting import dl_op, dr_op, kappa

ONE = Fraction(1)


def _acc(out: dict, k, v):
    s = out.get(k, 0) + v
    if s:
        out[k] = s
    else:
        out.pop(k, None)


def _sgn(x) -> int:
    return -1 if x % 2 else 1


def _apply(cols: list, vec: dict) -> dict:
    out: dict = {}
    for i, a in vec.items():
        for k, c in cols[i].items():
            _acc(out, k, a * c)
    return out


class WeightGradedComplex:
    """Flat graded basis with a weight per vector and ``d = d0 + d1``.

    ``d0`` preserves weight; ``d1`` changes it by ``step`` (``None`` allows
    any nonzero change in one direction, given by ``sign(step_dir)``).
    """

    def __init__(self, degrees, weights, d0, d1, step, labels=None, name: str = "X", meta=None):
        self.degrees = list(degrees)
        self.weights = list(weights)
        self.d0 = [dict(c) for c in d0]
        self.d1 = [dict(c) for c in d1]
        self.step = step
        self.labels = list(labels) if labels is not None else [f"x{i}" for i in range(len(self.degrees))]
        self.name = name
        self.meta = dict(meta or {})

    def __len__(self):
        return len(self.degrees)

    def total_columns(self) -> list:
        out = []
        for a, b in zip(self.d0, self.d1):
            col = dict(a)
            for k, c in b.items():
                _acc(col, k, c)
            out.append(col)
        return out

    def total(self) -> ChainComplex:
        return from_flat(self.degrees, self.total_columns(), self.labels, meta=self.meta)

    def weight_values(self) -> list:
        return sorted(set(self.weights))

    def block(self, w) -> list:
        return [i for i, x in enumerate(self.weights) if x == w]

    def gr(self) -> dict:
        """Associated graded: weight -> complex with only ``d0``."""
        out = {}
        for w in self.weight_values():
            idx = self.block(w)
            pos = {i: p for p, i in enumerate(idx)}
            cols = [{pos[k]: c for k, c in self.d0[i].items()} for i in idx]
            out[w] = from_flat([self.degrees[i] for i in idx], cols, [self.labels[i] for i in idx],
                               meta={**self.meta, "weight": w})
        return out

    def check(self) -> Certificate:
        """``d^2 = 0`` and its three block identities, plus the weight behaviour of d0 and d1."""
        n = len(self)
        fails = []
        for i in range(n):
            for k in self.d0[i]:
                if self.weights[k] != self.weights[i]:
                    fails.append(("d0-weight", self.weights[i]))
            for k in self.d1[i]:
                dw = self.weights[k] - self.weights[i]
                if (self.step is not None and dw != self.step) or dw == 0:
                    fails.append(("d1-weight", self.weights[i]))
            e = {i: ONE}
            a = _apply(self.d0, _apply(self.d0, e))
            b = _apply(self.d0, _apply(self.d1, e))
            for k, c in _apply(self.d1, _apply(self.d0, e)).items():
                _acc(b, k, c)
            c2 = _apply(self.d1, _apply(self.d1, e))
            for tag, v in (("d0^2", a), ("d0d1+d1d0", b), ("d1^2", c2)):
                if v:
                    fails.append((tag, self.weights[i]))
        where = fails[0] if fails else None
        return Certificate("d^2=0", not fails, {"name": self.name, "size": n, "failures": len(fails)}, where)

    def weight_dims(self) -> dict:
        out: dict = {}
        for w, g in zip(self.weights, self.degrees):
            out.setdefault(w, {})
            out[w][g] = out[w].get(g, 0) + 1
        return {w: dict(sorted(v.items())) for w, v in sorted(out.items())}

    def euler(self) -> int:
        return sum(_sgn(g) for g in self.degrees)

    def homology(self) -> dict:
        return self.total().homology()

    def gr_homology(self) -> dict:
        return {w: X.homology() for w, X in self.gr().items()}

    def to_json(self) -> dict:
        return {"name": self.name, "meta": self.meta, "weight_dims": self.weight_dims(),
                "homology": self.homology(), "euler": self.euler()}


def _flatten(basis, d0_fn, d1_fn, weight_fn, step, name, meta):
    index = {t: i for i, t in enumerate(basis)}

    def coords(terms):
        col: dict = {}
        for u, c in T.lincomb_canonical(terms).items():
            j = index.get(u)
            if j is not None:
                _acc(col, j, c)
        return col

    d0 = [coords(d0_fn(t)) for t in basis]
    d1 = [coords(d1_fn(t)) for t in basis]
    return dict(degrees=[T.tdeg(t) for t in basis], weights=[weight_fn(t) for t in basis], d0=d0, d1=d1,
                step=step, labels=[T.show(t) for t in basis], name=name, meta=meta), index


# -- bar construction -----------------------------------------------------------------------

class BarCoalgebra(WeightGradedComplex):
    """``B_alpha(A)``: weight = number of algebra inputs, ``d1`` lowers it by one."""

    def __init__(self, A: OperadAlgebra, alpha, max_weight: int, total_weight=None):
        P, C = alpha.target, alpha.source
        if not compatible(A.operad, P):
            raise NotAlgebraOverTarget(f"{A.name} is not an algebra over {P.name}")
        if max_weight > C.max_arity:
            raise ArityViolation(f"max_weight {max_weight} exceeds the cooperad's arity bound {C.max_arity}")
        self.A, self.alpha, self.max_weight, self.total_weight = A, alpha, max_weight, total_weight
        basis = []
        base = A.vertices()
        if total_weight is None:
            for k in range(1, max_weight + 1):
                basis.extend(T.bottom_trees((C.key,), base, lambda v: 1, k))
        else:
            size = lambda v: A.weight(0, v[2])  # noqa: E731
            basis = [t for t in T.bottom_trees((C.key,), base, size, total_weight) if t[1] <= max_weight]
        order = sorted(range(len(basis)), key=lambda i: (T.tdeg(basis[i]), basis[i][1], i))
        self.trees = [basis[i] for i in order]
        meta = {"construction": "bar", "algebra": A.name, "max_weight": max_weight}
        if total_weight is not None:
            meta["algebra_weight"] = total_weight
        kw, self.index = _flatten(self.trees, T.internal_diff,
                                  lambda t: dr_op(alpha, t, collapse=A.evaluate_tree),
                                  lambda t: t[1], -1, f"B({A.name})", meta)
        super().__init__(**kw)

    def ce_chains(self) -> ChainComplex:
        """``Q (+) B[-1]``: the Chevalley-Eilenberg chain complex for a Lie algebra."""
        return direct_sum(ChainComplex({0: 1}), shift(self.total(), -1))

    def coalgebra(self, weights: str = "arity") -> CooperadCoalgebra:
        """The bar construction as a coalgebra over the source cooperad.

        ``weights`` is ``"arity"`` (bar weight) or ``"algebra"`` (sum of the
        algebra weights of the inputs).
        """
        C, A = self.alpha.source, self.A
        X = self.total()
        if weights == "arity":
            wts = [t[1] for t in self.trees]
        else:
            wts = [sum(A.weight(0, x[2]) for x in t[3]) for t in self.trees]
        index = self.index

        def co(D, i):
            key, k, idx, ch = self.trees[i]
            out: dict = {}
            for coef, tmpl in C.decompose(k, idx):
                sub, s = T.substitute_signed(tmpl, ch)
                opts = []
                for kid in sub[3]:
                    terms = [((D.key, 0, index[u], ()), c) for u, c in T.lincomb_canonical({kid: ONE}).items()
                             if u in index]
                    opts.append(terms)
                for combo in itertools.product(*opts):
                    c = coef * s
                    for _, cx in combo:
                        c *= cx
                    tree = (sub[0], sub[1], sub[2], tuple(v for v, _ in combo))
                    T.add_into(out, T.lincomb_canonical({tree: c}))
            return tuple((c, t) for t, c in sorted(out.items(), key=lambda kv: repr(kv[0])))

        return CooperadCoalgebra(C, X, co, weights=wts, name=f"B({A.name})")


def bar(A: OperadAlgebra, alpha, max_weight: int, total_weight=None) -> BarCoalgebra:
    return BarCoalgebra(A, alpha, max_weight, total_weight)


def gr(X: WeightGradedComplex) -> dict:
    return X.gr()


@lru_cache(maxsize=None)
def _kappa_cached(n: int, mutant: bool):
    return kappa(max(n, 2))


def _kappa(n: int):
    # the fault-injection state is part of the key so mutants never leak out
    return _kappa_cached(max(n, 2), debug.active("kappa-sign"))


def ce_chains(g, max_weight: int | None = None) -> ChainComplex:
    """Chevalley-Eilenberg chains of a Lie algebra, computed from the bar construction of kappa."""
    N = max_weight or max(g.dim(0), 1)
    return bar(g, _kappa(max(N, 2)), N).ce_chains()


def ce_betti(g, max_weight: int | None = None) -> tuple:
    H = ce_chains(g, max_weight).homology()
    top = max((k for k, v in H.items() if v), default=0)
    return tuple(H.get(k, 0) for k in range(0, top + 1))


# -- graded shadows of the unit and counit -------------------------------------------------------

def bar_of_free_check(V: ChainComplex, alpha, max_weight: int) -> Certificate:
    """``B_alpha(P(V))`` has homology V, concentrated in generator weight one.

    Checked per generator weight u: the projection onto ``(counit; v)`` is a
    quasi-isomorphism onto V for u = 1, and the block is acyclic for u > 1.
    """
    P = alpha.target
    details: dict = {}
    where = None
    if not V.total_dim:
        return Certificate("bar-of-free", True, {"trivial": True})
    A = FreeAlgebra(P, V, max_weight)
    C = alpha.source
    for u in range(1, max_weight + 1):
        B = bar(A, alpha, u, total_weight=u)
        X = B.total()
        if u == 1:
            gen_pos = {g: p for p, g in enumerate(A.generators)}
            ents = []
            for i, t in enumerate(B.trees):
                if t[1] == 1 and C.counit(1, t[2]) and t[3][0][2] in gen_pos:
                    ents.append((gen_pos[t[3][0][2]], i, ONE))
            vdeg = [A.degree(0, g) for g in A.generators]
            M = RationalMatrix(len(vdeg), len(B.trees), ents)
            f = flat_chain_map(X, B.degrees, V, vdeg, M, check=False)
            ok = f.commutes() and is_quasi_iso(f)
        else:
            ok = X.is_acyclic()
        details[u] = {"dims": dict(sorted(X.dims.items())), "homology": X.homology(), "ok": ok}
        if not ok and where is None:
            where = u
    return Certificate("bar-of-free", where is None, details, where)


def counit_graded_check(A: OperadAlgebra, alpha, max_weight: int) -> Certificate:
    """Graded counit ``(P o_alpha C) o A -> A``: iso onto A for one input, acyclic otherwise.

    The weight is the number of algebra inputs; only ``d_{P o C}``, ``d_A``
    and ``d^l_alpha`` survive in the associated graded.
    """
    P, C = alpha.target, alpha.source
    if not compatible(A.operad, P):
        raise NotAlgebraOverTarget(f"{A.name} is not an algebra over {P.name}")
    if not A.dim(0):
        return Certificate("counit-graded", True, {"trivial": True})
    details: dict = {}
    where = None
    base = A.vertices()
    for n in range(1, max_weight + 1):
        basis = T.bottom_trees((P.key, C.key), base, lambda v: 1, n)
        basis = sorted(basis, key=lambda t: (T.tdeg(t), repr(t)))
        kw, index = _flatten(basis, lambda t: T.add_into(T.internal_diff(t), dl_op(alpha, t)),
                             lambda t: {}, lambda t: n, None, f"gr counit {n}", {"weight": n})
        X = from_flat(kw["degrees"], kw["d0"], kw["labels"])
        if n == 1:
            ents = []
            for i, t in enumerate(basis):
                c = t[3][0]
                if t[1] == 1 and P.augmentation(1, t[2]) and C.counit(1, c[2]):
                    ents.append((c[3][0][2], i, P.augmentation(1, t[2])))
            adeg = [A.degree(0, j) for j in range(A.dim(0))]
            f = flat_chain_map(X, kw["degrees"], A.complex, adeg, RationalMatrix(len(adeg), len(basis), ents))
            ok = f.commutes() and is_quasi_iso(f)
        else:
            ok = X.is_acyclic()
        details[n] = {"dims": dict(sorted(X.dims.items())), "homology": X.homology(), "ok": ok}
        if not ok and where is None:
            where = n
    return Certificate("counit-graded", where is None, details, where)


# -- cobar construction ------------------------------------------------------------------------

class CobarAlgebra(WeightGradedComplex):
    """``Omega_alpha(D)`` truncated at total coalgebra weight ``max_weight``.

    The grading weight is the operad arity (number of coalgebra inputs);
    ``d1`` applies the reduced coproduct to one input and alpha to the result,
    entering with a minus sign so that the counit onto an algebra is a chain map.
    """

    def __init__(self, D: CooperadCoalgebra, alpha, max_weight: int):
        P, C = alpha.target, alpha.source
        if D.cooperad is not C and not compatible(D.cooperad, C):
            raise NotAlgebraOverTarget(f"{D.name} is not a coalgebra over {C.name}")
        if max_weight > P.max_arity:
            raise ArityViolation(f"max_weight {max_weight} exceeds the operad's arity bound {P.max_arity}")
        self.D, self.alpha, self.max_weight = D, alpha, max_weight
        size = lambda v: D.weight(0, v[2])  # noqa: E731
        basis = []
        for u in range(1, max_weight + 1):
            basis.extend(T.bottom_trees((P.key,), D.vertices(), size, u))
        order = sorted(range(len(basis)), key=lambda i: (T.tdeg(basis[i]), basis[i][1], i))
        self.trees = [basis[i] for i in order]
        arities = {n for n in range(1, C.max_arity + 1) for i in range(C.dim(n)) if alpha.matrix(n).column(i)} \
            if hasattr(alpha, "matrix") else set()
        step = (next(iter(arities)) - 1) if len(arities) == 1 else None
        meta = {"construction": "cobar", "coalgebra": D.name, "max_weight": max_weight}
        kw, self.index = _flatten(self.trees, T.internal_diff, self._d1, lambda t: t[1], step,
                                  f"Omega({D.name})", meta)
        super().__init__(**kw)
        self.input_weights = [sum(D.weight(0, x[2]) for x in t[3]) for t in self.trees]

    def _d1(self, t) -> dict:
        F, D = self.alpha, self.D
        key, k, idx, ch = t
        out: dict = {}
        pre = T.vdeg(t)
        for j, x in enumerate(ch):
            s0 = _sgn(F.degree * pre)
            for coef, tmpl in D.reduced_coproduct(x[2]):
                for pnode, c in F.on_vertex(tmpl).items():
                    tree = (key, k, idx, ch[:j] + (pnode,) + ch[j + 1:])
                    T.add_into(out, T.graft(tree, j), -s0 * coef * c)
            pre += T.tdeg(x)
        return out


def cobar(D: CooperadCoalgebra, alpha, max_weight: int) -> CobarAlgebra:
    return CobarAlgebra(D, alpha, max_weight)


def cobar_bar_check(g, max_weight: int) -> Certificate:
    """``Omega_kappa B_kappa(g) -> g`` is a quasi-isomorphism in each algebra weight.

    Needs a weight grading on g preserved by the bracket (weights >= 1).
    """
    alpha = _kappa(max(max_weight, 2))
    B = bar(g, alpha, max_weight)
    D = B.coalgebra(weights="algebra")
    Om = cobar(D, alpha, max_weight)
    P = alpha.target
    details: dict = {}
    where = None
    Dw = [D.weight(0, i) for i in range(D.dim(0))]
    tw = [sum(Dw[x[2]] for x in t[3]) for t in Om.trees]
    gw = [g.weight(0, i) for i in range(g.dim(0))]
    cols = Om.total_columns()
    for w in range(1, max_weight + 1):
        idx = [i for i, x in enumerate(tw) if x == w]
        pos = {i: p for p, i in enumerate(idx)}
        X = from_flat([Om.degrees[i] for i in idx], [{pos[k]: c for k, c in cols[i].items()} for i in idx])
        gidx = [i for i, x in enumerate(gw) if x == w]
        gpos = {i: p for p, i in enumerate(gidx)}
        Y = from_flat([g.degree(0, i) for i in gidx], [{gpos[k]: c for k, c in g.diff(0, i).items()} for i in gidx])
        ents = []
        for p, i in enumerate(idx):
            t = Om.trees[i]
            # counit: keep inputs of the form (counit; x), then evaluate the operation in g
            if not all(B.trees[x[2]][1] == 1 for x in t[3]):
                continue
            args = tuple(B.trees[x[2]][3][0][2] for x in t[3])
            s = 1
            for r, c in g.evaluate(t[1], t[2], args).items():
                ents.append((gpos[r], p, s * c))
        f = flat_chain_map(X, [Om.degrees[i] for i in idx], Y, [g.degree(0, i) for i in gidx],
                           RationalMatrix(len(gidx), len(idx), ents))
        ok = f.commutes() and is_quasi_iso(f)
        details[w] = {"dims": dict(sorted(X.dims.items())), "homology": X.homology(), "ok": ok}
        if not ok and where is None:
            where = w
    del P
    return Certificate("cobar-bar", where is None, details, where)


# -- Chevalley-Eilenberg algebra -----------------------------------------------------------

def _pairing_sign(mono, ydeg) -> int:
    """``<w_{a1}...w_{ak}, y_{a1}...y_{ak}>`` for sorted ``mono``; ``|w_a| = -|y_a|``.

    Sum over the permutations matching the multiset; all terms agree, so this
    returns the common sign times the stabilizer order.
    """
    k = len(mono)
    total = 0
    for perm in itertools.permutations(range(k)):
        if any(mono[perm[p]] != mono[p] for p in range(k)):
            continue
        # reorder y's by perm (Koszul), then evaluate w_1..w_k on y_1..y_k
        s = T.koszul_sign([ydeg[a] for a in mono], T.inverse_perm(perm))
        for a in range(k):
            for b in range(a + 1, k):
                if ydeg[mono[b]] % 2 and ydeg[mono[a]] % 2:
                    s = -s
        total += s
    return total


def _phi_sign(mono, xdeg) -> int:
    """Sign of ``s c_k(x_1, ..., x_k) -> s x_1 ... s x_k``.

    Each ``s x_j`` pays its degree once for every later input.  This is the
    only choice among the natural candidates for which the transported
    differential is a derivation on graded Lie algebras with odd elements.
    """
    k = len(mono)
    return _sgn(sum((k - 1 - j) * (xdeg[a] + 1) for j, a in enumerate(mono)))


def ce_algebra(g, max_weight: int | None = None):
    """Polynomial Chevalley-Eilenberg algebra: ``S((sg)^v)`` with the transported dual bar differential."""
    from .tangent import FreeCommAlgebra

    n = g.dim(0)
    N = max_weight or max(n, 1)
    B = bar(g, _kappa(max(N, 2)), N)
    xdeg = [g.degree(0, i) for i in range(n)]
    ydeg = [x + 1 for x in xdeg]
    gdeg = [-y for y in ydeg]
    tree_of = {}
    for i, t in enumerate(B.trees):
        tree_of[tuple(x[2] for x in t[3])] = i
    cols = B.total_columns()
    # D_X[t, t'] is the coefficient of t' in d(t); transpose for the dual
    incoming: dict = {}
    for i, col in enumerate(cols):
        for k, c in col.items():
            incoming.setdefault(k, {})[i] = c
    psi = {}
    for mono, i in tree_of.items():
        psi[mono] = _pairing_sign(mono, ydeg) * _phi_sign(mono, xdeg)
    mono_of = {i: m for m, i in tree_of.items()}
    diff: dict = {}
    for mono, i in tree_of.items():
        tdeg_star = sum(gdeg[a] for a in mono)
        out = {}
        for src, c in incoming.get(i, {}).items():
            m2 = mono_of[src]
            out[m2] = Fraction(_sgn(tdeg_star)) * c * psi[mono] / psi[m2]
        diff[mono] = out
    labels = [f"{g.label(0, i)}^" for i in range(n)]
    A = FreeCommAlgebra(gdeg, N, gen_labels=labels, name=f"CE({g.name})", diff_monomials=diff)
    A.gen_of_basis = list(range(n))
    A.lie_algebra = g
    return A


def ce_map(f: RationalMatrix, g, h, Ag=None, Ah=None) -> RationalMatrix:
    """Algebra map ``CE(h) -> CE(g)`` induced by a Lie map ``f: g -> h`` (flat matrix)."""
    Ag = Ag or ce_algebra(g)
    Ah = Ah or ce_algebra(h)
    images = {}
    for r, c, v in f.triples():
        images.setdefault(r, {})
        _acc(images[r], (c,), v)
    ents = []
    for j, mono in enumerate(Ah.monos):
        parts = [images.get(a, {}) for a in mono]
        for m, c in Ag.word_product(parts).items():
            if m in Ag.index:
                ents.append((Ag.index[m], j, c))
    return RationalMatrix(Ag.n, Ah.n, ents)


__all__ = [
    "WeightGradedComplex", "BarCoalgebra", "CobarAlgebra", "bar", "cobar", "gr", "ce_chains", "ce_betti",
    "bar_of_free_check", "counit_graded_check", "cobar_bar_check", "ce_algebra", "ce_map",
]
