"""Convolution algebra, twisting morphisms and twisted composite products.

A convolution element ``f: C -> P`` is stored arity-wise as matrices
``P(n) x C(n)``.  The pre-Lie product is assembled from the infinitesimal
decomposition of ``C``, the two maps, and the infinitesimal composition of
``P``.  Twisted differentials act on tree bases:

* ``d^l_F`` on ``P o C``: decompose one C-child fully, send its top vertex
  through ``F`` and compose the result into the P-root;
* ``d^r_F`` at a C-vertex: decompose infinitesimally, send the inner vertex
  through ``F`` and compose it with whatever hangs below.

Signs follow the tree conventions: restructure with the associativity sign,
then pay ``(-1)^(|F| * degree before the vertex)``.
"""
from __future__ import annotations

import multiprocessing
import os
import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import trees as T
from .certificate import Certificate
from .complexes import ChainComplex, ChainMap, flat_chain_map, is_quasi_iso
from .errors import DegreeMismatch, NotTwisting, ShapeMismatch
from .exactla import RationalMatrix
from .opcoop import (
    Cooperad,
    LieOperad,
    Operad,
    koszul_dual_tensor_coalgebra,
    shifted_cocomm,
    suspended_letters,
    tensor_algebra,
    tensor_coalgebra,
)
from .symmod import CompositeModule, adjacent, all_perms, complex_from_trees, flat_matrix

ONE = Fraction(1)


def _sgn(odd) -> int:
    return -1 if odd % 2 else 1


# -- convolution elements ------------------------------------------------------

class ConvolutionElement:
    """Homogeneous equivariant map ``C -> P`` of a fixed degree."""

    def __init__(self, source: Cooperad, target: Operad, degree: int, components: dict | None = None,
                 check: bool = True, recipe=None):
        self.source, self.target, self.degree = source, target, degree
        self.max_arity = min(source.max_arity, target.max_arity)
        self.recipe = recipe
        comps = {}
        for n, m in (components or {}).items():
            want = (target.dim(n), source.dim(n))
            if m.shape != want:
                raise ShapeMismatch(f"arity {n}: shape {m.shape}, expected {want}")
            if m.nnz:
                comps[n] = m
        self.components = comps
        self._cols = {n: m.col_dict() for n, m in comps.items()}
        if check:
            for n, m in comps.items():
                for r, c, _ in m.triples():
                    if target.degree(n, r) != source.degree(n, c) + degree:
                        raise DegreeMismatch(f"arity {n}: entry ({r},{c}) is not of degree {degree}")

    def matrix(self, n: int) -> RationalMatrix:
        m = self.components.get(n)
        return m if m is not None else RationalMatrix.zeros(self.target.dim(n), self.source.dim(n))

    def apply(self, n: int, i: int) -> dict:
        col = self._cols.get(n)
        return dict(col.get(i, {})) if col else {}

    def is_zero(self) -> bool:
        return not self.components

    def arities(self):
        return sorted(self.components)

    def _same(self, other):
        if other.source is not self.source or other.target is not self.target:
            raise ShapeMismatch("convolution elements have different source or target")

    def __add__(self, other):
        self._same(other)
        if other.degree != self.degree and not (other.is_zero() or self.is_zero()):
            raise DegreeMismatch("cannot add elements of different degrees")
        deg = self.degree if not self.is_zero() else other.degree
        ns = set(self.components) | set(other.components)
        return ConvolutionElement(self.source, self.target, deg,
                                  {n: self.matrix(n) + other.matrix(n) for n in ns}, check=False)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return ConvolutionElement(self.source, self.target, self.degree,
                                  {n: m.scale(c) for n, m in self.components.items()}, check=False)

    def __eq__(self, other):
        if not isinstance(other, ConvolutionElement):
            return NotImplemented
        ns = set(self.components) | set(other.components)
        return all(self.matrix(n) == other.matrix(n) for n in ns)

    __hash__ = None

    def is_equivariant(self, n: int | None = None) -> bool:
        ns = [n] if n is not None else range(2, self.max_arity + 1)
        for k in ns:
            F = self.matrix(k)
            for j in range(k - 1):
                s = adjacent(k, j)
                if self.target.relabel_matrix(k, s) @ F != F @ self.source.relabel_matrix(k, s):
                    return False
        return True

    def vanishes_on_counit(self) -> bool:
        ci = getattr(self.source, "counit_index", None)
        if ci is None or self.source.dim(1) == 0:
            return True
        return not self.apply(1, ci)

    def preserves_weight(self) -> bool:
        for n, m in self.components.items():
            for r, c, _ in m.triples():
                if self.target.weight(n, r) != self.source.weight(n, c):
                    return False
        return True

    def on_vertex(self, node) -> dict:
        """Replace a source vertex by its image (a combination of target vertices)."""
        _, k, idx, ch = node
        key = self.target.key
        return {(key, k, j, ch): c for j, c in self.apply(k, idx).items()}

    def __repr__(self):
        return f"<ConvolutionElement {self.source.name}->{self.target.name} deg {self.degree} arities {self.arities()}>"


def zero_element(C: Cooperad, P: Operad, degree: int = -1) -> ConvolutionElement:
    return ConvolutionElement(C, P, degree, {})


def equivariant_average(C: Cooperad, P: Operad, degree: int, comps: dict) -> ConvolutionElement:
    """Project arbitrary components onto equivariant maps (Reynolds operator)."""
    out = {}
    for n, F in comps.items():
        acc = RationalMatrix.zeros(P.dim(n), C.dim(n))
        for s in all_perms(n):
            inv = T.inverse_perm(s)
            acc = acc + P.relabel_matrix(n, s) @ F @ C.relabel_matrix(n, inv)
        out[n] = acc.scale(Fraction(1, len(all_perms(n))))
    return ConvolutionElement(C, P, degree, out)


def random_element(C: Cooperad, P: Operad, degree: int, max_arity: int, rng: random.Random,
                   min_arity: int = 1, density: float = 0.6, bound: int = 3) -> ConvolutionElement:
    """Random homogeneous equivariant element with small integer entries before averaging."""
    comps = {}
    for n in range(min_arity, max_arity + 1):
        ents = []
        for c in range(C.dim(n)):
            if n == 1 and c == getattr(C, "counit_index", None):
                continue
            for r in range(P.dim(n)):
                if P.degree(n, r) == C.degree(n, c) + degree and rng.random() < density:
                    ents.append((r, c, Fraction(rng.randint(-bound, bound))))
        if ents:
            comps[n] = RationalMatrix(P.dim(n), C.dim(n), ents)
    return equivariant_average(C, P, degree, comps)


# -- the pre-Lie product and the differential -------------------------------------

def _check_pair(f, g):
    if f.source is not g.source or f.target is not g.target:
        raise ShapeMismatch("star needs a shared source and target")


def star(f: ConvolutionElement, g: ConvolutionElement) -> ConvolutionElement:
    """``f * g = -gamma_(1) (f o_(1) g) Delta_(1)``.

    The overall sign is the one for which the twisted differential on
    ``P o_alpha C`` squares to ``d^l`` of ``d(alpha) + alpha * alpha``.
    """
    _check_pair(f, g)
    C, P = f.source, f.target
    ckey = C.key
    comps = {}
    for n in range(1, f.max_arity + 1):
        if not C.dim(n) or not P.dim(n):
            continue
        tgt = [(P.key, n, j, tuple(range(n))) for j in range(P.dim(n))]
        src = [(ckey, n, i, tuple(range(n))) for i in range(C.dim(n))]

        def op(node, n=n):
            out: dict = {}
            for coef, tmpl in C.decompose_inf(n, node[2]):
                inner = [x for x in tmpl[3] if type(x) is not int][0]
                s = -coef * _sgn(g.degree * T.vdeg(tmpl))
                for gnode, cg in g.on_vertex(inner).items():
                    kids = tuple(gnode if x is inner else x for x in tmpl[3])
                    for fnode, cf in f.on_vertex((ckey, tmpl[1], tmpl[2], kids)).items():
                        T.add_into(out, T.collapse(fnode), s * cg * cf)
            return out

        M = flat_matrix(src, tgt, op)
        if M.nnz:
            comps[n] = M
    return ConvolutionElement(C, P, f.degree + g.degree, comps, check=False)


def differential(f: ConvolutionElement) -> ConvolutionElement:
    """``d_P f - (-1)^|f| f d_C``."""
    C, P = f.source, f.target
    s = _sgn(f.degree)
    comps = {}
    for n in range(1, f.max_arity + 1):
        F = f.matrix(n)
        if not F.nnz:
            continue
        M = P.diff_matrix(n) @ F - (F @ C.diff_matrix(n)).scale(s)
        if M.nnz:
            comps[n] = M
    return ConvolutionElement(C, P, f.degree - 1, comps, check=False)


def mc_residual(alpha: ConvolutionElement) -> ConvolutionElement:
    return differential(alpha) + star(alpha, alpha)


def is_twisting(alpha: ConvolutionElement, max_arity: int | None = None) -> Certificate:
    """Maurer-Cartan certificate with per-arity residual sizes."""
    N = max_arity or alpha.max_arity
    if alpha.degree != -1 and not alpha.is_zero():
        return Certificate("maurer-cartan", False, {"degree": alpha.degree}, where="degree")
    res = mc_residual(alpha)
    details, where = {}, None
    for n in range(1, N + 1):
        m = res.matrix(n) if alpha.source.dim(n) and alpha.target.dim(n) else None
        nnz = m.nnz if m is not None else 0
        details[n] = {"residual_nonzeros": nnz,
                      "residual_max": max((abs(v) for _, _, v in m.triples()), default=0) if m is not None else 0}
        if nnz and where is None:
            where = n
    if not alpha.vanishes_on_counit():
        details["counit"] = "alpha is nonzero on the counit"
        where = where or 1
    return Certificate("maurer-cartan", where is None, details, where=where)


class TwistingMorphism(ConvolutionElement):
    """A degree -1 convolution element certified to satisfy the Maurer-Cartan equation."""

    def __init__(self, alpha: ConvolutionElement, max_arity: int | None = None, verify: bool = True):
        super().__init__(alpha.source, alpha.target, -1, alpha.components, check=False, recipe=alpha.recipe)
        if verify:
            cert = is_twisting(self, max_arity)
            if not cert.ok:
                raise NotTwisting(f"Maurer-Cartan equation fails in arity {cert.where}")
        self.alpha = alpha


# -- the standard twisting morphisms ----------------------------------------------

def kappa(max_arity: int, verify: bool = True) -> ConvolutionElement:
    """Binary generator of the shifted cocommutative cooperad sent to the bracket."""
    if max_arity < 2:
        raise ShapeMismatch("kappa needs max_arity >= 2")
    C = shifted_cocomm(max_arity)
    P = LieOperad(max_arity)
    alpha = ConvolutionElement(C, P, -1, {2: RationalMatrix(1, 1, [(0, 0, 1)])}, recipe=("kappa", max_arity))
    if verify:
        return TwistingMorphism(alpha, max_arity)
    return alpha


def free_cofree_twist(V: ChainComplex, max_weight: int, full: bool = False, verify: bool = True):
    """Projection to sV followed by desuspension into V inside T(V).

    By default the source is the sub-cooperad ``I + sV``; ``full=True`` uses
    the whole truncated cofree cooperad, where the Maurer-Cartan equation
    fails in weight two.
    """
    C = tensor_coalgebra(V, max_weight) if full else koszul_dual_tensor_coalgebra(V, max_weight)
    P = tensor_algebra(V, max_weight)
    letters = suspended_letters(C.Q, V)
    ents = []
    for i in range(C.dim(1)):
        w = C.Q.words[i]
        if len(w) == 1:
            ents.append((P.index_of((letters[w[0]],)), i, ONE))
    dims = {g: k for g, k in V.dims.items()}
    alpha = ConvolutionElement(C, P, -1, {1: RationalMatrix(P.dim(1), C.dim(1), ents)} if ents else {},
                               recipe=("free-cofree", tuple(sorted(dims.items())), max_weight, full))
    if verify and not full:
        return TwistingMorphism(alpha)
    return alpha


# -- twisted differentials on trees -------------------------------------------------

def dl_op(F: ConvolutionElement, t) -> dict:
    """``d^l_F`` at the root of a tree whose root is a P-vertex over C-vertices."""
    C = F.source
    key, k, idx, ch = t
    out: dict = {}
    pre = T.vdeg(t)
    for j, cj in enumerate(ch):
        if type(cj) is int or cj[0] != C.key:
            pre += T.tdeg(cj) if type(cj) is not int else 0
            continue
        s0 = _sgn(F.degree * pre)
        for coef, tmpl in C.decompose(cj[1], cj[2]):
            sub, s = T.substitute_signed(tmpl, cj[3])
            for pnode, c in F.on_vertex(sub).items():
                tree = (key, k, idx, ch[:j] + (pnode,) + ch[j + 1:])
                T.add_into(out, T.graft(tree, j), s0 * s * coef * c)
        pre += T.tdeg(cj)
    return out


def dr_vertex_op(F: ConvolutionElement, collapse=T.collapse):
    """Operator for ``d^r_F`` at a single C-vertex; feed it to ``trees.apply_local``."""
    C = F.source

    def op(node) -> dict:
        out: dict = {}
        _, m, i, ch = node
        for coef, tmpl in C.decompose_inf(m, i):
            sub, s = T.substitute_signed(tmpl, ch)
            kids = sub[3]
            jj = next(p for p, x in enumerate(tmpl[3]) if type(x) is not int)
            before = T.vdeg(sub) + sum(T.tdeg(x) if type(x) is not int else 0 for x in kids[:jj])
            s1 = s * _sgn(F.degree * before) * coef
            for pnode, c in F.on_vertex(kids[jj]).items():
                for q, cq in collapse(pnode).items():
                    T.add_into(out, {(sub[0], sub[1], sub[2], kids[:jj] + (q,) + kids[jj + 1:]): s1 * c * cq})
        return out

    return op


def dr_op(F: ConvolutionElement, t, collapse=T.collapse) -> dict:
    ckey = F.source.key
    return T.apply_local(t, dr_vertex_op(F, collapse), F.degree, pred=lambda v: v[0] == ckey)


# -- twisted composite products ----------------------------------------------------------

def _weight_keep(max_weight):
    if max_weight is None:
        return None
    return lambda t: T.tweight(t) <= max_weight


def _basis(levels, n, max_weight=None, weight=None):
    keep = _weight_keep(max_weight)
    mod = CompositeModule(levels, n, keep=keep)
    b = mod.basis(n)
    if weight is not None:
        b = tuple(t for t in b if T.tweight(t) == weight)
    return b


def _complex(basis, op, meta=None):
    idx = set(basis)
    return complex_from_trees(basis, op, drop=lambda s: s not in idx, meta=meta)


def left_complex(alpha: ConvolutionElement, n: int, max_weight=None, weight=None) -> ChainComplex:
    """``(P o_alpha C)(n)`` with differential ``d_{PoC} + d^l_alpha``."""
    basis = _basis((alpha.target, alpha.source), n, max_weight, weight)
    return _complex(basis, lambda t: T.add_into(T.internal_diff(t), dl_op(alpha, t)),
                    meta={"arity": n, "kind": "P o_a C", "weight": weight})


def right_complex(alpha: ConvolutionElement, n: int, max_weight=None, weight=None) -> ChainComplex:
    """``(C o_alpha P)(n)`` with differential ``d_{CoP} + d^r_alpha``."""
    basis = _basis((alpha.source, alpha.target), n, max_weight, weight)
    return _complex(basis, lambda t: T.add_into(T.internal_diff(t), dr_op(alpha, t)),
                    meta={"arity": n, "kind": "C o_a P", "weight": weight})


def two_sided_op(alpha):
    def op(t):
        out = T.internal_diff(t)
        T.add_into(out, dr_op(alpha, t))
        T.add_into(out, dl_op(alpha, t), -1)
        return out
    return op


def two_sided_complex(alpha: ConvolutionElement, n: int, max_weight=None, weight=None) -> ChainComplex:
    """``(P o_alpha C o_alpha P)(n)``."""
    P, C = alpha.target, alpha.source
    basis = _basis((P, C, P), n, max_weight, weight)
    return _complex(basis, two_sided_op(alpha), meta={"arity": n, "kind": "P o_a C o_a P", "weight": weight})


def _require_twisting(alpha, N):
    if isinstance(alpha, TwistingMorphism):
        return
    cert = is_twisting(alpha, N)
    if not cert.ok:
        raise NotTwisting(f"Maurer-Cartan equation fails in arity {cert.where}")


def _check_objects(P, C, alpha):
    if alpha.target is not P or alpha.source is not C:
        raise ShapeMismatch("alpha does not go from the given cooperad to the given operad")


def twisted_left(P: Operad, C: Cooperad, alpha: ConvolutionElement, max_arity: int, max_weight=None) -> dict:
    _check_objects(P, C, alpha)
    _require_twisting(alpha, max_arity)
    return {n: left_complex(alpha, n, max_weight) for n in range(1, max_arity + 1)}


def twisted_right(P: Operad, C: Cooperad, alpha: ConvolutionElement, max_arity: int, max_weight=None) -> dict:
    _check_objects(P, C, alpha)
    _require_twisting(alpha, max_arity)
    return {n: right_complex(alpha, n, max_weight) for n in range(1, max_arity + 1)}


def two_sided(P: Operad, C: Cooperad, alpha: ConvolutionElement, max_arity: int, max_weight=None) -> dict:
    _check_objects(P, C, alpha)
    _require_twisting(alpha, max_arity)
    return {n: two_sided_complex(alpha, n, max_weight) for n in range(1, max_arity + 1)}


# -- square of the twisted differential ------------------------------------------------------------

def left_matrices(alpha: ConvolutionElement, n: int):
    """``(D, L)``: the twisted differential on ``(P o C)(n)`` and ``d^l`` of the MC residual."""
    basis = _basis((alpha.target, alpha.source), n)
    idx = set(basis)
    drop = lambda s: s not in idx  # noqa: E731
    D = flat_matrix(basis, basis, lambda t: T.add_into(T.internal_diff(t), dl_op(alpha, t)), drop)
    res = mc_residual(alpha)
    L = flat_matrix(basis, basis, lambda t: dl_op(res, t), drop)
    return D, L


# -- augmentation maps and the Koszul criterion ----------------------------------------

def _unit_complex(n, weight=None):
    if n == 1 and weight in (None, 0):
        return ChainComplex({0: 1})
    return ChainComplex({})


def _counit_of(t, P, C):
    """Value of the projection to I on a tree of P o C or C o P."""
    coeff = ONE
    for v in _vertices(t):
        mod = T.module(v[0])
        if v[1] != 1:
            return 0
        if mod is P:
            coeff *= P.augmentation(1, v[2])
        elif mod is C:
            coeff *= C.counit(1, v[2])
        if not coeff:
            return 0
    return coeff


def _vertices(t):
    if type(t) is int:
        return []
    out = [t]
    for c in t[3]:
        out.extend(_vertices(c))
    return out


def _aug_to_unit(alpha, cx: ChainComplex, levels, n, max_weight, weight) -> ChainMap:
    basis = _basis(levels, n, max_weight, weight)
    tgt = _unit_complex(n, weight)
    P, C = alpha.target, alpha.source
    ents = []
    for c, t in enumerate(basis):
        v = _counit_of(t, P, C)
        if v:
            ents.append((0, c, Fraction(v)))
    M = RationalMatrix(tgt.total_dim, len(basis), ents)
    return flat_chain_map(cx, [T.tdeg(t) for t in basis], tgt, [0] * tgt.total_dim, M)


def _aug_two_sided(alpha, cx, n, max_weight, weight) -> tuple:
    """Map ``P o C o P -> P``: C-vertices through the counit, then compose."""
    P, C = alpha.target, alpha.source
    basis = _basis((P, C, P), n, max_weight, weight)
    tgt_basis = [(P.key, n, j, tuple(range(n))) for j in range(P.dim(n))
                 if weight is None or P.weight(n, j) == weight]
    tgt_idx = {t: i for i, t in enumerate(tgt_basis)}

    def fn(t):
        key, k, idx, ch = t
        coeff = ONE
        kids = []
        for c in ch:
            if c[1] != 1:
                return {}
            coeff *= C.counit(1, c[2])
            if not coeff:
                return {}
            kids.append(c[3][0])
        tree = (key, k, idx, tuple(kids))
        return {s: coeff * v for s, v in T.collapse(tree).items()}

    M = flat_matrix(basis, tgt_basis, fn, drop=lambda s: s not in tgt_idx)
    tdegs = [T.tdeg(t) for t in tgt_basis]
    tgt = _flat_complex(P, tgt_basis)
    return tgt, flat_chain_map(cx, [T.tdeg(t) for t in basis], tgt, tdegs, M)


def _flat_complex(P, basis):
    idx = set(basis)
    return complex_from_trees(basis, T.internal_diff, drop=lambda s: s not in idx)


def _homology_verdict(cx: ChainComplex, f: ChainMap, expected: ChainComplex) -> dict:
    h = {g: b for g, b in cx.homology().items() if b}
    want = {g: b for g, b in expected.homology().items() if b}
    ok = h == want and f.commutes() and is_quasi_iso(f)
    return {"ok": bool(ok), "homology": h, "expected": want}


def _arity_report(alpha, n, max_weight, weight):
    P, C = alpha.target, alpha.source
    rep = {}
    cx = right_complex(alpha, n, max_weight, weight)
    rep["c_circ_p"] = _homology_verdict(cx, _aug_to_unit(alpha, cx, (C, P), n, max_weight, weight),
                                        _unit_complex(n, weight))
    cx = left_complex(alpha, n, max_weight, weight)
    rep["p_circ_c"] = _homology_verdict(cx, _aug_to_unit(alpha, cx, (P, C), n, max_weight, weight),
                                        _unit_complex(n, weight))
    cx = two_sided_complex(alpha, n, max_weight, weight)
    tgt, f = _aug_two_sided(alpha, cx, n, max_weight, weight)
    rep["two_sided"] = _homology_verdict(cx, f, tgt)
    return rep


_WORK: dict = {}


def _worker(task):
    alpha = _WORK["alpha"]
    n, mw, w = task
    return _arity_report(alpha, n, mw, w)


def _tasks(alpha, max_arity, max_weight):
    tasks = []
    weighted = alpha.preserves_weight() and alpha.source.max_arity == 1 and max_weight is not None
    for n in range(1, max_arity + 1):
        if not alpha.source.dim(n) and n > 1:
            continue
        if weighted:
            for w in range(0, max_weight + 1):
                tasks.append((n, max_weight, w))
        else:
            tasks.append((n, None, None))
    return tasks


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("OPFORGE_JOBS", "1")))
    except ValueError:
        return 1


def koszul_check(alpha: ConvolutionElement, max_arity: int = 5, max_weight: int | None = None,
                 jobs: int | None = None) -> Certificate:
    """Arity-wise acyclicity of the three twisted composite products.

    Arity-one morphisms that preserve weight (such as the free/cofree one)
    are checked weight by weight up to ``max_weight``.  Each verdict
    compares homology with the expected answer and checks that the
    augmentation is a quasi-isomorphism.
    """
    if max_weight is None and getattr(alpha.target, "max_weight", None) is not None:
        max_weight = alpha.target.max_weight
    N = min(max_arity, alpha.max_arity)
    tasks = _tasks(alpha, N, max_weight)
    jobs = jobs or default_jobs()
    if jobs > 1 and len(tasks) > 1 and "fork" in multiprocessing.get_all_start_methods():
        _WORK["alpha"] = alpha
        try:
            ctx = multiprocessing.get_context("fork")
            with ProcessPoolExecutor(max_workers=jobs, mp_context=ctx) as ex:
                results = list(ex.map(_worker, tasks))
        finally:
            _WORK.clear()
    else:
        results = [_arity_report(alpha, *t) for t in tasks]
    details, where = {}, None
    agree = True
    for (n, _, w), rep in zip(tasks, results):
        label = n if w is None else f"{n}/w{w}"
        verdicts = {k: rep[k]["ok"] for k in ("c_circ_p", "p_circ_c", "two_sided")}
        same = len(set(verdicts.values())) == 1
        agree &= same
        details[label] = {
            **verdicts,
            "agree": same,
            "homology_dims": {k: rep[k]["homology"] for k in ("c_circ_p", "p_circ_c", "two_sided")},
        }
        if not all(verdicts.values()) and where is None:
            where = label
    mc = is_twisting(alpha, N)
    ok = where is None and mc.ok
    details["maurer_cartan"] = mc.ok
    details["verdicts_agree"] = agree
    return Certificate("koszul", ok, details, where=where if where is not None else (None if mc.ok else "mc"))


def from_recipe(recipe):
    """Rebuild a morphism from its recipe (used by the command line)."""
    kind = recipe[0]
    if kind == "kappa":
        return kappa(recipe[1])
    if kind == "free-cofree":
        _, dims, w, full = recipe
        return free_cofree_twist(ChainComplex(dict(dims)), w, full=full)
    raise ValueError(f"unknown recipe {kind!r}")


__all__ = [
    "ConvolutionElement", "TwistingMorphism", "star", "differential", "mc_residual", "is_twisting",
    "kappa", "free_cofree_twist", "twisted_left", "twisted_right", "two_sided", "left_complex",
    "right_complex", "two_sided_complex", "koszul_check", "equivariant_average", "random_element",
    "zero_element", "dl_op", "dr_op", "left_matrices",
]
