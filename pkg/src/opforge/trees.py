"""Labelled trees: the common basis language for composite products.

A vertex is a tuple ``(key, arity, index, children)``.  ``key`` names a
registered module (anything with ``dim``, ``degree``, ``relabel`` and
``diff``), ``index`` is a basis element of its arity component and
``children`` holds either subtrees or integer leaves.  Algebra elements are
arity-0 vertices.

Elements of composites live in coinvariants.  Every tree is brought to a
canonical form: children sorted (by smallest leaf, or by the tuple itself for
leafless subtrees), the vertex relabelled accordingly with the Koszul sign of
the reordering, and, where equal children leave a residual stabilizer, the
vertex projected onto a fixed basis of the stabilizer coinvariants.

Flattening order is pre-order.  An operator of degree ``e`` acting at a
vertex picks up ``(-1)^(e * degree of everything before it)``.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exactla import RationalMatrix, pivot_columns, solve

ONE = Fraction(1)

_REGISTRY: dict = {}
_COUNTER = itertools.count()


def register(mod, name: str) -> str:
    key = f"{name}#{next(_COUNTER)}"
    _REGISTRY[key] = mod
    return key


def module(key: str):
    return _REGISTRY[key]


# -- permutations -----------------------------------------------------------

def inverse_perm(p):
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def compose_perm(a, b):
    """``(a o b)(i) = a[b[i]]``."""
    return tuple(a[j] for j in b)


def perm_sign(p) -> int:
    p = list(p)
    s = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if not seen[i]:
            j, ln = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                ln += 1
            if ln % 2 == 0:
                s = -s
    return s


def koszul_sign(degrees, target) -> int:
    """Sign of moving item ``p`` (degree ``degrees[p]``) to position ``target[p]``."""
    odd = [i for i, g in enumerate(degrees) if g % 2]
    s = 1
    for a in range(len(odd)):
        ta = target[odd[a]]
        for b in range(a + 1, len(odd)):
            if ta > target[odd[b]]:
                s = -s
    return s


def set_partitions(items):
    """Set partitions of a tuple, blocks ordered by their first element."""
    items = tuple(items)
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield ((first,),) + part
        for i in range(len(part)):
            yield part[:i] + ((first,) + part[i],) + part[i + 1:]


# -- basic tree data --------------------------------------------------------

def is_vertex(t) -> bool:
    return type(t) is tuple


@lru_cache(maxsize=None)
def vdeg(t) -> int:
    return module(t[0]).degree(t[1], t[2])


@lru_cache(maxsize=None)
def tdeg(t) -> int:
    if type(t) is int:
        return 0
    return module(t[0]).degree(t[1], t[2]) + sum(tdeg(c) for c in t[3])


@lru_cache(maxsize=None)
def tweight(t) -> int:
    if type(t) is int:
        return 0
    return module(t[0]).weight(t[1], t[2]) + sum(tweight(c) for c in t[3])


@lru_cache(maxsize=None)
def minleaf(t):
    if type(t) is int:
        return t
    m = None
    for c in t[3]:
        x = minleaf(c)
        if x is not None and (m is None or x < m):
            m = x
    return m


@lru_cache(maxsize=None)
def count_vertices(t, key) -> int:
    if type(t) is int:
        return 0
    return (t[0] == key) + sum(count_vertices(c, key) for c in t[3])


def leaves(t) -> list:
    if type(t) is int:
        return [t]
    out = []
    for c in t[3]:
        out.extend(leaves(c))
    return out


def _sort_key(t):
    m = minleaf(t)
    return (0, m) if m is not None else (1, t)


def map_leaves(t, f):
    if type(t) is int:
        return f(t)
    return (t[0], t[1], t[2], tuple(map_leaves(c, f) for c in t[3]))


def substitute(t, children):
    """Replace leaf ``p`` by ``children[p]``."""
    if type(t) is int:
        return children[t]
    return (t[0], t[1], t[2], tuple(substitute(c, children) for c in t[3]))


def show(t) -> str:
    if type(t) is int:
        return str(t)
    mod = module(t[0])
    lab = mod.label(t[1], t[2])
    if not t[3]:
        return lab
    return f"{lab}(" + ",".join(show(c) for c in t[3]) + ")"


# -- linear combinations ----------------------------------------------------

def add_into(acc: dict, terms, coeff=ONE):
    for t, c in (terms.items() if isinstance(terms, dict) else terms):
        v = acc.get(t, 0) + coeff * c
        if v:
            acc[t] = v
        else:
            acc.pop(t, None)
    return acc


def lincomb_canonical(terms: dict) -> dict:
    out: dict = {}
    for t, c in terms.items():
        add_into(out, canonical(t), c)
    return out


# -- stabilizer coinvariants ------------------------------------------------

@lru_cache(maxsize=None)
def stabilizer_projection(key: str, k: int, runs: tuple):
    """Projection of M(k) onto coinvariants of a Young subgroup.

    ``runs`` is a tuple of ``(start, length, odd)``; the group permutes
    positions inside each run and acts with the sign character on odd runs.
    Returns ``(pivots, table)`` where ``table[i]`` is ``{j: c}`` expressing the
    class of basis vector ``i`` in terms of the pivot classes.
    """
    mod = module(key)
    n = mod.dim(k)
    group_parts = []
    for start, length, odd in runs:
        parts = []
        for p in itertools.permutations(range(length)):
            sg = perm_sign(p) if odd else 1
            parts.append((p, sg))
        group_parts.append((start, parts))
    order = 1
    for _, length, _ in runs:
        order *= factorial(length)
    cols = []
    for i in range(n):
        acc: dict = {}
        for combo in itertools.product(*[parts for _, parts in group_parts]):
            perm = list(range(k))
            sg = 1
            for (start, _), (p, s) in zip(group_parts, combo):
                for a, b in enumerate(p):
                    perm[start + a] = start + b
                sg *= s
            add_into(acc, mod.relabel(k, i, tuple(perm)), Fraction(sg, order))
        cols.append(acc)
    E = RationalMatrix.from_columns(n, cols)
    piv = pivot_columns(E)
    table = []
    if piv:
        basis = E.submatrix(list(range(n)), piv)
        coords = solve(basis, E)
        cd = coords.col_dict()
        for i in range(n):
            table.append({piv[r]: v for r, v in cd.get(i, {}).items()})
    else:
        table = [{} for _ in range(n)]
    return tuple(piv), tuple(tuple(sorted(t.items())) for t in table)


def _runs(children) -> tuple:
    runs = []
    i, k = 0, len(children)
    while i < k:
        j = i + 1
        while j < k and children[j] == children[i]:
            j += 1
        if j - i > 1:
            runs.append((i, j - i, tdeg(children[i]) % 2))
        i = j
    return tuple(runs)


@lru_cache(maxsize=None)
def canon_vertex(key, k, idx, kids) -> tuple:
    mod = module(key)
    keys = [_sort_key(c) for c in kids]
    order = sorted(range(k), key=lambda i: keys[i])
    newkids = tuple(kids[o] for o in order)
    if order != list(range(k)):
        inv = inverse_perm(order)
        sign = koszul_sign([tdeg(c) for c in kids], inv)
        rel = mod.relabel(k, idx, inv)
    else:
        sign = 1
        rel = {idx: ONE}
    runs = _runs(newkids)
    if runs:
        _, table = stabilizer_projection(key, k, runs)
        proj: dict = {}
        for i, c in rel.items():
            for j, v in table[i]:
                add_into(proj, ((j, v),), c)
        rel = proj
    return tuple(((key, k, j, newkids), sign * c) for j, c in sorted(rel.items()) if c)


@lru_cache(maxsize=None)
def canonical(t) -> tuple:
    """Canonical form of a tree as a tuple of ``(tree, coefficient)``."""
    if type(t) is int or not t[3]:
        return ((t, ONE),)
    key, k, idx, ch = t
    opts = [canonical(c) for c in ch]
    if all(len(o) == 1 and o[0][1] == 1 for o in opts):
        return canon_vertex(key, k, idx, tuple(o[0][0] for o in opts))
    out: dict = {}
    for combo in itertools.product(*opts):
        coeff = ONE
        for _, c in combo:
            coeff *= c
        if coeff:
            add_into(out, canon_vertex(key, k, idx, tuple(x for x, _ in combo)), coeff)
    return tuple(out.items())


def is_canonical(t) -> bool:
    c = canonical(t)
    return len(c) == 1 and c[0] == (t, ONE)


# -- enumeration of canonical bases ----------------------------------------

@lru_cache(maxsize=None)
def leaf_trees(levels: tuple, leaves_: tuple) -> tuple:
    """Canonical trees with vertex levels ``levels`` (top first) on leaf set ``leaves_``."""
    if not levels:
        return (leaves_[0],) if len(leaves_) == 1 else ()
    mod = module(levels[0])
    out = []
    for blocks in set_partitions(leaves_):
        k = len(blocks)
        if k > mod.max_arity:
            continue
        dk = mod.dim(k)
        if not dk:
            continue
        blocks = sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0])
        subs = [leaf_trees(levels[1:], b) for b in blocks]
        if any(not s for s in subs):
            continue
        for idx in range(dk):
            for combo in itertools.product(*subs):
                out.append((levels[0], k, idx, tuple(combo)))
    out.sort(key=_tree_order)
    return tuple(out)


@lru_cache(maxsize=None)
def inf_leaf_trees(top: str, bottom: str, n: int) -> tuple:
    """Canonical basis of ``(M o_(1) N)(n)``: one N-vertex, all other inputs bare."""
    M, N = module(top), module(bottom)
    out = []
    for b in range(1, n + 1):
        if b > N.max_arity or not N.dim(b):
            continue
        k = n - b + 1
        if k > M.max_arity or not M.dim(k):
            continue
        for B in itertools.combinations(range(n), b):
            rest = [x for x in range(n) if x not in B]
            for j in range(N.dim(b)):
                sub = (bottom, b, j, B)
                kids = sorted(rest + [sub], key=_sort_key)
                for i in range(M.dim(k)):
                    out.append((top, k, i, tuple(kids)))
    out.sort(key=_tree_order)
    return tuple(out)


@lru_cache(maxsize=None)
def _tree_order(t):
    """Total order on trees mixing leaves and vertices."""
    if type(t) is int:
        return (0, t)
    return (1, t[1], t[2], tuple(_tree_order(c) for c in t[3]), t[0])


def multisets(atoms: list, sizes: list, total: int):
    """Non-decreasing index sequences into ``atoms`` with sizes summing to ``total``."""
    n = len(atoms)

    def rec(start, remaining):
        if remaining == 0:
            yield ()
            return
        for i in range(start, n):
            s = sizes[i]
            if s <= remaining:
                for rest in rec(i, remaining - s):
                    yield (i,) + rest

    yield from rec(0, total)


def vertex_over(key: str, kids: tuple) -> list:
    """All canonical vertices ``key`` with the given sorted leafless children."""
    mod = module(key)
    k = len(kids)
    if k > mod.max_arity or not mod.dim(k):
        return []
    runs = _runs(kids)
    if runs:
        piv, _ = stabilizer_projection(key, k, runs)
        idxs = piv
    else:
        idxs = range(mod.dim(k))
    return [(key, k, i, kids) for i in idxs]


def bottom_trees(levels: tuple, base: list, base_size, total: int, cache=None) -> list:
    """Canonical trees over arity-0 ``base`` vertices with total size ``total``.

    ``levels`` lists module keys from the root downwards; the deepest level's
    children are base vertices.  ``base_size(v)`` is a positive integer.
    """
    if cache is None:
        cache = {}

    def level(l, s):
        ck = (l, s)
        if ck in cache:
            return cache[ck]
        if l == len(levels):
            res = [v for v in base if base_size(v) == s]
        else:
            atoms, sizes = [], []
            for s2 in range(1, s + 1):
                for a in level(l + 1, s2):
                    atoms.append(a)
                    sizes.append(s2)
            order = sorted(range(len(atoms)), key=lambda i: atoms[i])
            atoms = [atoms[i] for i in order]
            sizes = [sizes[i] for i in order]
            res = []
            for ms in multisets(atoms, sizes, s):
                kids = tuple(atoms[i] for i in ms)
                res.extend(vertex_over(levels[l], kids))
        cache[ck] = res
        return res

    return level(0, total)


# -- local operators --------------------------------------------------------

def apply_local(t, op, degree: int, pred=None) -> dict:
    """Sum over vertices v (with ``pred(v)``) of t with v's subtree replaced by ``op(v)``."""

    def rec(node, before):
        res: dict = {}
        if type(node) is int:
            return res
        if pred is None or pred(node):
            s = -1 if (degree % 2 and before % 2) else 1
            for nn, c in op(node).items():
                v = res.get(nn, 0) + s * c
                if v:
                    res[nn] = v
                else:
                    res.pop(nn, None)
        key, k, idx, ch = node
        pos = before + vdeg(node)
        for j, c in enumerate(ch):
            if type(c) is not int:
                for nc, v in rec(c, pos).items():
                    nn = (key, k, idx, ch[:j] + (nc,) + ch[j + 1:])
                    w = res.get(nn, 0) + v
                    if w:
                        res[nn] = w
                    else:
                        res.pop(nn, None)
                pos += tdeg(c)
        return res

    return rec(t, 0)


def vertex_diff(node) -> dict:
    key, k, idx, ch = node
    return {(key, k, j, ch): c for j, c in module(key).diff(k, idx).items()}


def internal_diff(t) -> dict:
    return apply_local(t, vertex_diff, -1)


def graft(t, j: int) -> dict:
    """Compose child ``j`` (a vertex of the same operad) into the root."""
    key, k, idx, ch = t
    q = ch[j]
    qkey, n, qidx, qch = q
    before = sum(tdeg(c) for c in ch[:j])
    sign = -1 if (vdeg(q) % 2 and before % 2) else 1
    comp = module(key).compose(k, idx, j, n, qidx)
    newch = ch[:j] + qch + ch[j + 1:]
    return {(key, k + n - 1, r, newch): sign * c for r, c in comp.items() if c}


def collapse(t) -> dict:
    """Compose every child that is a vertex of the root's operad."""
    cur = {t: ONE}
    key = t[0]
    for j in range(len(t[3]) - 1, -1, -1):
        c = t[3][j]
        if type(c) is int or c[0] != key:
            continue
        nxt: dict = {}
        for tt, v in cur.items():
            add_into(nxt, graft(tt, j), v)
        cur = nxt
    return cur


def _preorder_items(t, nchildren):
    """Positions of template vertices and substituted leaves in pre-order."""
    verts, order = [], []

    def rec(node):
        if type(node) is int:
            order.append(("leaf", node))
            return
        verts.append(node)
        order.append(("v", len(verts) - 1))
        for c in node[3]:
            rec(c)

    rec(t)
    return verts, order


def substitute_signed(template, children) -> tuple:
    """Substitute children into a template with the associativity Koszul sign.

    Formal order: template vertices in pre-order, then children by leaf label.
    """
    verts, order = _preorder_items(template, len(children))
    nv = len(verts)
    degs = [vdeg(v) for v in verts] + [tdeg(c) for c in children]
    target = [0] * (nv + len(children))
    for pos, (kind, x) in enumerate(order):
        if kind == "v":
            target[x] = pos
        else:
            target[nv + x] = pos
    return substitute(template, children), koszul_sign(degs, target)


def apply_map_at_root(node, matrix_fn, target_key: str) -> dict:
    """Replace the root vertex via ``matrix_fn(arity, index) -> {j: c}`` landing in ``target_key``."""
    key, k, idx, ch = node
    return {(target_key, k, j, ch): c for j, c in matrix_fn(k, idx).items() if c}
