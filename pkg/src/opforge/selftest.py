"""The acceptance suite as a library: one function per criterion, each returning a Certificate.

Every criterion uses fixed seeds, so reports are reproducible byte for byte.
Fault injection (see :mod:`opforge.debug`) is applied by the caller.
"""
from __future__ import annotations

import itertools
import random
from math import comb

from . import debug
from .barcobar import _kappa, bar, bar_of_free_check, ce_algebra, ce_betti, cobar, counit_graded_check
from .certificate import Certificate
from .complexes import ChainComplex, cone, disk, tensor
from .corpus import random_chain_map, random_complex, random_lie_algebra, random_matrix
from .errors import OpforgeError
from .exactla import RationalMatrix, kernel_basis, rank
from .opcoop import (EndOperad, abelian_lie, cocomm_nu_cooperad, comm_nu_operad, heisenberg3, lie_operad,
                     shifted_cocomm, sl2, suspension_iso_check)
from .tangent import cotangent_routes, dk_unit_check, free_comm_algebra
from .twisting import (free_cofree_twist, is_twisting, kappa, koszul_check, left_complex, left_matrices,
                       random_element, right_complex, two_sided_complex)

SEED = 20240601


def d_squared_zero(X: ChainComplex) -> bool:
    return all((X.diff(n - 1) @ X.diff(n)).is_zero() for n in X.dims)


# -- 1 --------------------------------------------------------------------------------------

def structural(seed: int = SEED) -> Certificate:
    rng = random.Random(seed)
    counts: dict = {}
    fails: list = []

    def record(kind, ok):
        counts[kind] = counts.get(kind, 0) + 1
        if not ok:
            fails.append(kind)

    for _ in range(15):
        X = random_complex(rng)
        record("cone", d_squared_zero(cone(random_chain_map(rng, X))))
    for _ in range(10):
        X, Y = random_complex(rng, 0, 1, 2), random_complex(rng, -1, 1, 2)
        record("tensor", d_squared_zero(tensor(X, Y)))
    alpha = _kappa(3)
    for n in range(1, 4):
        for build in (left_complex, right_complex, two_sided_complex):
            record("twisted-composite", d_squared_zero(build(alpha, n)))
    for V in (ChainComplex({0: 1}), ChainComplex({0: 1, 1: 1}), disk(1, 1)):
        beta = free_cofree_twist(V, 3)
        for build in (left_complex, right_complex, two_sided_complex):
            record("twisted-composite", d_squared_zero(build(beta, 1)))
    bars = []
    for _ in range(8):
        g = random_lie_algebra(rng)
        B = bar(g, alpha, 3)
        bars.append(B)
        record("bar", B.check().ok and d_squared_zero(B.total()))
    for B in bars[:5]:
        Om = cobar(B.coalgebra(), alpha, 3)
        record("cobar", Om.check().ok and d_squared_zero(Om.total()))
    for _ in range(6):
        g = random_lie_algebra(rng)
        A = ce_algebra(g, 3)
        record("ce", d_squared_zero(A.complex()) and A.derivation_agrees())
    total = sum(counts.values())
    ok = not fails and total >= 50
    return Certificate("structural d^2=0", ok, {"inputs": total, "by_kind": counts, "failures": len(fails)},
                       fails[0] if fails else None)


# -- 2 --------------------------------------------------------------------------------------

def maurer_cartan(max_arity: int = 6) -> Certificate:
    base = is_twisting(kappa(max_arity, verify=False), max_arity)
    with debug.injected("kappa-sign"):
        mutant = is_twisting(kappa(max_arity, verify=False), max_arity)
    ok = base.ok and (not mutant.ok) and mutant.where == 3
    return Certificate("maurer-cartan", ok, {"kappa": base.details, "kappa_ok": base.ok,
                                             "mutant_fails_at": mutant.where}, base.where)


# -- 3 --------------------------------------------------------------------------------------

def twisted_square(samples: int = 20, seed: int = SEED) -> Certificate:
    """``d_alpha^2 = d^l`` of the Maurer-Cartan residual, for random non-MC alpha."""
    rng = random.Random(seed)
    W = ChainComplex({0: 1, 1: 1, 2: 1}, {2: RationalMatrix(1, 1, [(0, 0, 1)])})
    pairs = [
        (cocomm_nu_cooperad(3), EndOperad(W, 3)),
        (shifted_cocomm(3), EndOperad(W, 3)),
        (shifted_cocomm(3), EndOperad(disk(1, 1), 3)),
    ]
    done, attempts, fails = 0, 0, []
    while done < samples and attempts < 20 * samples:
        attempts += 1
        C, P = pairs[attempts % len(pairs)]
        alpha = random_element(C, P, -1, 3, rng, min_arity=1, bound=2)
        if is_twisting(alpha, 3).ok:
            continue
        for n in range(1, 4):
            D, L = left_matrices(alpha, n)
            if D @ D != L:
                fails.append((done, n))
        done += 1
    if done < samples:
        fails.append(("too few non-MC samples", done))
    return Certificate("twisted square", not fails, {"samples": done, "failures": len(fails)}, fails[0] if fails else None)


# -- 4, 5 -----------------------------------------------------------------------------------

def koszul_kappa(max_arity: int = 5, jobs=None) -> Certificate:
    cert = koszul_check(_kappa(max_arity), max_arity, jobs=jobs)
    ok = cert.ok and cert.details["verdicts_agree"]
    return Certificate("koszul kappa", ok, cert.details, cert.where)


def koszul_free_cofree(max_weight: int = 4, jobs=None) -> Certificate:
    out, where = {}, None
    for name, V in (("Q", ChainComplex({0: 1})), ("Q^2", ChainComplex({0: 2}))):
        cert = koszul_check(free_cofree_twist(V, max_weight), 1, max_weight, jobs=jobs)
        out[name] = {"ok": cert.ok, "where": cert.where}
        if not cert.ok and where is None:
            where = name
    return Certificate("koszul free-cofree", where is None, out, where)


# -- 6 --------------------------------------------------------------------------------------

def exterior_ce_betti(dim: int, bracket) -> tuple:
    """Oracle: Betti numbers of the exterior Chevalley-Eilenberg chain complex.

    ``bracket(i, j)`` returns ``{k: c}`` for a Lie algebra in degree 0.  The
    boundary is the classical formula on wedge monomials.
    """
    basis = {k: list(itertools.combinations(range(dim), k)) for k in range(dim + 1)}
    index = {k: {m: i for i, m in enumerate(v)} for k, v in basis.items()}

    def wedge(seq):
        if len(set(seq)) < len(seq):
            return None, 0
        order = sorted(range(len(seq)), key=lambda p: seq[p])
        inv = sum(1 for a in range(len(order)) for b in range(a + 1, len(order)) if order[a] > order[b])
        return tuple(sorted(seq)), (-1) ** inv

    mats = {}
    for k in range(2, dim + 1):
        ents: dict = {}
        for c, m in enumerate(basis[k]):
            for i, j in itertools.combinations(range(k), 2):
                rest = [m[p] for p in range(k) if p not in (i, j)]
                for r, v in bracket(m[i], m[j]).items():
                    w, s = wedge([r] + rest)
                    if w is not None:
                        key = (index[k - 1][w], c)
                        ents[key] = ents.get(key, 0) + (-1) ** (i + j) * s * v
        mats[k] = RationalMatrix(len(basis[k - 1]), len(basis[k]), ents)
    ranks = {k: rank(m) for k, m in mats.items()}
    return tuple(len(basis[k]) - ranks.get(k, 0) - ranks.get(k + 1, 0) for k in range(dim + 1))


def ce_homology() -> Certificate:
    rows, where = {}, None
    cases = [("sl2", sl2()), ("heisenberg3", heisenberg3())] + [(f"abelian{n}", abelian_lie(n)) for n in range(1, 6)]
    expected = {"sl2": (1, 0, 0, 1), "heisenberg3": (1, 2, 2, 1)}
    for name, g in cases:
        n = g.dim(0)
        got = ce_betti(g, n)
        oracle = exterior_ce_betti(n, g.bracket)
        want = expected.get(name, tuple(_binom(n, k) for k in range(n + 1)))
        ok = got == oracle == want
        rows[name] = {"betti": list(got), "oracle": list(oracle), "ok": ok}
        if not ok and where is None:
            where = name
    return Certificate("ce homology", where is None, rows, where)


def _binom(n, k):
    return comb(n, k)


# -- 7, 8, 9 ----------------------------------------------------------------------------------

def bar_of_free(max_weight: int = 4) -> Certificate:
    rows, where = {}, None
    alpha = _kappa(max_weight)
    for name, V in (("Q", ChainComplex({0: 1})), ("Q^2", ChainComplex({0: 2})), ("Q[1]", ChainComplex({1: 1})),
                    ("Q+Q[1]", ChainComplex({0: 1, 1: 1}))):
        cert = bar_of_free_check(V, alpha, max_weight)
        rows[name] = {"ok": cert.ok, "where": cert.where}
        if not cert.ok and where is None:
            where = name
    return Certificate("bar of free", where is None, rows, where)


def counit_graded(max_weight: int = 3) -> Certificate:
    rows, where = {}, None
    alpha = _kappa(max_weight)
    for name, A in (("abelian1", abelian_lie(1)), ("sl2", sl2())):
        cert = counit_graded_check(A, alpha, max_weight)
        rows[name] = {"ok": cert.ok, "where": cert.where}
        if not cert.ok and where is None:
            where = name
    return Certificate("counit graded", where is None, rows, where)


def suspension(max_weight: int = 3) -> Certificate:
    rows, where = {}, None
    spaces = (("Q", ChainComplex({0: 1})), ("Q^2", ChainComplex({0: 2})), ("Q[1]", ChainComplex({1: 1})),
              ("Q+Q[-1]", ChainComplex({0: 1, -1: 1})), ("D1", disk(1, 1)))
    for pname, P in (("Comm_nu", comm_nu_operad(max_weight)), ("Lie", lie_operad(max_weight))):
        for vname, V in spaces:
            ok = suspension_iso_check(P, V, max_weight)
            rows[f"{pname}/{vname}"] = ok
            if not ok and where is None:
                where = f"{pname}/{vname}"
    return Certificate("suspension iso", where is None, rows, where)


# -- 10 -------------------------------------------------------------------------------------

def cotangent_tangent() -> Certificate:
    rows, where = {}, None
    algebras = [
        ("S(Q^2)", free_comm_algebra([0, 0], 3)),
        ("S(x,y), dy=x", free_comm_algebra([0, 1], 3, d_gens={1: {(0,): 1}})),
        ("S(x,y), dy=x^2", free_comm_algebra([0, 1], 3, d_gens={1: {(0, 0): 1}})),
        ("CE(sl2)", ce_algebra(sl2())),
        ("CE(heisenberg3)", ce_algebra(heisenberg3())),
    ]
    for name, A in algebras:
        ok = cotangent_routes(A).agree
        rows[f"routes {name}"] = ok
        if not ok and where is None:
            where = name
    for g in [abelian_lie(n) for n in range(1, 5)] + [sl2(), heisenberg3()]:
        ok = dk_unit_check(g).ok
        rows[f"unit {g.name}"] = ok
        if not ok and where is None:
            where = g.name
    return Certificate("cotangent/tangent", where is None, rows, where)


# -- 11 -------------------------------------------------------------------------------------

def linear_algebra(samples: int = 120, seed: int = SEED) -> Certificate:
    rng = random.Random(seed)
    counts = {"rank-nullity": 0, "transpose-rank": 0, "euler": 0, "kunneth": 0}
    fails = []
    for i in range(samples):
        M = random_matrix(rng, rng.randint(0, 6), rng.randint(0, 6), density=rng.random())
        K = kernel_basis(M)
        if rank(M) + K.dim != M.cols or not (M @ K.as_matrix()).is_zero():
            fails.append(("rank-nullity", i))
        counts["rank-nullity"] += 1
        if rank(M) != rank(M.transpose()):
            fails.append(("transpose-rank", i))
        counts["transpose-rank"] += 1
    for i in range(samples // 4):
        X = random_complex(rng)
        H = X.homology()
        if sum((-1) ** n * k for n, k in X.dims.items()) != sum((-1) ** n * k for n, k in H.items()):
            fails.append(("euler", i))
        counts["euler"] += 1
        Y = random_complex(rng, 0, 1, 2)
        HXY = tensor(X, Y).homology()
        HY = Y.homology()
        want: dict = {}
        for a, x in H.items():
            for b, y in HY.items():
                want[a + b] = want.get(a + b, 0) + x * y
        if {k: v for k, v in HXY.items() if v} != {k: v for k, v in want.items() if v}:
            fails.append(("kunneth", i))
        counts["kunneth"] += 1
    total = sum(counts.values())
    return Certificate("linear algebra", not fails and total >= 100, {"checks": counts, "total": total},
                       fails[0] if fails else None)


CRITERIA = {
    1: ("structural certificates", structural),
    2: ("Maurer-Cartan", maurer_cartan),
    3: ("twisted differential squares to the MC residual", twisted_square),
    4: ("Koszulity of kappa", koszul_kappa),
    5: ("Koszulity of free/cofree", koszul_free_cofree),
    6: ("CE homology", ce_homology),
    7: ("bar of free", bar_of_free),
    8: ("counit graded shadow", counit_graded),
    9: ("suspension isomorphism", suspension),
    10: ("cotangent/tangent round trip", cotangent_tangent),
    11: ("linear algebra backend", linear_algebra),
}


def run(only=None, jobs=None) -> dict:
    """Run the criteria; returns ``{number: Certificate}``."""
    out = {}
    for k, (_, fn) in CRITERIA.items():
        if only and k not in only:
            continue
        try:
            out[k] = fn(jobs=jobs) if k in (4, 5) else fn()
        except OpforgeError as exc:
            out[k] = Certificate(CRITERIA[k][0], False, {"error": type(exc).__name__}, str(exc))
    return out


__all__ = ["CRITERIA", "run", "exterior_ce_betti", "d_squared_zero"]
