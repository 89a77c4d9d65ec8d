"""Small random inputs for certificates and property tests.

Everything takes an explicit ``random.Random`` so runs are reproducible.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .complexes import ChainComplex, ChainMap, direct_sum, disk, sphere
from .exactla import RationalMatrix, inverse
from .opcoop import LieAlgebra, abelian_lie, heisenberg3, lie_algebra_from_constants, sl2


def random_matrix(rng: random.Random, rows: int, cols: int, density: float = 0.5, bound: int = 3) -> RationalMatrix:
    ents = []
    for r in range(rows):
        for c in range(cols):
            if rng.random() < density:
                v = rng.randint(-bound, bound)
                if v:
                    ents.append((r, c, Fraction(v)))
    return RationalMatrix(rows, cols, ents)


def random_invertible(rng: random.Random, n: int, bound: int = 2) -> RationalMatrix:
    """Product of random unit lower and upper triangular integer matrices."""
    lo = [(i, i, Fraction(1)) for i in range(n)]
    up = [(i, i, Fraction(1)) for i in range(n)]
    for i in range(n):
        for j in range(i):
            lo.append((i, j, Fraction(rng.randint(-bound, bound))))
            up.append((j, i, Fraction(rng.randint(-bound, bound))))
    return RationalMatrix(n, n, lo) @ RationalMatrix(n, n, up)


def random_complex(rng: random.Random, lo: int = -1, hi: int = 2, max_dim: int = 3) -> ChainComplex:
    """Disks and spheres in degrees ``lo..hi`` mixed by random changes of basis."""
    parts = []
    for n in range(lo, hi + 1):
        k = rng.randint(0, max_dim)
        if k:
            parts.append(sphere(k, n))
        if n > lo:
            k = rng.randint(0, max_dim - 1)
            if k:
                parts.append(disk(k, n))
    X = direct_sum(*parts) if parts else ChainComplex({})
    g = {n: random_invertible(rng, k) for n, k in X.dims.items()}
    d = {}
    for n, m in X.d.items():
        d[n] = g[n - 1] @ m @ inverse(g[n])
    return ChainComplex(X.dims, d)


def random_degree_map(rng: random.Random, X: ChainComplex, Y: ChainComplex, degree: int) -> dict:
    return {n: random_matrix(rng, Y.dim(n + degree), X.dim(n)) for n in X.dims if Y.dim(n + degree)}


def random_chain_map(rng: random.Random, X: ChainComplex) -> ChainMap:
    """``c id + d h + h d`` for a random degree-one h: always a chain map ``X -> X``."""
    h = random_degree_map(rng, X, X, 1)
    c = Fraction(rng.randint(-2, 2))
    comps = {}
    for n, k in X.dims.items():
        m = RationalMatrix.identity(k).scale(c)
        if n in h:
            m = m + X.diff(n + 1) @ h[n]
        if n - 1 in h:
            m = m + h[n - 1] @ X.diff(n)
        comps[n] = m
    return ChainMap(X, X, comps)


def graded_examples() -> list:
    """Graded Lie algebras with odd elements and differentials."""
    return [
        lie_algebra_from_constants([-2, -1], bracket={(1, 1): {0: 1}}, name="odd"),
        lie_algebra_from_constants([-1, -1, -2], bracket={(0, 1): {2: 1}}, name="odd-heis"),
        lie_algebra_from_constants([0, 1], d={1: {0: 1}}, name="disk"),
        lie_algebra_from_constants([0, 1, 1], bracket={(0, 1): {2: 1}}, name="mixed"),
    ]


def base_lie_algebras() -> list:
    return [sl2(), heisenberg3(), abelian_lie(2)] + graded_examples()


def change_basis(g: LieAlgebra, rng: random.Random, name: str | None = None) -> LieAlgebra:
    """An isomorphic copy of g in a random degree-preserving basis."""
    n = g.dim(0)
    degs = [g.degree(0, i) for i in range(n)]
    G = RationalMatrix.zeros(n, n)
    for d in sorted(set(degs)):
        idx = [i for i in range(n) if degs[i] == d]
        B = random_invertible(rng, len(idx))
        G = G + RationalMatrix(n, n, [(idx[r], idx[c], v) for r, c, v in B.triples()])
    Gi = inverse(G)
    cols = [G.column(i) for i in range(n)]
    br = {}
    for i in range(n):
        for j in range(n):
            v = Gi.apply(g.bracket_lin(cols[i], cols[j]))
            if v:
                br[(i, j)] = v
    d = {}
    for i in range(n):
        v = Gi.apply(g.d_lin(cols[i]))
        if v:
            d[i] = v
    return lie_algebra_from_constants(degs, d=d, bracket=br, name=name or f"{g.name}'")


def random_lie_algebra(rng: random.Random) -> LieAlgebra:
    base = base_lie_algebras()
    return change_basis(base[rng.randrange(len(base))], rng)
