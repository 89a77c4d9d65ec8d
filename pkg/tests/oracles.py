"""Independent reference computations: dense Fraction elimination and exterior CE chains.

Nothing here imports the package's linear algebra, so these serve as oracles.
"""
import itertools
from fractions import Fraction


def dense_rank(rows):
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def exterior_ce_betti(n, bracket):
    """Betti numbers of the chains on Lambda^k g for an ungraded Lie algebra.

    ``bracket[(i, j)] = {k: c}`` for i < j.  Uses
    d(x_1 ... x_k) = sum_{a<b} (-1)^(a+b) [x_a, x_b] x_1 ..^a ..^b .. x_k.
    """
    def br(i, j):
        if i < j:
            return bracket.get((i, j), {})
        if i > j:
            return {k: -c for k, c in bracket.get((j, i), {}).items()}
        return {}

    def wedge_sort(word):
        if len(set(word)) < len(word):
            return 0, None
        perm = sorted(range(len(word)), key=lambda p: word[p])
        inv = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        return (-1) ** inv, tuple(sorted(word))

    basis = {k: list(itertools.combinations(range(n), k)) for k in range(n + 1)}
    ranks = {}
    for k in range(2, n + 1):
        idx = {b: i for i, b in enumerate(basis[k - 1])}
        rows = [[0] * len(basis[k]) for _ in basis[k - 1]]
        for col, word in enumerate(basis[k]):
            for a, b in itertools.combinations(range(k), 2):
                rest = [word[p] for p in range(k) if p not in (a, b)]
                for z, c in br(word[a], word[b]).items():
                    s, key = wedge_sort([z] + rest)
                    if s:
                        rows[idx[key]][col] += (-1) ** (a + b + 1) * s * c
        ranks[k] = dense_rank(rows)
    return tuple(len(basis[k]) - ranks.get(k, 0) - ranks.get(k + 1, 0) for k in range(n + 1))


def witt_dim(q, w):
    """Dimension of the weight-w part of the free Lie algebra on q generators (necklace formula)."""
    def mobius(m):
        out, p, x = 1, 2, m
        while p * p <= x:
            if x % p == 0:
                x //= p
                if x % p == 0:
                    return 0
                out = -out
            p += 1
        return -out if x > 1 else out

    return sum(mobius(d) * q ** (w // d) for d in range(1, w + 1) if w % d == 0) // w
