import json
from math import comb

import pytest
from hypothesis import given, strategies as st

from conftest import rng_for
from opforge.barcobar import (_kappa, bar, bar_of_free_check, ce_algebra, ce_betti, ce_chains, cobar,
                              cobar_bar_check, counit_graded_check)
from opforge.complexes import ChainComplex, disk
from opforge.corpus import change_basis, graded_examples, random_lie_algebra
from opforge.errors import ArityViolation, NotAlgebraOverTarget
from opforge.opcoop import (FreeAlgebra, abelian_lie, comm_nu_operad, free_lie_algebra, heisenberg3,
                            lie_algebra_from_constants, sl2)
from oracles import exterior_ce_betti

seeds = st.integers(0, 10 ** 6)
UNGRADED = {
    "sl2": (sl2(), {(0, 1): {2: 1}, (0, 2): {0: -2}, (1, 2): {1: 2}}),
    "heisenberg3": (heisenberg3(), {(0, 1): {2: 1}}),
    "aff1": (lie_algebra_from_constants([0, 0], bracket={(0, 1): {1: 1}}, name="aff1"), {(0, 1): {1: 1}}),
    "sl2+Q": (lie_algebra_from_constants([0] * 4, bracket={(0, 1): {2: 1}, (2, 0): {0: 2}, (2, 1): {1: -2}}),
              {(0, 1): {2: 1}, (0, 2): {0: -2}, (1, 2): {1: 2}}),
}


def d_squared(X):
    return all((X.diff(n - 1) @ X.diff(n)).is_zero() for n in X.dims)


@given(seeds)
def test_bar_squares_to_zero(seed):
    g = random_lie_algebra(rng_for(seed))
    B = bar(g, _kappa(3), 3)
    assert B.check()
    assert d_squared(B.total())


@given(seeds)
def test_cobar_squares_to_zero(seed):
    g = random_lie_algebra(rng_for(seed))
    alpha = _kappa(3)
    Om = cobar(bar(g, alpha, 3).coalgebra(), alpha, 3)
    assert Om.check()
    assert d_squared(Om.total())


@pytest.mark.parametrize("name", sorted(UNGRADED))
def test_ce_betti_matches_exterior_oracle(name):
    g, br = UNGRADED[name]
    want = exterior_ce_betti(g.dim(0), br)
    got = ce_betti(g)
    assert got + (0,) * (len(want) - len(got)) == want


@pytest.mark.parametrize("n", range(1, 6))
def test_ce_betti_abelian(n):
    assert ce_betti(abelian_lie(n)) == tuple(comb(n, k) for k in range(n + 1))


@given(seeds)
def test_ce_betti_is_basis_independent(seed):
    g, _ = UNGRADED[sorted(UNGRADED)[seed % len(UNGRADED)]]
    assert ce_betti(change_basis(g, rng_for(seed))) == ce_betti(g)


@given(seeds)
def test_ce_algebra_is_a_dg_algebra(seed):
    g = random_lie_algebra(rng_for(seed))
    A = ce_algebra(g, 3)
    assert d_squared(A.complex())
    assert A.derivation_agrees()


@pytest.mark.parametrize("g", [sl2(), heisenberg3(), abelian_lie(3)], ids=lambda g: g.name)
def test_ce_cochains_dual_to_chains(g):
    A = ce_algebra(g)
    assert A.n == 2 ** g.dim(0)
    Hc = ce_chains(g).homology()
    Hco = A.complex().homology()
    assert all(Hco.get(-k, 0) == Hc.get(k, 0) for k in range(g.dim(0) + 1))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_bar_of_abelian_is_exterior_coalgebra(n):
    B = bar(abelian_lie(n), _kappa(n + 1), n + 1)
    got = {w: sum(d.values()) for w, d in B.weight_dims().items()}
    assert got == {w: comb(n, w) for w in range(1, n + 1)}
    assert B.homology() == B.total().dims


@pytest.mark.parametrize("g", graded_examples(), ids=lambda g: g.name)
def test_graded_bar_is_graded_symmetric_power(g):
    # suspension makes even elements odd: weight w has dim of Sym^w of the suspension
    B = bar(g, _kappa(3), 3)
    odd = sum(1 for i in range(g.dim(0)) if g.degree(0, i) % 2 == 0)
    even = g.dim(0) - odd
    for w in range(1, 4):
        want = sum(comb(odd, a) * comb(even + w - a - 1, w - a) for a in range(0, w + 1))
        assert sum(B.weight_dims().get(w, {}).values()) == want


def test_bar_respects_quasi_isomorphism():
    # the disk Lie algebra is quasi-isomorphic to zero, so every weight block is acyclic
    g = [h for h in graded_examples() if h.name == "disk"][0]
    B = bar(g, _kappa(4), 4)
    assert all(not any(H.values()) for H in B.gr_homology().values())


@pytest.mark.parametrize("V", [ChainComplex({0: 1}), ChainComplex({0: 2}), ChainComplex({1: 1}),
                               ChainComplex({0: 1, 1: 1}), disk(1, 0)], ids=str)
def test_bar_of_free(V):
    cert = bar_of_free_check(V, _kappa(4), 4)
    assert cert.ok, cert.details


@pytest.mark.parametrize("g", [abelian_lie(1), abelian_lie(2), sl2(), heisenberg3()], ids=lambda g: g.name)
def test_counit_graded(g):
    assert counit_graded_check(g, _kappa(3), 3)


def test_cobar_of_bar_recovers_weighted_algebras():
    h3 = lie_algebra_from_constants([0, 0, 0], bracket={(0, 1): {2: 1}}, weights=[1, 1, 2], name="h3w")
    assert cobar_bar_check(h3, 3)
    qa = lie_algebra_from_constants([-1], name="Qa")
    assert cobar_bar_check(qa, 3)
    free = free_lie_algebra(ChainComplex({0: 2}), 3)
    assert cobar_bar_check(free, 3)


def test_bar_errors():
    with pytest.raises(ArityViolation):
        bar(sl2(), _kappa(2), 5)
    A = FreeAlgebra(comm_nu_operad(3), ChainComplex({0: 1}), 3)
    with pytest.raises(NotAlgebraOverTarget):
        bar(A, _kappa(3), 3)


def test_bar_report_is_deterministic():
    a = json.dumps(bar(sl2(), _kappa(3), 3).to_json(), sort_keys=True, default=str)
    b = json.dumps(bar(sl2(), _kappa(3), 3).to_json(), sort_keys=True, default=str)
    assert a == b
