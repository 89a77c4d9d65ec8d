import pytest
from hypothesis import given, strategies as st

from conftest import rng_for
from opforge.barcobar import ce_algebra
from opforge.complexes import ChainComplex, disk
from opforge.corpus import graded_examples, random_lie_algebra
from opforge.errors import LeibnizFailure, NotQuasiFree
from opforge.exactla import RationalMatrix
from opforge.opcoop import abelian_lie, cartan_sl2, heisenberg3, sl2
from opforge.tangent import (AugCommAlgebra, augmentation_ideal, cotangent_fiber, cotangent_routes, derivation_correspondence,
                             derivations, dk_unit_check, free_comm_algebra, maps_to_square_zero, naturality_check,
                             square_zero, tangent_complex)

seeds = st.integers(0, 10 ** 6)


def test_augmentation_ideal_examples():
    I, _ = augmentation_ideal(free_comm_algebra([], 2))
    assert I.total_dim == 0
    L = free_comm_algebra([-1], 3)
    I, vecs = augmentation_ideal(L)
    assert I.dims == {-1: 1}
    assert L.mul_lin(vecs[0], vecs[0]) == {}
    I, _ = augmentation_ideal(free_comm_algebra([0], 3))
    assert I.dims == {0: 3}


def test_free_algebra_axioms():
    A = free_comm_algebra([0, 1, -1], 3, d_gens={1: {(0,): 1}})
    assert A.check(product=True)
    # dropping d on a product breaks the Leibniz rule
    B = free_comm_algebra([0, 1], 2, d_gens={1: {(0,): 1}})
    bad = [dict(c) for c in B.diff]
    bad[B.index[(0, 1)]] = {}
    with pytest.raises(LeibnizFailure):
        AugCommAlgebra(B.degrees, B._mono_mult, B.unit, B.augmentation, bad, B.labels, "bad")


@pytest.mark.parametrize("gens,d,want", [
    ([0, 0], None, {0: 2}),
    ([0, 1], {1: {(0,): 1}}, {0: 1, 1: 1}),
    ([0, 1], {1: {(0, 0): 1}}, {0: 1, 1: 1}),
    ([-1, 0, 1], {1: {(0, 0): 1}}, {-1: 1, 0: 1, 1: 1}),
])
def test_cotangent_routes_agree(gens, d, want):
    A = free_comm_algebra(gens, 3, d_gens=d)
    routes = cotangent_routes(A)
    assert routes.agree
    assert cotangent_fiber(A).dims == want


def test_cotangent_linear_part():
    L = cotangent_fiber(free_comm_algebra([0, 1], 3, d_gens={1: {(0,): 1}}))
    assert L.is_acyclic()
    Q = cotangent_fiber(free_comm_algebra([0, 1], 3, d_gens={1: {(0, 0): 1}}))
    assert Q.betti() == {0: 1, 1: 1}


@pytest.mark.parametrize("n", range(1, 4))
def test_cotangent_of_abelian_ce(n):
    L = cotangent_fiber(ce_algebra(abelian_lie(n)))
    assert L.total_dim == n and L.betti() == L.dims


def test_cotangent_of_sl2_ce_has_zero_linear_part():
    L = cotangent_fiber(ce_algebra(sl2()))
    assert L.dims == {-1: 3} and L.betti() == {-1: 3}


def test_tangent_complex_examples():
    assert tangent_complex(ce_algebra(abelian_lie(1))).dims == {0: 1}
    assert tangent_complex(ce_algebra(sl2())).dims == {0: 3}
    assert tangent_complex(free_comm_algebra([-1], 2)).dims == {0: 1}


def test_cotangent_needs_quasi_free():
    with pytest.raises(NotQuasiFree):
        cotangent_routes(square_zero(ChainComplex({0: 1})))


def test_square_zero_examples():
    assert square_zero(ChainComplex({})).n == 1
    E = square_zero(ChainComplex({0: 1}))
    assert E.n == 2 and E.mul(1, 1) == {} and E.check()
    # algebra maps from an exterior algebra into Q + M match the coefficient on the generator
    L = free_comm_algebra([-1], 2)
    M = ChainComplex({-1: 1})
    assert len(maps_to_square_zero(L, M)) == 1
    assert len(derivations(L, ChainComplex({0: 1}))) == 0


@pytest.mark.parametrize("A", [free_comm_algebra([0], 3), free_comm_algebra([-1], 2), free_comm_algebra([0, 0], 2),
                               free_comm_algebra([0, 1], 3, d_gens={1: {(0,): 1}}), ce_algebra(heisenberg3())],
                         ids=lambda A: A.name + str(A.gdeg))
@pytest.mark.parametrize("M", [ChainComplex({0: 1}), ChainComplex({-1: 1}), ChainComplex({0: 1, 1: 1}), disk(1, 0)],
                         ids=str)
def test_derivation_correspondence(A, M):
    cert = derivation_correspondence(A, M)
    assert cert.ok, cert.details


@pytest.mark.parametrize("g", [abelian_lie(n) for n in range(1, 5)] + [sl2(), heisenberg3()] + graded_examples(),
                         ids=lambda g: g.name)
def test_dk_unit(g):
    cert = dk_unit_check(g)
    assert cert.ok, cert.details


@given(seeds)
def test_dk_unit_random(seed):
    assert dk_unit_check(random_lie_algebra(rng_for(seed)))


def test_naturality_cartan_into_sl2():
    f = RationalMatrix(3, 1, [(2, 0, 1)])
    assert naturality_check(f, cartan_sl2(), sl2())
    not_lie = RationalMatrix(3, 2, [(0, 0, 1), (1, 1, 1)])
    cert = naturality_check(not_lie, abelian_lie(2), sl2())
    assert not cert.ok and cert.details["lie_map"] is False
