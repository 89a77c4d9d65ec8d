import pytest
from hypothesis import given, strategies as st

from conftest import rng_for
from opforge import debug
from opforge.complexes import ChainComplex, disk
from opforge.errors import NotTwisting, ShapeMismatch
from opforge.exactla import RationalMatrix
from opforge.opcoop import EndOperad, cocomm_nu_cooperad, lie_operad, shifted_cocomm
from opforge.twisting import (differential, free_cofree_twist, is_twisting, kappa, koszul_check, left_complex,
                              left_matrices, random_element, right_complex, star, two_sided_complex, zero_element)

W = ChainComplex({0: 1, 1: 1, 2: 1}, {2: RationalMatrix(1, 1, [(0, 0, 1)])})
PAIRS = [(shifted_cocomm(3), EndOperad(W, 3)), (cocomm_nu_cooperad(3), EndOperad(W, 3)),
         (shifted_cocomm(3), EndOperad(disk(1, 1), 3))]
seeds = st.integers(0, 10 ** 6)
degrees = st.sampled_from([-1, 0, 1])
pairs = st.sampled_from(range(len(PAIRS)))


def sgn(k):
    return -1 if k % 2 else 1


@given(seeds, pairs, degrees)
def test_convolution_differential_squares_to_zero(seed, p, a):
    C, P = PAIRS[p]
    f = random_element(C, P, a, 3, rng_for(seed), bound=2)
    assert differential(differential(f)).is_zero()


@given(seeds, pairs, degrees, degrees)
def test_differential_is_a_derivation_of_star(seed, p, a, b):
    C, P = PAIRS[p]
    rng = rng_for(seed)
    f, g = random_element(C, P, a, 3, rng, bound=2), random_element(C, P, b, 3, rng, bound=2)
    lhs = differential(star(f, g))
    rhs = star(differential(f), g) + star(f, differential(g)).scale(sgn(a))
    assert lhs == rhs


@given(seeds, pairs, degrees, degrees, degrees)
def test_star_is_graded_pre_lie(seed, p, a, b, c):
    C, P = PAIRS[p]
    rng = rng_for(seed)
    f, g, h = (random_element(C, P, k, 3, rng, bound=2) for k in (a, b, c))
    assoc_gh = star(star(f, g), h) - star(f, star(g, h))
    assoc_hg = star(star(f, h), g) - star(f, star(h, g))
    assert assoc_gh == assoc_hg.scale(sgn(b * c))


@given(seeds, pairs)
def test_twisted_differential_squares_to_residual(seed, p):
    C, P = PAIRS[p]
    alpha = random_element(C, P, -1, 3, rng_for(seed), min_arity=1, bound=2)
    for n in range(1, 4):
        D, L = left_matrices(alpha, n)
        assert D @ D == L


def test_zero_is_twisting():
    C, P = PAIRS[0]
    assert is_twisting(zero_element(C, P))


def test_star_rejects_mismatched_pairs():
    f = zero_element(*PAIRS[0])
    g = zero_element(*PAIRS[2])
    with pytest.raises(ShapeMismatch):
        star(f, g)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_kappa_is_twisting(n):
    cert = is_twisting(kappa(n, verify=False), n)
    assert cert.ok, cert.details


def test_mutant_kappa_fails_at_arity_three():
    with debug.injected("kappa-sign"):
        cert = is_twisting(kappa(4, verify=False), 4)
        with pytest.raises(NotTwisting):
            kappa(4)
    assert not cert.ok and cert.where == 3
    assert cert.details[2]["residual_nonzeros"] == 0


def test_kappa_targets_lie():
    alpha = kappa(3)
    assert alpha.target.name == lie_operad(3).name
    assert alpha.degree == -1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_twisted_composites_of_kappa(n):
    alpha = kappa(4)
    for build in (left_complex, right_complex, two_sided_complex):
        X = build(alpha, n)
        assert all((X.diff(m - 1) @ X.diff(m)).is_zero() for m in X.dims)
    if n > 1:
        assert left_complex(alpha, n).is_acyclic()
        assert right_complex(alpha, n).is_acyclic()


def test_koszul_check_kappa_and_parallel_agreement():
    alpha = kappa(4)
    serial = koszul_check(alpha, 4, jobs=1)
    parallel = koszul_check(alpha, 4, jobs=2)
    assert serial.ok and serial.details["verdicts_agree"]
    assert serial.to_json() == parallel.to_json()


@pytest.mark.parametrize("V", [ChainComplex({0: 1}), ChainComplex({0: 2}), ChainComplex({1: 1}),
                               ChainComplex({-1: 1, 0: 1}), disk(1, 1)], ids=str)
def test_free_cofree_is_koszul(V):
    beta = free_cofree_twist(V, 4)
    assert is_twisting(beta)
    cert = koszul_check(beta, 1, max_weight=4)
    assert cert.ok, cert.where


def test_full_cofree_coalgebra_is_not_maurer_cartan():
    beta = free_cofree_twist(ChainComplex({0: 1}), 3, full=True, verify=False)
    assert not is_twisting(beta)
