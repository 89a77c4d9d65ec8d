import json

import pytest
from hypothesis import given, strategies as st

from conftest import rng_for
from opforge import debug
from opforge.complexes import (ChainComplex, ChainMap, cone, cone_sequence, direct_sum, disk, double_dual_iso, dual,
                               identity_map, is_quasi_iso, shift, sphere, tensor, truncate_ge, zero_map)
from opforge.corpus import random_chain_map, random_complex
from opforge.errors import NotAComplex, ParseError
from opforge.exactla import RationalMatrix

seeds = st.integers(0, 10 ** 6)


def d_squared(X):
    return all((X.diff(n - 1) @ X.diff(n)).is_zero() for n in X.dims)


def euler(H):
    return sum((-1) ** (n % 2) * k for n, k in H.items())


@given(seeds)
def test_euler_characteristic(seed):
    X = random_complex(rng_for(seed))
    assert X.euler() == euler(X.homology())


@given(seeds, st.integers(-3, 3))
def test_shift_moves_homology(seed, k):
    X = random_complex(rng_for(seed))
    Y = shift(X, k)
    assert d_squared(Y)
    assert {n + k: h for n, h in Y.homology().items()} == X.homology()
    assert shift(shift(X, k), -k) == X


@given(seeds)
def test_dual_is_involutive_up_to_iso(seed):
    X = random_complex(rng_for(seed))
    D = dual(X)
    assert d_squared(D)
    assert {-n: h for n, h in D.homology().items() if h} == X.betti()
    f = double_dual_iso(X)
    assert f.commutes() and f.is_isomorphism()


@given(seeds)
def test_cone_of_identity_is_acyclic(seed):
    X = random_complex(rng_for(seed))
    C = cone(identity_map(X))
    assert d_squared(C)
    assert C.is_acyclic()


@given(seeds)
def test_cone_detects_quasi_isomorphisms(seed):
    rng = rng_for(seed)
    X = random_complex(rng)
    f = random_chain_map(rng, X)
    C = cone(f)
    assert d_squared(C)
    assert C.is_acyclic() == is_quasi_iso(f)
    inc, proj = cone_sequence(f)
    assert inc.commutes() and proj.commutes()


@given(seeds)
def test_kunneth(seed):
    rng = rng_for(seed)
    X, Y = random_complex(rng, 0, 1, 2), random_complex(rng, -1, 1, 2)
    XY = tensor(X, Y)
    assert d_squared(XY)
    want = {}
    for a, x in X.homology().items():
        for b, y in Y.homology().items():
            want[a + b] = want.get(a + b, 0) + x * y
    got = XY.homology()
    assert all(got.get(n, 0) == want.get(n, 0) for n in set(got) | set(want))


@given(seeds, st.integers(-1, 2))
def test_truncation_keeps_upper_homology(seed, n):
    X = random_complex(rng_for(seed))
    T = truncate_ge(X, n)
    HX, HT = X.homology(), T.homology()
    for m in set(HX) | set(HT):
        assert HT.get(m, 0) == (HX.get(m, 0) if m >= n else 0)


@given(seeds)
def test_json_roundtrip(seed):
    X = random_complex(rng_for(seed))
    Y = ChainComplex.from_json(json.dumps(X.to_json()))
    assert Y == X


def test_spheres_and_disks():
    assert sphere(2, 3).homology() == {3: 2}
    assert disk(1, 1).is_acyclic()
    assert direct_sum(sphere(1, 0), disk(2, 2)).betti() == {0: 1}


def test_not_a_complex():
    d = {1: RationalMatrix(1, 1, [(0, 0, 1)]), 2: RationalMatrix(1, 1, [(0, 0, 1)])}
    with pytest.raises(NotAComplex):
        ChainComplex({0: 1, 1: 1, 2: 1}, d)


def test_non_chain_map_rejected():
    X = disk(1, 1)
    with pytest.raises(NotAComplex):
        ChainMap(X, X, {0: RationalMatrix(1, 1, [(0, 0, 1)])})
    assert zero_map(X, X).commutes()


@pytest.mark.parametrize("text", ["{", '{"diff": {}}', '{"dims": {"a": 1}}', '{"dims": {"0": -1}}',
                                  '{"dims": {"0": 1, "1": 1}, "diff": {"1": [[0, 5, "1"]]}}',
                                  '{"dims": {"0": 1, "1": 1}, "diff": {"1": [[0, 0, "x"]]}}'])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        ChainComplex.from_json(text)


def test_injected_cone_sign_breaks_d_squared():
    X = ChainComplex({0: 1, 1: 1}, {1: RationalMatrix(1, 1, [(0, 0, 1)])})
    f = identity_map(X)
    with debug.injected("cone-sign"):
        assert not d_squared(cone(f))
    assert d_squared(cone(f))


def test_injected_tensor_sign_breaks_d_squared():
    X = disk(1, 1)
    with debug.injected("tensor-sign"):
        assert not d_squared(tensor(X, X))
    assert d_squared(tensor(X, X))


def test_unknown_injection():
    with pytest.raises(ValueError):
        with debug.injected("nope"):
            pass
