import itertools
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from opforge import trees as T
from opforge.complexes import ChainComplex
from opforge.errors import ParseError
from opforge.opcoop import ass_operad, comm_nu_operad, lie_operad, shifted_cocomm, suspension_operad
from opforge.symmod import all_perms, composite, from_json, hadamard, schur, tensor_sym

perms = st.integers(1, 5).flatmap(lambda n: st.permutations(list(range(n))))


def bell(n):
    row = [1]
    for _ in range(n - 1):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[-1]


def inversions(p):
    return sum(1 for a, b in itertools.combinations(p, 2) if a > b)


@given(perms)
def test_perm_sign_is_inversion_parity(p):
    assert T.perm_sign(tuple(p)) == (-1) ** inversions(p)


@given(perms, perms)
def test_perm_sign_is_multiplicative(p, q):
    if len(p) != len(q):
        return
    assert T.perm_sign(T.compose_perm(tuple(p), tuple(q))) == T.perm_sign(tuple(p)) * T.perm_sign(tuple(q))
    assert T.compose_perm(tuple(p), T.inverse_perm(tuple(p))) == tuple(range(len(p)))


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.permutations(list(range(n))),
                                                     st.lists(st.integers(-2, 2), min_size=n, max_size=n))))
def test_koszul_sign_counts_odd_crossings(data):
    target, degs = data
    want = 1
    for a, b in itertools.combinations(range(len(degs)), 2):
        if target[a] > target[b] and degs[a] % 2 and degs[b] % 2:
            want = -want
    assert T.koszul_sign(degs, tuple(target)) == want


@pytest.mark.parametrize("n", range(1, 6))
def test_set_partitions_are_bell(n):
    assert len(list(T.set_partitions(list(range(n))))) == bell(n)


def test_composite_dims_are_bell_numbers():
    C = composite(comm_nu_operad(5), comm_nu_operad(5), 5)
    assert [C.dim(n) for n in range(1, 6)] == [bell(n) for n in range(1, 6)]


@pytest.mark.parametrize("q", [1, 2, 3])
def test_schur_of_comm_is_symmetric_powers(q):
    S = schur(comm_nu_operad(4), ChainComplex({0: q}), 4)
    assert [S[w].dim(0) for w in range(1, 5)] == [comb(q + w - 1, w) for w in range(1, 5)]
    odd = schur(comm_nu_operad(4), ChainComplex({1: q}), 4)
    assert [odd[w].dim(w) for w in range(1, 5)] == [comb(q, w) for w in range(1, 5)]


def test_tensor_and_hadamard_dims():
    A, L = ass_operad(4), lie_operad(4)
    H = hadamard(A, L)
    assert [H.dim(n) for n in range(1, 5)] == [factorial(n) * factorial(n - 1) for n in range(1, 5)]
    Tm = tensor_sym(comm_nu_operad(3), comm_nu_operad(3))
    assert Tm.dim(2) >= 1


@pytest.mark.parametrize("M", [ass_operad(4), lie_operad(4), suspension_operad(4), shifted_cocomm(4)],
                         ids=lambda M: M.name)
def test_actions_are_valid(M):
    assert M.check()


@pytest.mark.parametrize("n", range(1, 5))
def test_averaging_is_idempotent(n):
    A = ass_operad(4)
    E = A.averaging_idempotent(n)
    assert E @ E == E


def test_all_perms_count():
    assert len(all_perms(4)) == 24


def test_from_json():
    M = from_json({"arities": {"2": {"degrees": [0, 0], "generators": [[[0, 1, 1], [1, 0, 1]]]}}})
    assert M.dim(2) == 2
    with pytest.raises(ParseError):
        from_json({"arities": {"2": {}}})
