import json
from math import factorial

import pytest
from hypothesis import given, strategies as st

from conftest import rng_for
from opforge.complexes import ChainComplex, disk
from opforge.corpus import base_lie_algebras, change_basis, random_lie_algebra
from opforge.errors import AntisymmetryFailure, JacobiFailure, LeibnizFailure, ParseError, ShapeMismatch
from opforge.opcoop import (EndOperad, ass_operad, check_cooperad, check_operad, cocomm_nu_cooperad, comm_nu_operad,
                            comm_operad, compatible, free_lie_algebra, heisenberg3, lie_algebra_from_constants,
                            lie_algebra_from_json, lie_operad, shifted_cocomm, sl2, suspension_cooperad,
                            suspension_iso_check, suspension_operad, tensor_algebra, tensor_coalgebra)
from oracles import witt_dim

seeds = st.integers(0, 10 ** 6)


@pytest.mark.parametrize("P", [ass_operad(4), comm_operad(4), comm_nu_operad(4), lie_operad(4), suspension_operad(4),
                               EndOperad(disk(1, 1), 3), tensor_algebra(ChainComplex({0: 1, 1: 1}), 3)],
                         ids=lambda P: P.name)
def test_operad_axioms(P):
    check_operad(P, min(P.max_arity, 4))


@pytest.mark.parametrize("C", [cocomm_nu_cooperad(4), shifted_cocomm(4), suspension_cooperad(4),
                               tensor_coalgebra(ChainComplex({0: 2}), 3)], ids=lambda C: C.name)
def test_cooperad_axioms(C):
    assert check_cooperad(C)


def test_operad_dimensions():
    assert [ass_operad(5).dim(n) for n in range(1, 6)] == [factorial(n) for n in range(1, 6)]
    assert [lie_operad(5).dim(n) for n in range(1, 6)] == [factorial(n - 1) for n in range(1, 6)]
    assert [suspension_operad(4).degree(n, 0) for n in range(1, 5)] == [1 - n for n in range(1, 5)]
    assert [tensor_algebra(ChainComplex({0: 2}), 3).dim(1)] == [1 + 2 + 4 + 8]


@pytest.mark.parametrize("q,degree", [(1, 0), (2, 0), (1, 1), (2, 1)])
def test_free_lie_dims(q, degree):
    g = free_lie_algebra(ChainComplex({degree: q}), 4)
    by_weight = {}
    for i in range(g.dim(0)):
        by_weight[g.weight(0, i)] = by_weight.get(g.weight(0, i), 0) + 1
    if degree == 0:
        assert [by_weight.get(w, 0) for w in range(1, 5)] == [witt_dim(q, w) for w in range(1, 5)]
    assert g.validate()


@pytest.mark.parametrize("P", [comm_nu_operad(4), lie_operad(4)], ids=lambda P: P.name)
@pytest.mark.parametrize("V", [ChainComplex({0: 1}), ChainComplex({0: 2}), ChainComplex({1: 1}),
                               ChainComplex({0: 1, 1: 1}), disk(1, 1)], ids=str)
def test_suspension_iso(P, V):
    assert suspension_iso_check(P, V, 3)


@given(seeds)
def test_change_of_basis_keeps_structure(seed):
    g = random_lie_algebra(rng_for(seed))
    assert g.validate()
    h = change_basis(g, rng_for(seed + 1))
    assert h.complex.dims == g.complex.dims


@pytest.mark.parametrize("g", base_lie_algebras(), ids=lambda g: g.name)
def test_lie_action_compatible(g):
    g.check_action(3)


@pytest.mark.parametrize("g", base_lie_algebras(), ids=lambda g: g.name)
def test_lie_json_roundtrip(g):
    h = lie_algebra_from_json(json.loads(json.dumps(g.to_json())))
    assert h.complex == g.complex
    assert all(h.bracket(i, j) == g.bracket(i, j) for i in range(g.dim(0)) for j in range(g.dim(0)))


def test_invalid_lie_algebras_rejected():
    with pytest.raises(JacobiFailure):
        lie_algebra_from_constants([0, 0, 0], bracket={(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {0: 1}})
    with pytest.raises(AntisymmetryFailure):
        lie_algebra_from_constants([0], bracket={(0, 0): {0: 1}})
    with pytest.raises(ShapeMismatch):
        lie_algebra_from_constants([0, 0], bracket={(0, 1): {0: 1}, (1, 0): {0: -1}}, d={0: {1: 1}})
    with pytest.raises((LeibnizFailure, ShapeMismatch)):
        lie_algebra_from_constants([0, 1, 1], bracket={(0, 1): {2: 1}}, d={1: {0: 1}})


@pytest.mark.parametrize("obj", [{}, {"degrees": [0], "bracket": [[0, 3, [[0, "1"]]]]},
                                 {"degrees": [0, 0], "weights": [1]}, {"degrees": [0], "diff": {"0": [[7, "1"]]}},
                                 {"degrees": ["x"]}])
def test_lie_json_errors(obj):
    with pytest.raises(ParseError):
        lie_algebra_from_json(obj)


def test_compatibility():
    assert compatible(sl2().operad, lie_operad(4))
    assert not compatible(sl2().operad, ass_operad(4))
    assert heisenberg3().to_json()["name"] == "heisenberg3"
