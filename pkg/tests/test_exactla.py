from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from opforge.errors import ShapeMismatch
from opforge.exactla import (RationalMatrix, fraction_str, homology_dims, image_basis, inverse, kernel_basis,
                             nullity, rank, solve, to_fraction)
from oracles import dense_rank

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, max_dim=6):
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(0, max_dim))
    dense = draw(st.lists(st.lists(st.one_of(st.just(Fraction(0)), fractions), min_size=c, max_size=c),
                          min_size=r, max_size=r))
    return RationalMatrix.from_dense(dense, cols=c)


@given(matrices())
def test_rank_matches_dense_oracle(M):
    assert rank(M) == dense_rank(M.to_dense())


@given(matrices())
def test_rank_nullity(M):
    K = kernel_basis(M)
    assert rank(M) + K.dim == M.cols == rank(M) + nullity(M)
    assert (M @ K.as_matrix()).is_zero()


@given(matrices())
def test_transpose_rank(M):
    assert rank(M) == rank(M.transpose())
    assert M.transpose().transpose() == M


@given(matrices())
def test_image_basis_spans_columns(M):
    assert image_basis(M).dim == rank(M)


@given(matrices(4), matrices(4))
def test_product_rank_bound(A, B):
    if A.cols != B.rows:
        return
    assert rank(A @ B) <= min(rank(A), rank(B))


@given(st.integers(1, 5), st.data())
def test_inverse_and_solve(n, data):
    dense = data.draw(st.lists(st.lists(fractions, min_size=n, max_size=n), min_size=n, max_size=n))
    A = RationalMatrix.from_dense(dense)
    if rank(A) < n:
        with pytest.raises(ValueError):
            inverse(A)
        return
    I = RationalMatrix.identity(n)
    assert A @ inverse(A) == I
    b = RationalMatrix.from_dense([[Fraction(i + 1)] for i in range(n)])
    x = solve(A, b)
    assert A @ x == b


@given(fractions)
def test_fraction_roundtrip(x):
    assert to_fraction(fraction_str(x)) == x


def test_fraction_parsing():
    assert to_fraction("3/6") == Fraction(1, 2)
    assert to_fraction(-2) == -2
    with pytest.raises((ValueError, ZeroDivisionError)):
        to_fraction("1/0")


def test_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        RationalMatrix.zeros(2, 3) @ RationalMatrix.zeros(2, 3)
    with pytest.raises(ShapeMismatch):
        RationalMatrix(1, 1, [(2, 0, 1)])


def test_zero_entries_are_dropped():
    M = RationalMatrix(2, 2, [(0, 0, 0), (1, 1, 3)])
    assert M.nnz == 1


def test_homology_dims_small():
    d = {1: RationalMatrix(1, 1, [(0, 0, 1)])}
    assert homology_dims({0: 1, 1: 1}, d) == {0: 0, 1: 0}
    assert homology_dims({0: 2}, {}) == {0: 2}
