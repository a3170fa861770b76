from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from superkantor.exactlin import (Matrix, Subspace, format_scalar, intersect_subspaces, is_subspace,
                                  kernel_basis, parse_scalar, rank, subspace_contains,
                                  subspaces_equal)


def test_kernel_of_identity_is_zero():
    k = kernel_basis(Matrix.identity(3))
    assert k.dim == 0 and k.basis == ()


def test_kernel_of_zero_matrix_is_everything():
    k = kernel_basis(Matrix.zeros(2, 2))
    assert k.dim == 2
    assert set(k.basis) == {(1, 0), (0, 1)}


def test_kernel_rank_one_matrix_canonical_vector():
    # hand elimination: x + 2y = 0, normalized so the last nonzero entry is 1
    k = kernel_basis(Matrix.from_rows([[1, 2], [2, 4]]))
    assert k.basis == ((F(-2), F(1)),)


def test_rank_examples():
    assert rank(Matrix.identity(4)) == 4
    assert rank(Matrix.zeros(3, 5)) == 0
    assert rank(Matrix.from_rows([[1, 2], [2, 4]])) == 1


def test_contains_examples():
    s = Subspace.span([(1, 0)], 2)
    assert subspace_contains(s, (0, 0))
    assert not subspace_contains(s, (0, 1))
    assert subspace_contains(Subspace.span([(-2, 1)], 2), (4, -2))
    with pytest.raises(ValueError):
        subspace_contains(s, (1, 0, 0))


def test_equality_examples():
    s = Subspace.span([(1, 0)], 2)
    assert subspaces_equal(s, s)
    assert subspaces_equal(s, Subspace.span([(2, 0)], 2))
    assert not subspaces_equal(s, Subspace.span([(1, 1)], 2))


def test_scalar_format_roundtrip_and_rejects_unreduced():
    for text in ("0", "-3", "5/7", "-1/2"):
        assert format_scalar(parse_scalar(text)) == text
    for bad in ("2/4", "1/1", "1.5", "", "3/-4", "0/5", "1/0"):
        with pytest.raises(ValueError):
            parse_scalar(bad)


def test_intersection_small():
    a = Subspace.span([(1, 0, 0), (0, 1, 0)], 3)
    b = Subspace.span([(0, 1, 0), (0, 0, 1)], 3)
    assert subspaces_equal(intersect_subspaces(a, b), Subspace.span([(0, 1, 0)], 3))


small = st.integers(-3, 3)


@st.composite
def matrices(draw, max_rows=4, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix.from_rows(rows, c)


@given(matrices())
def test_kernel_vectors_are_annihilated(m):
    for v in kernel_basis(m).basis:
        assert all(x == 0 for x in m.apply(v))


@given(matrices())
def test_rank_nullity(m):
    assert rank(m) + kernel_basis(m).dim == m.cols


@given(matrices())
def test_rank_of_transpose(m):
    t = Matrix.from_rows([[m[r, c] for r in range(m.rows)] for c in range(m.cols)], m.rows)
    assert rank(t) == rank(m)


@given(st.lists(st.lists(small, min_size=4, max_size=4), max_size=5))
def test_canonical_form_idempotent(vectors):
    s = Subspace.span(vectors, 4)
    assert Subspace.span(s.basis, 4) == s
    assert subspaces_equal(s, s)


@given(st.lists(st.lists(small, min_size=3, max_size=3), max_size=4),
       st.lists(st.lists(small, min_size=3, max_size=3), max_size=4),
       st.lists(small, min_size=3, max_size=3))
def test_intersection_is_greatest_common_subspace(u, w, coeffs):
    a, b = Subspace.span(u, 3), Subspace.span(w, 3)
    i = intersect_subspaces(a, b)
    assert is_subspace(i, a) and is_subspace(i, b)
    # dim(a + b) = dim a + dim b - dim(a cap b)
    assert Subspace.span(list(a.basis) + list(b.basis), 3).dim == a.dim + b.dim - i.dim


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=3), st.data())
def test_span_contains_its_combinations(vectors, data):
    s = Subspace.span(vectors, 3)
    cs = data.draw(st.lists(small, min_size=len(vectors), max_size=len(vectors)))
    v = [sum(c * x[t] for c, x in zip(cs, vectors)) for t in range(3)]
    assert subspace_contains(s, v)
