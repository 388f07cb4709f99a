from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from bigcoh.errors import InvalidDimensions
from bigcoh.linalg import (
    RationalMatrix,
    Subspace,
    as_rational,
    coordinates_in,
    image_basis,
    kernel_basis,
    kron,
    preimage_basis,
    rref,
    solve,
    subspace_ops,
)


def M(rows, cols=None):
    return RationalMatrix.from_rows(rows, cols)


def test_rref_empty():
    r, piv = rref(RationalMatrix.zeros(0, 0))
    assert r.shape == (0, 0) and piv == []


def test_rref_identity_is_fixed():
    r, piv = rref(RationalMatrix.identity(2))
    assert r == RationalMatrix.identity(2) and piv == [0, 1]


def test_rref_rank_one():
    r, piv = rref(M([[2, 4], [1, 2]]))
    assert r.to_dense()[0] == [1, 2]
    assert not any(r.to_dense()[1]) if r.rows > 1 else True
    assert piv == [0]


def test_kernel_examples():
    assert kernel_basis(RationalMatrix.zeros(2, 3)) == Subspace.full(3)
    assert kernel_basis(RationalMatrix.identity(3)).dim == 0
    assert kernel_basis(M([[1, 1]])) == Subspace(2, [[1, -1]])


def test_image_examples():
    assert image_basis(RationalMatrix.zeros(2, 2)).dim == 0
    assert image_basis(RationalMatrix.identity(2)) == Subspace.full(2)
    assert image_basis(M([[1], [2]])) == Subspace(2, [[1, 2]])


def test_preimage_examples():
    t = Subspace(2, [[1, 1]])
    assert preimage_basis(RationalMatrix.identity(2), t) == t
    assert preimage_basis(M([[1, 2, 3], [4, 5, 6]]), Subspace.full(2)) == Subspace.full(3)
    assert preimage_basis(M([[1, 0], [0, 0]]), Subspace(2, [[0, 1]])) == Subspace(2, [[0, 1]])
    with pytest.raises(InvalidDimensions):
        preimage_basis(RationalMatrix.identity(2), Subspace.full(3))


def test_subspace_ops_examples():
    a = Subspace(2, [[1, 0]])
    ops = subspace_ops(a, a)
    assert ops.sum == a and ops.intersection == a and ops.a_contains_b
    assert ops.quotient_dim_of_a_by_intersection == 0
    ops = subspace_ops(a, Subspace(2, [[0, 1]]))
    assert ops.sum == Subspace.full(2) and ops.intersection.dim == 0
    assert ops.quotient_dim_of_a_by_intersection == 1
    z = Subspace.zero(2)
    b = Subspace(2, [[1, 3]])
    ops = subspace_ops(z, b)
    assert ops.sum == b and ops.intersection.dim == 0 and not ops.a_contains_b
    assert subspace_ops(z, z).a_contains_b
    with pytest.raises(InvalidDimensions):
        subspace_ops(a, Subspace.full(3))


def test_floats_refused():
    with pytest.raises(TypeError):
        as_rational(0.5)
    assert as_rational("3/4") == Fraction(3, 4)


def test_solve_and_coordinates():
    m = M([[1, 1], [0, 1]])
    assert solve(m, [3, 1]) == (2, 1)
    assert solve(M([[1, 1], [1, 1]]), [1, 2]) is None
    coeffs = coordinates_in([(1, 0, 1), (0, 1, 0)], [(2, 3, 2), (0, 0, 1)], 3)
    assert coeffs[0] == (2, 3) and coeffs[1] is None


def test_kron_shape_and_entries():
    a = M([[1, 2]])
    b = M([[0], [1]])
    k = kron(a, b)
    assert k.to_dense() == [[0, 0], [1, 2]]


def test_canonical_equality():
    assert Subspace(3, [[1, 2, 3], [0, 1, 1]]) == Subspace(3, [[1, 3, 4], [2, 5, 7]])
    assert Subspace(3, [[1, 2, 3]]) != Subspace(3, [[1, 2, 4]])


# -- properties (oracle: sympy) ---------------------------------------------

small = st.integers(min_value=-3, max_value=3)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    rows = [[draw(small) for _ in range(c)] for _ in range(r)]
    return r, c, rows


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_nullity_against_sympy(mat):
    r, c, rows = mat
    m = RationalMatrix.from_rows(rows, c)
    ker = kernel_basis(m)
    img = image_basis(m)
    assert ker.dim + img.dim == c
    if r and c:
        assert img.dim == sympy.Matrix(rows).rank()
    for v in ker.vectors():
        assert not any(m.apply(v))


@settings(max_examples=60, deadline=None)
@given(matrices(max_rows=4, max_cols=5), matrices(max_rows=4, max_cols=5))
def test_dimension_formula(m1, m2):
    n = 5
    a = Subspace(n, [(row + [0] * n)[:n] for row in m1[2]])
    b = Subspace(n, [(row + [0] * n)[:n] for row in m2[2]])
    assert (a + b).dim + (a & b).dim == a.dim + b.dim
    assert (a & b) <= a and (a & b) <= b and a <= a + b


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_canonical_form_idempotent_and_preimage_of_image(mat):
    r, c, rows = mat
    m = RationalMatrix.from_rows(rows, c)
    s = image_basis(m)
    assert Subspace(s.ambient_dim, s.vectors()) == s
    assert preimage_basis(m, s) == Subspace.full(c)
