import pytest

from bigcoh.complex import (
    BigradedComplex,
    GradedVector,
    betti_numbers,
    cohomology,
    project_pi_q,
    validate,
)
from bigcoh.errors import MalformedComplex, ValidationError
from bigcoh.linalg import RationalMatrix
from bigcoh.models import interval2_complex, nz_complex, torus_complex

ONE = RationalMatrix.from_rows([[1]])


def test_zero_operators_validate():
    c = BigradedComplex({(0, 0): 2, (1, 1): 3, (2, 0): 1}, {})
    assert validate(c).ok


def test_nz_validates():
    assert validate(nz_complex()).ok


def test_nz_with_vertical_arrow_breaks_cob3():
    c = BigradedComplex(
        {(0, 1): 1, (2, 0): 1, (2, 1): 1},
        {("d2m1", 0, 1): ONE, ("d01", 2, 0): ONE},
        pmax=2,
        qmax=1,
    )
    report = validate(c)
    assert [(v.identity, v.bidegree) for v in report.violations] == [("Cob3", (0, 1))]
    assert report.violations[0].residual.to_dense() == [[1]]
    with pytest.raises(ValidationError):
        c.require_valid()


def test_shape_mismatch_is_malformed_not_a_violation():
    with pytest.raises(MalformedComplex):
        BigradedComplex({(0, 0): 1, (0, 1): 2}, {("d01", 0, 0): ONE})
    with pytest.raises(MalformedComplex):
        BigradedComplex({(-1, 0): 1}, {})
    with pytest.raises(MalformedComplex):
        BigradedComplex({(0, 0): 1}, {("d3m2", 0, 0): ONE})


def test_total_differential_examples():
    c = nz_complex()
    assert c.total_differential(1).to_dense() == [[1]]
    assert c.total_differential(3).shape == (0, 0)
    t = torus_complex()
    assert t.total_differential(2).shape == (0, 1)
    assert interval2_complex().total_differential(0).rank() == 3


def test_cohomology_examples():
    assert betti_numbers(torus_complex()) == [1, 2, 1]
    nz = nz_complex()
    assert cohomology(nz, 1).dim == 0 and cohomology(nz, 2).dim == 0
    assert betti_numbers(interval2_complex()) == [1, 0, 0]


def test_pi_q_examples():
    v = GradedVector(2, {(2, 0): (1,), (1, 1): (2,), (0, 2): (3,)})
    assert project_pi_q(v, 0) == v
    assert project_pi_q(v, -1) == v
    assert project_pi_q(v, 1).components == {(1, 1): (2,), (0, 2): (3,)}
    assert project_pi_q(v, 3).is_zero()


def test_graded_vector_rejects_wrong_degree():
    with pytest.raises(MalformedComplex):
        GradedVector(1, {(1, 1): (1,)})


def test_corpus_invariants(small_corpus):
    for c in small_corpus:
        for k in range(c.max_degree + 1):
            assert (c.total_differential(k + 1) @ c.total_differential(k)).is_zero()
            pi1 = c.pi_matrix(k, 1)
            pi2 = c.pi_matrix(k, 2)
            assert pi1 @ pi1 == pi1 and pi2 @ pi1 == pi2
        euler_c = sum((-1) ** k * c.total_dim(k) for k in range(c.max_degree + 1))
        euler_h = sum((-1) ** k * h for k, h in enumerate(betti_numbers(c)))
        assert euler_c == euler_h
