import pytest

from bigcoh.complex import GradedVector, apply_differential
from bigcoh.errors import NotACocycle
from bigcoh.models import nz_complex, torus_complex
from bigcoh.obstruction import (
    FirstObstruction,
    Witness,
    decide_vanishing,
    obstruction_sequence,
)


def test_nz_walk_finds_witness():
    c = nz_complex()
    w = GradedVector(2, {(2, 0): (1,)})
    dec = decide_vanishing(c, w)
    assert dec.vanishes
    assert isinstance(dec.certificate, Witness)
    assert dec.certificate.xi.component(0, 1, c) == (1,)
    assert [s.bidegree for s in dec.trace.steps] == [(0, 2), (1, 1), (2, 0)]
    assert all(s.class_vanishes for s in dec.trace.steps)


def test_torus_generator_obstructed_at_bottom_row():
    c = torus_complex()
    eta = GradedVector(1, {(1, 0): (1,), (0, 1): (0,)})
    trace = obstruction_sequence(c, eta)
    assert not trace.vanishes
    assert isinstance(trace.outcome, FirstObstruction)
    assert trace.outcome.bidegree == (1, 0)
    eta = GradedVector(1, {(0, 1): (1,)})
    assert decide_vanishing(c, eta).certificate.bidegree == (0, 1)


def test_not_a_cocycle_rejected():
    c = nz_complex()
    with pytest.raises(NotACocycle):
        decide_vanishing(c, GradedVector(1, {(0, 1): (1,)}))


def test_coboundaries_vanish(small_corpus):
    import random
    from fractions import Fraction

    rng = random.Random(3)
    for c in small_corpus:
        for k in range(1, c.max_degree + 1):
            n = c.total_dim(k - 1)
            if not n:
                continue
            xi = GradedVector.from_flat(c, k - 1, [Fraction(rng.randint(-3, 3)) for _ in range(n)])
            eta = apply_differential(c, xi)
            dec = decide_vanishing(c, eta)
            assert dec.vanishes
            assert apply_differential(c, dec.certificate.xi).flat(c) == eta.flat(c)


def test_degree_zero():
    c = torus_complex()
    dec = decide_vanishing(c, GradedVector(0, {(0, 0): (1,)}))
    assert not dec.vanishes
    dec = decide_vanishing(c, GradedVector(0, {(0, 0): (0,)}))
    assert dec.vanishes
