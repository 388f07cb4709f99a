import random
from fractions import Fraction

import pytest
import sympy as sp

from bigcoh.complex import betti_numbers, validate
from bigcoh.errors import InvalidDimensions, NonVanishingConstantTerm, NotPoisson
from bigcoh.geometry import (
    MModel,
    PolyMultivector,
    build_product_complex,
    build_vertical_complex,
    d_pi,
    decompose_poisson_field,
    euler_homotopy,
    from_coordinates,
    hamiltonian_field,
    lichnerowicz_matrix,
    recombine,
    to_coordinates,
    weight_basis,
    z1,
    z2,
)
from bigcoh.models import CochainComplex, circle_model

Y1, Y2 = sp.symbols("y1 y2")
F = Y1**2 + Y2**2


def _to_sym(poly):
    return sum(sp.Rational(c.numerator, c.denominator) * Y1 ** m[0] * Y2 ** m[1] for m, c in poly.items())


def _from_sym(expr):
    out = {}
    for (a, b), c in sp.Poly(sp.expand(expr), Y1, Y2).terms():
        out[(a, b)] = Fraction(int(c.p), int(c.q))
    return out


def _rand_poly(rng, deg=3):
    return {
        (i, j): Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        for i in range(deg + 1)
        for j in range(deg + 1 - i)
        if rng.random() < 0.6
    }


def _lie_bivector(y1, y2):
    """(L_Y Pi)^{12} by the tensor formula, Pi^{12} = f."""
    pi = sp.Matrix([[0, F], [-F, 0]])
    ys = [y1, y2]
    xs = [Y1, Y2]
    i, j = 0, 1
    val = sum(ys[k] * sp.diff(pi[i, j], xs[k]) for k in range(2))
    val -= sum(pi[k, j] * sp.diff(ys[i], xs[k]) for k in range(2))
    val -= sum(pi[i, k] * sp.diff(ys[j], xs[k]) for k in range(2))
    return sp.expand(val)


def test_d_pi_matches_sympy_oracle():
    rng = random.Random(5)
    for _ in range(20):
        h = _rand_poly(rng)
        hs = _to_sym(h)
        dh = d_pi(PolyMultivector.function(h))
        assert dh.components() == [_from_sym(-F * sp.diff(hs, Y2)), _from_sym(F * sp.diff(hs, Y1))]
        a, b = _rand_poly(rng), _rand_poly(rng)
        dy = d_pi(PolyMultivector.from_components(1, [a, b]))
        assert dy.component(0) == _from_sym(-_lie_bivector(_to_sym(a), _to_sym(b)))


def test_d_pi_squares_to_zero_and_fields_are_cocycles():
    rng = random.Random(6)
    for _ in range(20):
        h = PolyMultivector.function(_rand_poly(rng, 4))
        assert d_pi(d_pi(h)).is_zero()
    assert d_pi(z1()).is_zero()
    assert d_pi(z2()).is_zero()


def test_hamiltonian_fields_are_poisson():
    h = PolyMultivector.function({(2, 1): 3, (0, 1): Fraction(1, 2)})
    assert d_pi(hamiltonian_field(h)).is_zero()


def test_decompose_examples():
    d = decompose_poisson_field(z1())
    assert d.a1 == PolyMultivector.function({(0, 0): 1}) and d.a2.is_zero()
    d = decompose_poisson_field(z2())
    assert d.a1.is_zero() and d.a2 == PolyMultivector.function({(0, 0): 1})
    h = PolyMultivector.function({(1, 0): 1})
    y = hamiltonian_field(h)
    assert recombine(decompose_poisson_field(y)) == y


def test_decompose_rejections():
    with pytest.raises(NotPoisson):
        decompose_poisson_field(PolyMultivector.from_components(1, [{(0, 0): 1}, {}]))
    with pytest.raises(InvalidDimensions):
        decompose_poisson_field(PolyMultivector.function({(0, 0): 1}))


def test_euler_homotopy_examples():
    a2 = PolyMultivector.function({(1, 0): 2, (1, 1): 3})
    assert euler_homotopy(a2) == PolyMultivector.function({(1, 0): 2, (1, 1): Fraction(3, 2)})
    with pytest.raises(NonVanishingConstantTerm):
        euler_homotopy(PolyMultivector.function({(0, 0): 1}))


def test_coordinates_round_trip():
    rng = random.Random(7)
    for q in range(3):
        for w in range(4):
            n = len(weight_basis(q, w))
            v = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
            assert list(to_coordinates(from_coordinates(q, w, v), w)) == v
    assert lichnerowicz_matrix(0, 2, 4).shape == (len(weight_basis(1, 2)), len(weight_basis(0, 2)))


def test_vertical_betti_numbers():
    # polynomial cohomology: 1 in degree 0 and the classes of Z1, Z2 in degree 1
    for w in range(7):
        assert betti_numbers(build_vertical_complex(w)) == [1, 2, 2]


def test_product_with_point_is_vertical():
    v = build_vertical_complex(3)
    p = build_product_complex(MModel(CochainComplex((1,), ())), 3)
    assert p.dims == v.dims and p.operators == v.operators


def test_product_with_circle():
    c = build_product_complex(MModel(circle_model()), 4)
    assert validate(c).ok
    assert betti_numbers(c) == [1, 3, 4, 2]
    assert c.metadata["cohomology"] == "polynomial"


def test_negative_cutoff():
    with pytest.raises(InvalidDimensions):
        build_vertical_complex(-1)


def test_product_varrho_vanishes_on_j1():
    from bigcoh import structure as st

    for w in (0, 2, 4):
        c = build_product_complex(MModel(circle_model()), w)
        assert st.varrho_kernel(c, 1) == st.space_j(c, 1)
        # theta sits in H^1(N_0); [Z1], [Z2] sit in ker(rho_1) / B^1(C^{0,*})
        assert st.split_cohomology(c, 1) == [1, 2]
