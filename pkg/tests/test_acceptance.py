"""The eleven acceptance criteria, one test each.

A PASS/FAIL line per criterion is printed in the "acceptance criteria"
section of the pytest terminal summary (see conftest.py).
"""

import random
import time
from fractions import Fraction

import pytest

from bigcoh import structure as st
from bigcoh.complex import (
    BigradedComplex,
    GradedVector,
    apply_differential,
    betti_numbers,
    coboundaries,
    cocycles,
    validate,
)
from bigcoh.corpus import generate_corpus
from bigcoh.geometry import (
    MModel,
    build_product_complex,
    build_vertical_complex,
    decompose_poisson_field,
    euler_homotopy,
    hamiltonian_field,
    lie_z1,
    lie_z2,
    vertical_vector,
    z1,
    z2,
)
from bigcoh.linalg import RationalMatrix, Subspace
from bigcoh.lowdegree import double_complex_e2, explicit_spaces
from bigcoh.models import circle_model, nz_complex
from bigcoh.obstruction import Witness, decide_vanishing
from bigcoh.spectral import e_infinity_table, page, spectral_sequence

from conftest import CORPUS_COUNT, CORPUS_SEED

ONE = RationalMatrix.from_rows([[1]])


def _grid(pmax, qmax):
    return {(p, q): 1 for p in range(pmax + 1) for q in range(qmax + 1)}


# each mutation adds operators to the zero complex on a 5x3 grid of lines
MUTATIONS = {
    "Cob1": {("d2m1", 0, 2): ONE, ("d2m1", 2, 1): ONE},
    "Cob2": {("d2m1", 0, 1): ONE, ("d10", 2, 0): ONE},
    "Cob3": {("d10", 0, 0): ONE, ("d10", 1, 0): ONE},
    "Cob4": {("d10", 0, 0): ONE, ("d01", 1, 0): ONE},
    "Cob5": {("d01", 0, 0): ONE, ("d01", 0, 1): ONE},
}


@pytest.mark.acceptance(1, "validator soundness on the corpus and five single-identity mutations")
def test_criterion_01_validator_soundness():
    t0 = time.perf_counter()
    cs = generate_corpus(CORPUS_SEED, CORPUS_COUNT)
    assert len(cs) >= 200
    assert {c.metadata["class"] for c in cs} == {"a", "b", "c", "d"}
    for c in cs:
        assert validate(c).ok, c.metadata
    base = BigradedComplex(_grid(4, 2), {}, pmax=4, qmax=2)
    assert validate(base).ok
    for name, ops in MUTATIONS.items():
        report = validate(base.with_operators(ops))
        assert report.identities() == [name], (name, report.summary())
    assert time.perf_counter() - t0 < 10.0


@pytest.mark.acceptance(2, "convergence: sum of E_inf over p+q=k equals dim H^k")
def test_criterion_02_convergence(corpus):
    for c in corpus:
        e = e_infinity_table(c)
        b = betti_numbers(c)
        for k in range(c.max_degree + 1):
            assert sum(d for (p, q), d in e.items() if p + q == k) == b[k], c.metadata


@pytest.mark.acceptance(3, "E_inf equals the homogeneous pre-cocycle/pre-coboundary quotient")
def test_criterion_03_einfinity_homogeneous_quotient(corpus):
    for c in corpus:
        ss = spectral_sequence(c)
        for p, q in ss.bidegrees():
            k = p + q
            pm = st.pre_modules(c, k, q)
            quot = st.homogeneous(c, k, q, pm.Z).dim - st.homogeneous(c, k, q, pm.B).dim
            assert ss.e_infinity(p, q).dim == quot, (c.metadata, p, q)


@pytest.mark.acceptance(4, "all six exactness verdicts in every (k,q) diagram, k <= 4")
def test_criterion_04_diagram_exactness(corpus):
    for c in corpus:
        for k in range(5):
            for q in range(k + 1):
                rep = st.diagram(c, k, q, strict=False)
                assert rep.exact, (c.metadata, k, q, rep.failures)
                assert len(rep.verdicts) == 6


@pytest.mark.acceptance(5, "ker rho_k = Z^k_1 and ker varrho_k = Z^k_1 cap C^{k-1,1}, k = 1..3")
def test_criterion_05_kernel_identities(corpus):
    for c in corpus:
        for k in (1, 2, 3):
            z1_ = st.pre_modules(c, k, 1).Z
            assert st.rho_kernel(c, k) == z1_, (c.metadata, k)
            assert st.varrho_kernel(c, k) == st.homogeneous(c, k, 1, z1_), (c.metadata, k)


@pytest.mark.acceptance(6, "explicit low-degree spaces equal the structure spaces; splitting sums")
def test_criterion_06_low_degree(corpus):
    for c in corpus:
        for k in (1, 2, 3):
            # explicit_spaces raises CrossCheckFailure on any disagreement
            ex = explicit_spaces(c, k)
            h = cocycles(c, k).dim - coboundaries(c, k).dim
            assert sum(ex.splitting.values()) == h


@pytest.mark.acceptance(7, "double complexes: E_2 = H^p(H^q(C, D01), D10)")
def test_criterion_07_double_complex_e2(corpus):
    checked = 0
    for c in corpus:
        if c.metadata["class"] != "a":
            continue
        assert double_complex_e2(c) == page(c, 2, with_differentials=False).dims
        checked += 1
    assert checked >= 50


def _sample_cocycles(c, rng):
    out = []
    for k in range(c.max_degree + 1):
        z = cocycles(c, k).vectors()
        if z:
            v = [Fraction(0)] * c.total_dim(k)
            for b in z:
                a = rng.randint(-2, 2)
                v = [x + a * y for x, y in zip(v, b)]
            out.append(GradedVector.from_flat(c, k, v))
        if k >= 1 and c.total_dim(k - 1):
            xi = [Fraction(rng.randint(-2, 2)) for _ in range(c.total_dim(k - 1))]
            out.append(apply_differential(c, GradedVector.from_flat(c, k - 1, xi)))
    return out


@pytest.mark.acceptance(8, "obstruction walk agrees with direct coboundary membership (>= 500 cocycles)")
def test_criterion_08_obstruction_oracle(corpus):
    rng = random.Random(8)
    n = vanished = 0
    for c in corpus:
        for eta in _sample_cocycles(c, rng):
            dec = decide_vanishing(c, eta)
            oracle = eta.flat(c) in coboundaries(c, eta.degree)
            assert dec.vanishes == oracle
            if isinstance(dec.certificate, Witness) and eta.degree >= 1:
                assert apply_differential(c, dec.certificate.xi).flat(c) == eta.flat(c)
                vanished += 1
            n += 1
    assert n >= 500
    assert 0 < vanished < n


@pytest.mark.acceptance(9, "worked example NZ")
def test_criterion_09_nz():
    c = nz_complex()
    assert betti_numbers(c)[1] == 0 and betti_numbers(c)[2] == 0
    v = GradedVector(1, {(0, 1): (1,)})
    assert st.space_a(c, 1) == Subspace(1, [[1]])
    assert not st.rho(c, 1, v).is_zero
    assert st.rho_kernel(c, 1).dim == 0
    d2 = page(c, 2).differentials[(0, 1)]
    assert d2.rank() == 1
    assert all(d == 0 for (p, q), d in page(c, 3, False).dims.items() if p + q in (1, 2))


@pytest.mark.acceptance(10, "vertical and product complexes at weight 4")
def test_criterion_10_geometry():
    t0 = time.perf_counter()
    w = 4
    v = build_vertical_complex(w)
    hv = betti_numbers(v)
    assert hv[0] == 1
    d = v.total_differential(1)
    zs = [vertical_vector(z1(), w), vertical_vector(z2(), w)]
    for z in zs:
        assert not any(d.apply(z))
    # independence of the classes: Z1, Z2 together with B^1 span a space of dim B^1 + 2
    b1 = coboundaries(v, 1)
    assert (b1 + Subspace(b1.ambient_dim, zs)).dim == b1.dim + 2
    prod = build_product_complex(MModel(circle_model()), w)
    hp = betti_numbers(prod)
    assert hp[0] == 1
    n = v.total_dim(1)
    # C^1 of the product is C^{1,0} (+) C^{0,1} = (theta (x) V^0) (+) (1 (x) V^1)
    lay = prod.layout(1)
    theta = [Fraction(0)] * prod.total_dim(1)
    theta[lay[(1, 0)][0]] = Fraction(1)
    lifts = [theta]
    for z in zs:
        x = [Fraction(0)] * prod.total_dim(1)
        for i, val in zip(lay[(0, 1)], z):
            x[i] = val
        lifts.append(x)
    dp = prod.total_differential(1)
    for x in lifts:
        assert not any(dp.apply(x))
    bp = coboundaries(prod, 1)
    assert (bp + Subspace(bp.ambient_dim, lifts)).dim == bp.dim + 3
    assert hp[1] == circle_model().betti()[1] + hv[1]
    print(f"weight {w}: vertical H = {hv}, product with circle H = {hp}, C^1 of vertical has dim {n}")
    assert time.perf_counter() - t0 < 30.0


def _random_poly(rng, max_degree=4):
    return {
        (i, j): Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        for i in range(max_degree + 1)
        for j in range(max_degree + 1 - i)
        if rng.random() < 0.5
    }


@pytest.mark.acceptance(11, "Hamiltonian identities and the Euler homotopy on 50 random h")
def test_criterion_11_operator_identities():
    from bigcoh.geometry import PolyMultivector

    rng = random.Random(11)
    for _ in range(50):
        h = PolyMultivector.function(_random_poly(rng))
        dec = decompose_poisson_field(hamiltonian_field(h))
        assert dec.a1 == lie_z2(h).scale(-1)
        assert dec.a2 == lie_z1(h)
        a2 = PolyMultivector.function({m: c for m, c in _random_poly(rng).items() if m != (0, 0)})
        assert lie_z1(euler_homotopy(a2)) == a2
        h0 = PolyMultivector.function({m: c for m, c in h.component(0).items() if m != (0, 0)})
        assert euler_homotopy(lie_z1(h)) == h0


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
