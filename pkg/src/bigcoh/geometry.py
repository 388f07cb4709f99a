"""Polynomial multivector fields on R^2 for the Poisson structure
Psi = |y|^2 d1 ^ d2, the weight-truncated Lichnerowicz complex, and the
product coupling complex over a finite model of the base.

Sign convention (fixed so that the Hamiltonian identities hold verbatim):
    d h = f (d1h d2 - d2h d1),    d Y = (f div Y - 2 (y1 Y1 + y2 Y2)) d1^d2,
with f = y1^2 + y2^2, i.e. d Y = -L_Y Psi on vector fields.
Cohomology computed here is polynomial cohomology, not the smooth one.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .complex import BigradedComplex
from .errors import (
    CrossCheckFailure,
    DivisionFailure,
    InvalidDimensions,
    NonVanishingConstantTerm,
    NotPoisson,
)
from .linalg import RationalMatrix, as_rational, kron
from .models import CochainComplex

WEDGE = {0: ("1",), 1: ("d1", "d2"), 2: ("d1^d2",)}


# -- polynomials as {(m1, m2): Fraction} ------------------------------------


def _clean(p):
    return {m: c for m, c in p.items() if c}


def _padd(*ps):
    out = {}
    for p in ps:
        for m, c in p.items():
            out[m] = out.get(m, 0) + c
    return _clean(out)


def _pscale(p, s):
    return _clean({m: c * s for m, c in p.items()})


def _pmul(p, r):
    out = {}
    for (a1, a2), c in p.items():
        for (b1, b2), d in r.items():
            m = (a1 + b1, a2 + b2)
            out[m] = out.get(m, 0) + c * d
    return _clean(out)


def _pdiff(p, i):
    out = {}
    for m, c in p.items():
        if m[i]:
            n = (m[0] - 1, m[1]) if i == 0 else (m[0], m[1] - 1)
            out[n] = c * m[i]
    return out


_Y1 = {(1, 0): Fraction(1)}
_Y2 = {(0, 1): Fraction(1)}
_F = {(2, 0): Fraction(1), (0, 2): Fraction(1)}


@dataclass(frozen=True)
class PolyMultivector:
    """A q-vector field with polynomial coefficients.

    ``coefficients`` maps ((m1, m2), wedge index) to a rational.
    """

    degree: int
    coefficients: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.degree not in WEDGE:
            raise InvalidDimensions(f"multivector degree must be 0, 1 or 2, got {self.degree}")
        out = {}
        for (m, idx), c in self.coefficients.items():
            m = (int(m[0]), int(m[1]))
            if m[0] < 0 or m[1] < 0 or not 0 <= idx < len(WEDGE[self.degree]):
                raise InvalidDimensions(f"bad term {(m, idx)}")
            c = as_rational(c)
            if c:
                out[(m, idx)] = c
        object.__setattr__(self, "coefficients", out)

    @classmethod
    def from_components(cls, degree, comps):
        coeffs = {}
        for idx, p in enumerate(comps):
            for m, c in p.items():
                coeffs[(m, idx)] = c
        return cls(degree, coeffs)

    @classmethod
    def function(cls, poly):
        return cls.from_components(0, [poly])

    def component(self, idx):
        return {m: c for (m, i), c in self.coefficients.items() if i == idx}

    def components(self):
        return [self.component(i) for i in range(len(WEDGE[self.degree]))]

    def weights(self):
        return sorted({m[0] + m[1] - self.degree for (m, _) in self.coefficients})

    def is_zero(self):
        return not self.coefficients

    def __add__(self, other):
        if self.degree != other.degree:
            raise InvalidDimensions("adding multivectors of different degree")
        return PolyMultivector.from_components(
            self.degree, [_padd(a, b) for a, b in zip(self.components(), other.components())]
        )

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return PolyMultivector(self.degree, {k: c * s for k, c in self.coefficients.items()})

    def __repr__(self):
        terms = []
        for (m, idx), c in sorted(self.coefficients.items()):
            terms.append(f"{c}*y1^{m[0]}y2^{m[1]}{'' if self.degree == 0 else WEDGE[self.degree][idx]}")
        return f"PolyMultivector({self.degree}: {' + '.join(terms) or '0'})"


def _poly(x):
    if isinstance(x, PolyMultivector):
        if x.degree != 0:
            raise InvalidDimensions("expected a function")
        return x.component(0)
    return _clean({m: as_rational(c) for m, c in x.items()})


def z1():
    return PolyMultivector.from_components(1, [_Y1, _Y2])


def z2():
    return PolyMultivector.from_components(1, [_pscale(_Y2, -1), _Y1])


def divergence(y):
    return PolyMultivector.function(_padd(_pdiff(y.component(0), 0), _pdiff(y.component(1), 1)))


def lie_z1(h):
    """L_{Z1} h = y1 d1h + y2 d2h."""
    p = _poly(h)
    return PolyMultivector.function(_padd(_pmul(_Y1, _pdiff(p, 0)), _pmul(_Y2, _pdiff(p, 1))))


def lie_z2(h):
    """L_{Z2} h = -y2 d1h + y1 d2h."""
    p = _poly(h)
    return PolyMultivector.function(
        _padd(_pscale(_pmul(_Y2, _pdiff(p, 0)), -1), _pmul(_Y1, _pdiff(p, 1)))
    )


def d_pi(a):
    """The Lichnerowicz differential of Psi on a polynomial multivector."""
    if a.degree == 0:
        p = a.component(0)
        return PolyMultivector.from_components(
            1, [_pscale(_pmul(_F, _pdiff(p, 1)), -1), _pmul(_F, _pdiff(p, 0))]
        )
    if a.degree == 1:
        y1, y2 = a.components()
        div = _padd(_pdiff(y1, 0), _pdiff(y2, 1))
        radial = _padd(_pmul(_Y1, y1), _pmul(_Y2, y2))
        return PolyMultivector.from_components(2, [_padd(_pmul(_F, div), _pscale(radial, -2))])
    return PolyMultivector(2, {})


def hamiltonian_field(h):
    return d_pi(PolyMultivector.function(_poly(h)))


# -- weight bases and matrices ---------------------------------------------


def monomials(m):
    """Exponents of degree m, ordered by increasing power of y2."""
    if m < 0:
        return []
    return [(m - j, j) for j in range(m + 1)]


def weight_basis(q, w):
    """Basis of weight-w q-vectors as (monomial, wedge index), wedge-index major."""
    mons = monomials(w + q)
    return [(m, idx) for idx in range(len(WEDGE[q])) for m in mons]


def _check_weight(q, w, cutoff):
    if q not in WEDGE:
        raise InvalidDimensions(f"q must be 0, 1 or 2, got {q}")
    if not -2 <= w <= cutoff:
        raise InvalidDimensions(f"weight {w} outside [-2, {cutoff}]")


def to_coordinates(a, w):
    """Coordinates of the weight-w part of ``a`` in ``weight_basis``."""
    return tuple(a.coefficients.get(b, Fraction(0)) for b in weight_basis(a.degree, w))


def from_coordinates(q, w, coords):
    return PolyMultivector(q, {b: c for b, c in zip(weight_basis(q, w), coords)})


def lichnerowicz_matrix(q, w, cutoff):
    """Matrix of d_Pi from weight-w q-vectors to weight-w (q+1)-vectors."""
    _check_weight(q, w, cutoff)
    src = weight_basis(q, w)
    tgt = weight_basis(q + 1, w) if q < 2 else []
    cols = []
    for b in src:
        img = d_pi(PolyMultivector(q, {b: 1}))
        if q < 2 and any(m[0] + m[1] - (q + 1) != w for (m, _) in img.coefficients):
            raise CrossCheckFailure("d_Pi does not preserve the Euler weight")
        cols.append(to_coordinates(img, w) if q < 2 else ())
    if not cols:
        return RationalMatrix.zeros(len(tgt), 0)
    return RationalMatrix.from_columns(cols, len(tgt))


def _weights(q, cutoff):
    return [w for w in range(-2, cutoff + 1) if weight_basis(q, w)]


def vertical_layout(q, cutoff):
    """{weight: range} of coordinates inside the truncated space of q-vectors."""
    out, off = {}, 0
    for w in _weights(q, cutoff):
        n = len(weight_basis(q, w))
        out[w] = range(off, off + n)
        off += n
    return out


def vertical_dims(cutoff):
    return [sum(len(weight_basis(q, w)) for w in _weights(q, cutoff)) for q in range(3)]


def vertical_differential(q, cutoff):
    """d_Pi on all q-vectors of weight <= cutoff, block diagonal in weight."""
    dims = vertical_dims(cutoff)
    rows = dims[q + 1] if q < 2 else 0
    src = vertical_layout(q, cutoff)
    tgt = vertical_layout(q + 1, cutoff) if q < 2 else {}
    entries = {}
    for w, rng in src.items():
        m = lichnerowicz_matrix(q, w, cutoff)
        trng = tgt.get(w, range(0))
        for (i, j), v in m.entries.items():
            entries[(trng[i], rng[j])] = v
    return RationalMatrix(rows, dims[q], entries)


def vertical_vector(a, cutoff):
    """Coordinates of a multivector in the truncated space C^{0,q}."""
    out = [Fraction(0)] * vertical_dims(cutoff)[a.degree]
    lay = vertical_layout(a.degree, cutoff)
    for w in a.weights():
        if w not in lay:
            raise InvalidDimensions(f"weight {w} exceeds the cutoff {cutoff}")
        for i, c in zip(lay[w], to_coordinates(a, w)):
            out[i] = c
    return tuple(out)


def vertical_cochains(cutoff):
    dims = vertical_dims(cutoff)
    return CochainComplex(tuple(dims), tuple(vertical_differential(q, cutoff) for q in range(2)))


def build_vertical_complex(cutoff):
    if cutoff < 0:
        raise InvalidDimensions("the weight cutoff must be nonnegative")
    return build_product_complex(MModel(CochainComplex((1,), ())), cutoff, name="vertical")


# -- the product complex -----------------------------------------------------


@dataclass(frozen=True)
class MModel:
    """Finite cochain model of the base, with the flat product coupling."""

    complex: CochainComplex
    flat_product: bool = True


def build_product_complex(m, cutoff, name="product"):
    if cutoff < 0:
        raise InvalidDimensions("the weight cutoff must be nonnegative")
    if not m.flat_product:
        raise InvalidDimensions("only the flat product coupling is supported")
    base = m.complex
    vdims = vertical_dims(cutoff)
    dpi = [vertical_differential(q, cutoff) for q in range(2)]
    dims, ops = {}, {}
    for p, bp in enumerate(base.dims):
        for q in range(3):
            dims[(p, q)] = bp * vdims[q]
            if q < 2:
                ops[("d01", p, q)] = kron(RationalMatrix.identity(bp), dpi[q])
            if p < base.top:
                ops[("d10", p, q)] = kron(base.d(p), RationalMatrix.identity(vdims[q])).scale(
                    1 if q % 2 == 0 else -1
                )
    meta = {"name": name, "weight_cutoff": cutoff, "cohomology": "polynomial"}
    c = BigradedComplex(dims, ops, pmax=base.top, qmax=2, metadata=meta)
    return c.require_valid()


# -- decomposition of Poisson vector fields ----------------------------------


@dataclass(frozen=True)
class Decomposition:
    a1: PolyMultivector
    a2: PolyMultivector


def _mul_fn(a, p):
    return _pmul(a.component(0), p)


def decompose_poisson_field(y):
    """(a1, a2) with y = a1 Z1 + a2 Z2 and L_{Z1} a1 + L_{Z2} a2 = 0."""
    if y.degree != 1:
        raise InvalidDimensions("expected a vector field")
    if not d_pi(y).is_zero():
        raise NotPoisson("d_Pi Y != 0")
    a1 = divergence(y).scale(Fraction(1, 2))
    y1, y2 = y.components()
    rest = _padd(y2, _pscale(_mul_fn(a1, _Y2), -1))
    a2 = {}
    for (e1, e2), c in rest.items():
        if e1 == 0:
            raise DivisionFailure(f"Y2 - a1 y2 has the term {c} y2^{e2} not divisible by y1")
        a2[(e1 - 1, e2)] = c
    a2 = PolyMultivector.function(a2)
    if _padd(_mul_fn(a1, _Y1), _pscale(_mul_fn(a2, _Y2), -1)) != _clean(y1):
        raise CrossCheckFailure("a1 Z1 + a2 Z2 does not reproduce Y1")
    if not (lie_z1(a1) + lie_z2(a2)).is_zero():
        raise CrossCheckFailure("L_{Z1} a1 + L_{Z2} a2 != 0")
    return Decomposition(a1, a2)


def recombine(d):
    a1, a2 = d.a1.component(0), d.a2.component(0)
    return PolyMultivector.from_components(
        1,
        [_padd(_pmul(a1, _Y1), _pscale(_pmul(a2, _Y2), -1)), _padd(_pmul(a1, _Y2), _pmul(a2, _Y1))],
    )


def euler_homotopy(a2):
    """h with L_{Z1} h = a2, for a2 vanishing at the origin."""
    p = _poly(a2)
    if p.get((0, 0)):
        raise NonVanishingConstantTerm(f"a2(0) = {p[(0, 0)]}")
    return PolyMultivector.function({m: c / (m[0] + m[1]) for m, c in p.items()})
