"""Null subcomplexes, pre-cocycles/pre-coboundaries, the obstruction maps
rho_k and varrho_k, and the (k, q) exact diagrams.

Z^k_q and B^k_q are returned as subspaces of C^k (they sit inside G^q C^k).
Block-level spaces such as N^{p,q} or B^{k+1}(N_j) are subspaces of the
single block C^{p,q}.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .complex import GradedVector, cocycles, coboundaries
from .errors import (
    ClosureFailure,
    CrossCheckFailure,
    ExactnessFailure,
    InvalidDimensions,
    NotInA,
    NotInJ,
    PrecocycleMismatch,
)
from .linalg import (
    RationalMatrix,
    Subspace,
    coordinates_in,
    kernel_basis,
    solve,
    vstack,
)


def _cached(c, key, fn):
    if key not in c._cache:
        c._cache[key] = fn()
    return c._cache[key]


# -- null subcomplexes --------------------------------------------------------


def null_block(c, p, q):
    """N^{p,q} = ker D01 cap ker D2m1 inside C^{p,q}."""

    def build():
        return kernel_basis(vstack([c.op("d01", p, q), c.op("d2m1", p, q)]))

    return _cached(c, ("N", p, q), build)


def null_coboundaries(c, p, q):
    """B(N_q) in bidegree (p, q): D10 applied to N^{p-1,q}."""
    return _cached(
        c, ("BN", p, q), lambda: null_block(c, p - 1, q).image(c.op("d10", p - 1, q))
    )


def null_cocycles(c, p, q):
    """Z(N_q) in bidegree (p, q): elements of N^{p,q} killed by D10."""
    return _cached(
        c, ("ZN", p, q), lambda: null_block(c, p, q) & kernel_basis(c.op("d10", p, q))
    )


@dataclass(frozen=True)
class NullSubcomplex:
    bases: dict
    dbar: dict

    def dim(self, p, q):
        b = self.bases.get((p, q))
        return b.dim if b is not None else 0


def null_subcomplex(c):
    c.require_valid()

    def build():
        bases = {}
        for p in range(c.pmax + 1):
            for q in range(c.qmax + 1):
                bases[(p, q)] = null_block(c, p, q)
        dbar = {}
        for (p, q), n in bases.items():
            tgt = bases.get((p + 1, q))
            d10 = c.op("d10", p, q)
            cols = []
            for v in n.vectors():
                img = d10.apply(v)
                if tgt is None:
                    if any(img):
                        raise ClosureFailure(f"D10 leaves the box from N^{{{p},{q}}}")
                    continue
                coords = tgt.coordinates(img)
                if coords is None:
                    raise ClosureFailure(f"D10 does not map N^{{{p},{q}}} into N^{{{p+1},{q}}}")
                cols.append(coords)
            rows = tgt.dim if tgt is not None else 0
            if cols:
                dbar[(p, q)] = RationalMatrix.from_columns(cols, rows)
            else:
                dbar[(p, q)] = RationalMatrix.zeros(rows, n.dim)
        for (p, q), m in dbar.items():
            nxt = dbar.get((p + 1, q))
            if nxt is not None and m.rows and not (nxt @ m).is_zero():
                raise ClosureFailure(f"Dbar^2 != 0 at ({p},{q})")
        return NullSubcomplex(bases, dbar)

    return _cached(c, "null_subcomplex", build)


@dataclass(frozen=True)
class NullCohomology:
    dim: int
    cocycles: Subspace
    coboundaries: Subspace


def _from_null_coords(basis, sub_vectors, n):
    """Vectors in N-coordinates -> subspace of the ambient block."""
    vecs = basis.vectors()
    out = []
    for coeffs in sub_vectors:
        v = [Fraction(0)] * n
        for a, b in zip(coeffs, vecs):
            if a:
                for i, x in enumerate(b):
                    v[i] += a * x
        out.append(v)
    return Subspace(n, out)


def null_cohomology(n, q, k):
    """H^k of the row complex (N_q, Dbar); spaces live in C^{k-q,q}."""
    p = k - q
    basis = n.bases.get((p, q))
    if basis is None:
        return NullCohomology(0, Subspace.zero(0), Subspace.zero(0))
    amb = basis.ambient_dim
    d_out = n.dbar[(p, q)]
    z = _from_null_coords(basis, kernel_basis(d_out).vectors(), amb)
    prev = n.bases.get((p - 1, q))
    if prev is None or prev.dim == 0:
        b = Subspace.zero(amb)
    else:
        d_in = n.dbar[(p - 1, q)]
        img = [d_in.apply(e) for e in Subspace.full(prev.dim).vectors()]
        b = _from_null_coords(basis, img, amb)
    return NullCohomology(z.dim - b.dim, z, b)


# -- pre-cocycles and pre-coboundaries ---------------------------------------


@dataclass(frozen=True)
class PreModules:
    Z: Subspace
    B: Subspace


def precocycles_projection(c, k, q):
    return _cached(c, ("Zq", k, q), lambda: cocycles(c, k).image(c.pi_matrix(k, q)))


def precoboundaries(c, k, q):
    return _cached(c, ("Bq", k, q), lambda: coboundaries(c, k).image(c.pi_matrix(k, q)))


def precocycles_via_m(c, k, q):
    """pi_q of {eta in M^k : pi_q(D eta) = 0}.

    Component (i, j) of D eta must vanish for j >= q and lie in B^{k+1}(N_j)
    for j < q; each membership is imposed through the annihilator of the
    target subspace.
    """

    def build():
        d = c.total_differential(k)
        layout = c.layout(k + 1)
        rows = []
        for (i, j), rng in layout.items():
            if not len(rng):
                continue
            block = d.submatrix(list(rng), list(range(d.cols)))
            if j >= q:
                rows.append(block)
            else:
                ann = null_coboundaries(c, i, j).annihilator()
                if ann.rows:
                    rows.append(ann @ block)
        system = vstack(rows, cols=d.cols) if rows else RationalMatrix.zeros(0, d.cols)
        return kernel_basis(system).image(c.pi_matrix(k, q))

    return _cached(c, ("ZqM", k, q), build)


def pre_modules(c, k, q):
    c.require_valid()
    if q < 0 or q > k + 1:
        raise InvalidDimensions(f"need 0 <= q <= k+1, got k={k}, q={q}")
    z = precocycles_projection(c, k, q)
    zm = precocycles_via_m(c, k, q)
    if z != zm:
        raise PrecocycleMismatch(
            f"Z^{k}_{q}: projection gives dim {z.dim}, M-description gives dim {zm.dim}"
        )
    return PreModules(z, precoboundaries(c, k, q))


def homogeneous(c, k, q, sub):
    """sub cap C^{k-q,q}, as a subspace of C^k."""
    return sub & c.block_subspace(k, k - q)


def homogeneous_block(c, k, q, sub):
    """sub cap C^{k-q,q}, in the coordinates of the block C^{k-q,q}."""
    return c.restrict_block(k, k - q, homogeneous(c, k, q, sub))


# -- the spaces A^k, J^k and the maps rho, varrho -----------------------------


def space_a(c, k):
    """A^k = pi_1{eta in C^k : pi_1(D eta) = 0}, inside C^k."""

    def build():
        m = c.pi_matrix(k + 1, 1) @ c.total_differential(k)
        return kernel_basis(m).image(c.pi_matrix(k, 1))

    return _cached(c, ("A", k), build)


def space_j(c, k):
    return _cached(c, ("J", k), lambda: homogeneous(c, k, 1, space_a(c, k)))


@dataclass(frozen=True)
class ObstructionClass:
    """A class in H^{k+1}(N_0, Dbar), stored by representative in C^{k+1,0}."""

    degree: int
    representative: tuple
    cocycles: Subspace
    coboundaries: Subspace

    @property
    def is_zero(self):
        return self.representative in self.coboundaries

    def __eq__(self, other):
        if not isinstance(other, ObstructionClass):
            return NotImplemented
        if self.degree != other.degree or self.coboundaries != other.coboundaries:
            return False
        diff = tuple(a - b for a, b in zip(self.representative, other.representative))
        return diff in self.coboundaries

    __hash__ = None


def _h_n0(c, k):
    """Cocycles, coboundaries and class representatives of H^{k+1}(N_0)."""

    def build():
        z = null_cocycles(c, k + 1, 0)
        b = null_coboundaries(c, k + 1, 0)
        return z, b, b.extend_with(z.vectors())

    return _cached(c, ("HN0", k + 1), build)


def _witness(c, k, xi):
    """Some eta_{k,0} with D01 eta + D10 xi_{k-1,1} + D2m1 xi_{k-2,2} = 0."""
    rhs = [Fraction(0)] * c.dim(k, 1)
    x1 = xi.component(k - 1, 1, c)
    x2 = xi.component(k - 2, 2, c)
    for m, x in ((c.op("d10", k - 1, 1), x1), (c.op("d2m1", k - 2, 2), x2)):
        if m.rows and m.cols:
            for i, v in enumerate(m.apply(x)):
                rhs[i] -= v
    return solve(c.op("d01", k, 0), rhs)


def _rho_representative(c, k, xi, eta0):
    rep = [Fraction(0)] * c.dim(k + 1, 0)
    for m, x in ((c.op("d2m1", k - 1, 1), xi.component(k - 1, 1, c)), (c.op("d10", k, 0), eta0)):
        if m.rows and m.cols:
            for i, v in enumerate(m.apply(x)):
                rep[i] += v
    return tuple(rep)


def _check_in_a(c, k, xi, err=NotInA):
    if xi.degree != k:
        raise err(f"expected a degree-{k} vector, got degree {xi.degree}")
    if any(xi.component(k, 0, c) or ()):
        raise err("xi must lie in G^1 C^k (its (k,0) component must vanish)")
    if xi.flat(c) not in space_a(c, k):
        raise err(f"xi is not in A^{k}")


def rho(c, k, xi):
    """The obstruction class rho_k(xi) in H^{k+1}(N_0, Dbar)."""
    c.require_valid()
    _check_in_a(c, k, xi)
    eta0 = _witness(c, k, xi)
    if eta0 is None:
        raise NotInA(f"no eta_{{{k},0}} witnesses membership of xi in A^{k}")
    z, b, _ = _h_n0(c, k)
    rep = _rho_representative(c, k, xi, eta0)
    if rep not in z:
        raise CrossCheckFailure(f"rho_{k} representative is not a cocycle of N_0")
    nbasis = null_block(c, k, 0).vectors()
    if nbasis:
        eta1 = tuple(a + b_ for a, b_ in zip(eta0, nbasis[0]))
        rep1 = _rho_representative(c, k, xi, eta1)
        if tuple(a - b_ for a, b_ in zip(rep1, rep)) not in b:
            raise CrossCheckFailure(f"rho_{k} depends on the witness")
    return ObstructionClass(k, rep, z, b)


def varrho(c, k, xi):
    """rho_k restricted to J^k = A^k cap C^{k-1,1}."""
    c.require_valid()
    if xi.degree != k:
        raise NotInJ(f"expected a degree-{k} vector")
    for (p, q), v in xi.components.items():
        if (p, q) != (k - 1, 1) and any(v):
            raise NotInJ(f"xi has a nonzero component at {(p, q)}")
    _check_in_a(c, k, xi, err=NotInJ)
    return rho(c, k, xi)


def _rho_kernel_on(c, k, domain):
    """ker(rho_k) restricted to a subspace of A^k, as a subspace of C^k."""
    vecs = domain.vectors()
    n = c.total_dim(k)
    if not vecs:
        return Subspace.zero(n)
    z, b, reps = _h_n0(c, k)
    h = len(reps)
    if h == 0:
        return domain
    gens = b.vectors() + list(reps)
    reps_of = []
    for v in vecs:
        xi = GradedVector.from_flat(c, k, v)
        eta0 = _witness(c, k, xi)
        if eta0 is None:
            raise NotInA(f"basis vector of A^{k} has no witness")
        reps_of.append(_rho_representative(c, k, xi, eta0))
    cols = []
    for coeffs in coordinates_in(gens, reps_of, c.dim(k + 1, 0)):
        if coeffs is None:
            raise CrossCheckFailure(f"rho_{k} lands outside Z^{k+1}(N_0)")
        cols.append(coeffs[b.dim:])
    matrix = RationalMatrix.from_columns(cols, h)
    out = []
    for coeffs in kernel_basis(matrix).vectors():
        w = [Fraction(0)] * n
        for a, v in zip(coeffs, vecs):
            if a:
                for i, x in enumerate(v):
                    w[i] += a * x
        out.append(w)
    return Subspace(n, out)


def rho_kernel(c, k):
    c.require_valid()
    return _cached(c, ("kerrho", k), lambda: _rho_kernel_on(c, k, space_a(c, k)))


def varrho_kernel(c, k):
    c.require_valid()
    return _cached(c, ("kervarrho", k), lambda: _rho_kernel_on(c, k, space_j(c, k)))


# -- diagrams and splittings ----------------------------------------------


@dataclass(frozen=True)
class DiagramReport:
    """The nine spaces of the (k, q) diagram and the exactness verdicts."""

    k: int
    q: int
    p: int
    spaces: dict
    quotient_dims: dict
    verdicts: dict
    failures: tuple = field(default=())

    @property
    def exact(self):
        return all(self.verdicts.values())

    def dims(self):
        out = {name: s.dim for name, s in self.spaces.items()}
        out.update(self.quotient_dims)
        return out


def diagram(c, k, q, strict=True):
    c.require_valid()
    if not 0 <= q <= k:
        raise InvalidDimensions(f"need 0 <= q <= k, got k={k}, q={q}")
    p = k - q
    lo = pre_modules(c, k, q)
    hi = pre_modules(c, k, q + 1)
    blk = c.block_subspace(k, p)
    bq, zq = lo.B, lo.Z
    bq1, zq1 = hi.B, hi.Z
    bpq, zpq = bq & blk, zq & blk
    spaces = {
        "B_q_cap_Cpq": bpq,
        "B_q": bq,
        "B_q1": bq1,
        "Z_q_cap_Cpq": zpq,
        "Z_q": zq,
        "Z_q1": zq1,
    }
    quotients = {
        "H_pq": zpq.dim - bpq.dim,
        "H_q": zq.dim - bq.dim,
        "H_q1": zq1.dim - bq1.dim,
    }
    pi = c.pi_matrix(k, q + 1)
    failures = []

    def row(name, left, mid, right):
        ok = True
        if not mid.contains(left):
            failures.append(f"{name}: left arrow is not an inclusion")
            ok = False
        if mid.image(pi) != right:
            failures.append(f"{name}: pi_{q+1} is not onto")
            ok = False
        # kernel of pi_{q+1} on mid is mid cap C^{p,q}
        if (mid & blk) != left:
            failures.append(f"{name}: kernel of pi_{q+1} differs from the left term")
            ok = False
        if mid.dim != left.dim + right.dim:
            failures.append(f"{name}: dimensions do not add up")
            ok = False
        return ok

    verdicts = {
        "row_B": row("row_B", bpq, bq, bq1),
        "row_Z": row("row_Z", zpq, zq, zq1),
    }
    ok = (zpq & bq) == bpq and quotients["H_q"] == quotients["H_pq"] + quotients["H_q1"]
    if not ok:
        failures.append("row_H: induced map on quotients is not injective or dims do not add")
    verdicts["row_H"] = ok
    for name, b_, z_, key in (
        ("col_left", bpq, zpq, "H_pq"),
        ("col_middle", bq, zq, "H_q"),
        ("col_right", bq1, zq1, "H_q1"),
    ):
        ok = z_.contains(b_) and quotients[key] == z_.dim - b_.dim and quotients[key] >= 0
        if not ok:
            failures.append(f"{name}: B is not contained in Z")
        verdicts[name] = ok
    report = DiagramReport(k, q, p, spaces, quotients, verdicts, tuple(failures))
    if strict and failures:
        raise ExactnessFailure(f"diagram (k={k}, q={q}): " + "; ".join(failures))
    return report


@dataclass(frozen=True)
class Splitting:
    cohomology: list
    cocycles: list
    coboundaries: list


def splittings(c, k):
    c.require_valid()
    h, z, b = [], [], []
    for q in range(k + 1):
        pm = pre_modules(c, k, q)
        zd = homogeneous(c, k, q, pm.Z).dim
        bd = homogeneous(c, k, q, pm.B).dim
        h.append(zd - bd)
        z.append(zd)
        b.append(bd)
    zt, bt = cocycles(c, k).dim, coboundaries(c, k).dim
    if sum(z) != zt or sum(b) != bt or sum(h) != zt - bt:
        raise CrossCheckFailure(
            f"degree-{k} splitting sums {sum(z)}/{sum(b)} disagree with {zt}/{bt}"
        )
    return Splitting(h, z, b)


def split_cohomology(c, k):
    """dim (Z^k_q cap C^{k-q,q}) / (B^k_q cap C^{k-q,q}) for q = 0..k."""
    return splittings(c, k).cohomology
