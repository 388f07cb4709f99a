"""First-quadrant bigraded cochain complexes with D = D01 + D10 + D2m1.

Conventions used everywhere in the package:

* ``C^{p,q}`` has a fixed ordered basis of size ``dims[(p, q)]``.
* ``C^k`` is the direct sum of the blocks ``C^{p,k-p}`` inside the bounding
  box, ordered by increasing ``p``.
* An operator of kind ``d01``/``d10``/``d2m1`` stored at ``(p, q)`` maps
  ``C^{p,q}`` to ``C^{p,q+1}``/``C^{p+1,q}``/``C^{p+2,q-1}``.
* Subspaces of ``G^q C^k`` or of a single block are represented as
  subspaces of the ambient ``C^k`` unless a function says otherwise.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import MalformedComplex, ValidationError
from .linalg import (
    RationalMatrix,
    Subspace,
    as_rational,
    block_matrix,
    image_basis,
    kernel_basis,
)

KINDS = ("d01", "d10", "d2m1")
SHIFT = {"d01": (0, 1), "d10": (1, 0), "d2m1": (2, -1)}


class BigradedComplex:
    """Dimensions and the three operator families of a bigraded complex.

    ``operators`` maps ``(kind, p, q)`` to a RationalMatrix of shape
    ``(dim target, dim source)``.  Absent operators are zero.  Instances are
    treated as immutable; derived data is memoised in ``_cache``.
    """

    def __init__(self, dims, operators=None, pmax=None, qmax=None, metadata=None):
        dims = {(int(p), int(q)): int(d) for (p, q), d in dims.items()}
        for (p, q), d in dims.items():
            if d < 0:
                raise MalformedComplex(f"negative dimension at ({p},{q})")
            if (p < 0 or q < 0) and d:
                raise MalformedComplex(f"C^{{{p},{q}}} must vanish outside the first quadrant")
        nonzero = [pq for pq, d in dims.items() if d]
        if pmax is None:
            pmax = max((p for p, _ in nonzero), default=0)
        if qmax is None:
            qmax = max((q for _, q in nonzero), default=0)
        self.pmax = int(pmax)
        self.qmax = int(qmax)
        if self.pmax < 0 or self.qmax < 0:
            raise MalformedComplex("bounding box must be nonnegative")
        for (p, q), d in dims.items():
            if d and not (p <= self.pmax and q <= self.qmax):
                raise MalformedComplex(f"C^{{{p},{q}}} lies outside the bounding box")
        self._dims = {pq: d for pq, d in dims.items() if d}
        self.metadata = dict(metadata or {})

        ops = {}
        for key, m in (operators or {}).items():
            kind, p, q = key
            if kind not in SHIFT:
                raise MalformedComplex(
                    f"unknown operator kind {kind!r}; only d01, d10, d2m1 are supported"
                )
            if not isinstance(m, RationalMatrix):
                m = RationalMatrix.from_rows(m)
            di, dj = SHIFT[kind]
            src, tgt = (p, q), (p + di, q + dj)
            if not self.in_box(*src):
                raise MalformedComplex(f"{kind} at ({p},{q}): source outside the bounding box")
            if not self.in_box(*tgt):
                raise MalformedComplex(
                    f"{kind} at ({p},{q}): target {tgt} outside the bounding box"
                )
            expected = (self.dim(*tgt), self.dim(*src))
            if m.shape != expected:
                raise MalformedComplex(
                    f"{kind} at ({p},{q}) has shape {m.shape}, expected {expected}"
                )
            if key in ops:
                raise MalformedComplex(f"duplicate operator {kind} at ({p},{q})")
            if not m.is_zero():
                ops[(kind, p, q)] = m
        self._ops = ops
        self._cache = {}

    # -- basic access -----------------------------------------------------

    def in_box(self, p, q):
        return 0 <= p <= self.pmax and 0 <= q <= self.qmax

    def dim(self, p, q):
        return self._dims.get((p, q), 0)

    @property
    def dims(self):
        return dict(self._dims)

    @property
    def operators(self):
        return dict(self._ops)

    def op(self, kind, p, q):
        """Matrix of an operator family on C^{p,q}; zero (possibly 0-sized) if absent."""
        m = self._ops.get((kind, p, q))
        if m is not None:
            return m
        di, dj = SHIFT[kind]
        return RationalMatrix.zeros(self.dim(p + di, q + dj), self.dim(p, q))

    def is_family_zero(self, kind):
        return not any(k == kind for k, _, _ in self._ops)

    @property
    def max_degree(self):
        return self.pmax + self.qmax

    # -- total-degree layout ---------------------------------------------

    def blocks(self, k):
        """Bidegrees (p, k-p) inside the box, increasing p."""
        return [(p, k - p) for p in range(max(0, k - self.qmax), min(k, self.pmax) + 1)]

    def layout(self, k):
        """``{(p, q): range}`` of coordinates of each block inside C^k."""
        key = ("layout", k)
        if key not in self._cache:
            out = {}
            off = 0
            for p, q in self.blocks(k):
                d = self.dim(p, q)
                out[(p, q)] = range(off, off + d)
                off += d
            self._cache[key] = (out, off)
        return self._cache[key][0]

    def total_dim(self, k):
        self.layout(k)
        return self._cache[("layout", k)][1]

    def block_range(self, k, p):
        return self.layout(k).get((p, k - p), range(0))

    def coordinate_subspace(self, k, pred):
        idx = []
        for (p, q), rng in self.layout(k).items():
            if pred(p, q):
                idx.extend(rng)
        return Subspace.coordinate(self.total_dim(k), idx)

    def filtration(self, p, k):
        """F^p C^k."""
        return self.coordinate_subspace(k, lambda i, j: i >= p)

    def block_subspace(self, k, p):
        """C^{p,k-p} as a subspace of C^k."""
        return self.coordinate_subspace(k, lambda i, j: i == p)

    def pi_matrix(self, k, q):
        """The projection pi_q on C^k as a diagonal 0/1 matrix."""
        n = self.total_dim(k)
        keep = self.coordinate_subspace(k, lambda i, j: j >= q).pivots
        return RationalMatrix(n, n, {(i, i): 1 for i in keep})

    def embed_block(self, k, p, sub):
        """Subspace of C^{p,k-p} -> subspace of C^k."""
        return sub.embed(self.total_dim(k), list(self.block_range(k, p)))

    def restrict_block(self, k, p, sub):
        """Subspace of C^k -> its coordinates in block C^{p,k-p} (projection)."""
        return sub.restrict(list(self.block_range(k, p)))

    # -- operators on total degrees ---------------------------------------

    def total_differential(self, k):
        key = ("D", k)
        if key not in self._cache:
            src = self.blocks(k)
            tgt = self.blocks(k + 1)
            tindex = {b: i for i, b in enumerate(tgt)}
            blocks = {}
            for j, (p, q) in enumerate(src):
                for kind in KINDS:
                    m = self._ops.get((kind, p, q))
                    if m is None:
                        continue
                    di, dj = SHIFT[kind]
                    blocks[(tindex[(p + di, q + dj)], j)] = m
            self._cache[key] = block_matrix(
                [self.dim(*b) for b in tgt], [self.dim(*b) for b in src], blocks
            )
        return self._cache[key]

    def partial(self, kind, k):
        """One operator family assembled on C^k -> C^{k+1}."""
        src = self.blocks(k)
        tgt = self.blocks(k + 1)
        tindex = {b: i for i, b in enumerate(tgt)}
        di, dj = SHIFT[kind]
        blocks = {}
        for j, (p, q) in enumerate(src):
            m = self._ops.get((kind, p, q))
            if m is not None:
                blocks[(tindex[(p + di, q + dj)], j)] = m
        return block_matrix([self.dim(*b) for b in tgt], [self.dim(*b) for b in src], blocks)

    # -- validation ---------------------------------------------------------

    def require_valid(self):
        if "valid" not in self._cache:
            report = validate(self)
            self._cache["valid"] = report
        report = self._cache["valid"]
        if not report.ok:
            raise ValidationError(report)
        return self

    def with_operators(self, operators, **kw):
        ops = dict(self._ops)
        ops.update(operators)
        return BigradedComplex(
            self._dims,
            ops,
            pmax=kw.get("pmax", self.pmax),
            qmax=kw.get("qmax", self.qmax),
            metadata=kw.get("metadata", self.metadata),
        )

    def __eq__(self, other):
        if not isinstance(other, BigradedComplex):
            return NotImplemented
        return (
            self._dims == other._dims
            and self._ops == other._ops
            and (self.pmax, self.qmax) == (other.pmax, other.qmax)
        )

    def __hash__(self):
        return hash((frozenset(self._dims.items()), frozenset(self._ops.items()), self.pmax, self.qmax))

    def __repr__(self):
        return (
            f"BigradedComplex(box={self.pmax}x{self.qmax}, "
            f"dims={dict(sorted(self._dims.items()))}, nops={len(self._ops)})"
        )


# -- graded vectors -----------------------------------------------------------


@dataclass(frozen=True)
class GradedVector:
    """An element of C^k given by its bigraded components."""

    degree: int
    components: dict = field(default_factory=dict)

    def __post_init__(self):
        comps = {}
        for (p, q), v in self.components.items():
            if p + q != self.degree:
                raise MalformedComplex(f"component ({p},{q}) in a degree-{self.degree} vector")
            if p < 0 or q < 0:
                raise MalformedComplex(f"component ({p},{q}) outside the first quadrant")
            comps[(p, q)] = tuple(as_rational(x) for x in v)
        object.__setattr__(self, "components", comps)

    def component(self, p, q, c=None):
        v = self.components.get((p, q))
        if v is None and c is not None:
            return (Fraction(0),) * c.dim(p, q)
        return v

    def is_zero(self):
        return not any(any(v) for v in self.components.values())

    def flat(self, c):
        """Coordinates in C^k."""
        out = [Fraction(0)] * c.total_dim(self.degree)
        layout = c.layout(self.degree)
        for pq, v in self.components.items():
            rng = layout.get(pq)
            if rng is None or len(rng) != len(v):
                if any(v):
                    raise MalformedComplex(f"component {pq} does not fit the complex")
                continue
            for i, x in zip(rng, v):
                out[i] = x
        return tuple(out)

    @classmethod
    def from_flat(cls, c, k, coords):
        comps = {}
        for pq, rng in c.layout(k).items():
            if len(rng):
                comps[pq] = tuple(coords[i] for i in rng)
        return cls(k, comps)

    def __add__(self, other):
        if self.degree != other.degree:
            raise MalformedComplex("adding vectors of different degree")
        comps = dict(self.components)
        for pq, v in other.components.items():
            if pq in comps:
                comps[pq] = tuple(a + b for a, b in zip(comps[pq], v))
            else:
                comps[pq] = v
        return GradedVector(self.degree, comps)

    def __neg__(self):
        return GradedVector(self.degree, {pq: tuple(-x for x in v) for pq, v in self.components.items()})

    def __sub__(self, other):
        return self + (-other)


def project_pi_q(v, q):
    """Drop every component whose second index is below ``q``."""
    return GradedVector(v.degree, {pq: x for pq, x in v.components.items() if pq[1] >= q})


def apply_differential(c, v):
    """D applied to a graded vector."""
    out = c.total_differential(v.degree).apply(v.flat(c))
    return GradedVector.from_flat(c, v.degree + 1, out)


# -- validation -------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    identity: str
    bidegree: tuple
    residual: RationalMatrix

    def describe(self):
        return f"{self.identity} fails on C^{self.bidegree} (residual {self.residual!r})"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def ok(self):
        return not self.violations

    def identities(self):
        return sorted({v.identity for v in self.violations})

    def summary(self):
        if self.ok:
            return "all coboundary identities hold"
        return "; ".join(v.describe() for v in self.violations)


# Each identity: list of (outer_kind, inner_kind) composites summed.
_IDENTITIES = (
    ("Cob1", (("d2m1", "d2m1"),), (4, -2)),
    ("Cob2", (("d2m1", "d10"), ("d10", "d2m1")), (3, -1)),
    ("Cob3", (("d2m1", "d01"), ("d01", "d2m1"), ("d10", "d10")), (2, 0)),
    ("Cob4", (("d10", "d01"), ("d01", "d10")), (1, 1)),
    ("Cob5", (("d01", "d01"),), (0, 2)),
)


def validate(c):
    """Check the five bidegree components of D^2 = 0 on every block."""
    violations = []
    for p in range(c.pmax + 1):
        for q in range(c.qmax + 1):
            if not c.dim(p, q):
                continue
            for name, terms, (si, sj) in _IDENTITIES:
                if not c.in_box(p + si, q + sj) or not c.dim(p + si, q + sj):
                    continue
                total = RationalMatrix.zeros(c.dim(p + si, q + sj), c.dim(p, q))
                for outer, inner in terms:
                    ii, ij = SHIFT[inner]
                    mid = (p + ii, q + ij)
                    if not c.in_box(*mid):
                        continue
                    total = total + c.op(outer, *mid) @ c.op(inner, p, q)
                if not total.is_zero():
                    violations.append(Violation(name, (p, q), total))
    return ValidationReport(tuple(violations))


# -- cohomology -----------------------------------------------------------------


@dataclass(frozen=True)
class CohomologyResult:
    dim: int
    cocycles: Subspace
    coboundaries: Subspace


def cocycles(c, k):
    key = ("Z", k)
    if key not in c._cache:
        c._cache[key] = kernel_basis(c.total_differential(k))
    return c._cache[key]


def coboundaries(c, k):
    key = ("B", k)
    if key not in c._cache:
        if k <= 0:
            c._cache[key] = Subspace.zero(c.total_dim(k))
        else:
            c._cache[key] = image_basis(c.total_differential(k - 1))
    return c._cache[key]


def cohomology(c, k):
    c.require_valid()
    z, b = cocycles(c, k), coboundaries(c, k)
    return CohomologyResult(z.dim - b.dim, z, b)


def betti_numbers(c):
    return [cohomology(c, k).dim for k in range(c.max_degree + 1)]
