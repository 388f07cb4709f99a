"""Small named complexes and the tensor constructions used to build more."""

from dataclasses import dataclass

from .complex import BigradedComplex
from .errors import MalformedComplex
from .linalg import RationalMatrix, kron


@dataclass(frozen=True)
class CochainComplex:
    """A single-graded complex in degrees 0..len(dims)-1."""

    dims: tuple
    diffs: tuple

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        diffs = tuple(
            d if isinstance(d, RationalMatrix) else RationalMatrix.from_rows(d, dims[i])
            for i, d in enumerate(self.diffs)
        )
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "diffs", diffs)
        if len(diffs) != max(len(dims) - 1, 0):
            raise MalformedComplex("need one differential between consecutive degrees")
        for i, d in enumerate(diffs):
            if d.shape != (dims[i + 1], dims[i]):
                raise MalformedComplex(f"differential {i} has shape {d.shape}")
        for i in range(len(diffs) - 1):
            if not (diffs[i + 1] @ diffs[i]).is_zero():
                raise MalformedComplex(f"d^2 != 0 at degree {i}")

    @property
    def top(self):
        return len(self.dims) - 1

    def d(self, i):
        if 0 <= i < len(self.diffs):
            return self.diffs[i]
        src = self.dims[i] if 0 <= i <= self.top else 0
        tgt = self.dims[i + 1] if 0 <= i + 1 <= self.top else 0
        return RationalMatrix.zeros(tgt, src)

    def betti(self):
        out = []
        for i, n in enumerate(self.dims):
            rk_out = self.d(i).rank() if i < len(self.diffs) else 0
            rk_in = self.d(i - 1).rank() if i >= 1 else 0
            out.append(n - rk_out - rk_in)
        return out


def point_model():
    return CochainComplex((1,), ())


def circle_model():
    """One 0-cochain, one 1-cochain, zero differential."""
    return CochainComplex((1, 1), (RationalMatrix.zeros(1, 1),))


def interval_model():
    """Two vertices and one edge: d(v0) = -e, d(v1) = e."""
    return CochainComplex((2, 1), (RationalMatrix.from_rows([[-1, 1]]),))


def _sign(n):
    return 1 if n % 2 == 0 else -1


def tensor_double_complex(a, b, metadata=None):
    """C^{p,q} = A^p (x) B^q with D10 = dA (x) 1 and D01 = (-1)^p 1 (x) dB."""
    dims = {}
    ops = {}
    for p, da in enumerate(a.dims):
        for q, db in enumerate(b.dims):
            dims[(p, q)] = da * db
    for p, da in enumerate(a.dims):
        for q, db in enumerate(b.dims):
            if p < a.top:
                ops[("d10", p, q)] = kron(a.d(p), RationalMatrix.identity(db))
            if q < b.top:
                ops[("d01", p, q)] = kron(RationalMatrix.identity(da), b.d(q)).scale(_sign(p))
    return BigradedComplex(dims, ops, pmax=a.top, qmax=b.top, metadata=metadata)


def regraded_tensor(a, b, metadata=None):
    """A complex with D01 = 0 from A (x) B regraded by p = i + 2j, q = top(B) - j.

    dA becomes D10 and the sign-twisted dB becomes D2m1.
    """
    jtop = b.top
    dims = {}
    ops = {}
    for i, da in enumerate(a.dims):
        for j, db in enumerate(b.dims):
            dims[(i + 2 * j, jtop - j)] = da * db
    for i, da in enumerate(a.dims):
        for j, db in enumerate(b.dims):
            p, q = i + 2 * j, jtop - j
            if i < a.top:
                ops[("d10", p, q)] = kron(a.d(i), RationalMatrix.identity(db))
            if j < b.top:
                ops[("d2m1", p, q)] = kron(RationalMatrix.identity(da), b.d(j)).scale(_sign(i))
    return BigradedComplex(dims, ops, pmax=a.top + 2 * jtop, qmax=jtop, metadata=metadata)


def nz_complex():
    """C^{0,1} = Q v, C^{2,0} = Q w and D2m1 v = w; nothing else."""
    return BigradedComplex(
        {(0, 1): 1, (2, 0): 1},
        {("d2m1", 0, 1): RationalMatrix.from_rows([[1]])},
        pmax=2,
        qmax=1,
        metadata={"name": "nz"},
    )


def torus_complex():
    """Zero-differential model with dims 1 at (0,0), (1,0), (0,1), (1,1)."""
    return BigradedComplex(
        {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1}, {}, pmax=1, qmax=1, metadata={"name": "torus"}
    )


def interval2_complex():
    return tensor_double_complex(interval_model(), interval_model(), metadata={"name": "interval2"})
