"""Spectral sequence of the column filtration F^p C = sum_{i >= p} C^{i,j}.

Pages are quotients of subspaces of C^{p+q}; the quotient basis of
E_r^{p,q} is obtained by extending the canonical basis of the denominator
with cycle representatives taken from Z_r^{p,q}, so the induced d_r can be
evaluated on honest elements of the complex.
"""

from dataclasses import dataclass, field

from .complex import cocycles, coboundaries
from .errors import CrossCheckFailure, MismatchAtInfinity
from .linalg import RationalMatrix, Subspace, coordinates_in, preimage_basis


@dataclass(frozen=True)
class FiltrationSlice:
    p: int
    k: int
    space: Subspace


@dataclass(frozen=True)
class ZB:
    Z: Subspace
    B: Subspace


@dataclass(frozen=True)
class SpectralPage:
    r: int
    dims: dict
    differentials: dict = field(default_factory=dict)

    def target(self, p, q):
        return (p + self.r, q + 1 - self.r)

    def composition_defects(self):
        """Bidegrees where d_r o d_r is not zero."""
        bad = []
        for (p, q), d in self.differentials.items():
            nxt = self.differentials.get(self.target(p, q))
            if nxt is None or d.rows == 0:
                continue
            if not (nxt @ d).is_zero():
                bad.append((p, q))
        return bad

    def total(self, k):
        return sum(d for (p, q), d in self.dims.items() if p + q == k)


@dataclass(frozen=True)
class EInfinity:
    dim: int
    page_index_stabilized: int


@dataclass
class _Entry:
    dim: int
    den: Subspace
    reps: list


class SpectralSequence:
    """Lazily evaluated pages of one complex, with a write-once cache."""

    def __init__(self, c):
        self.c = c.require_valid()
        self._zb = {}
        self._entries = {}
        self._diffs = {}

    def filtration(self, p, k):
        return FiltrationSlice(p, k, self.c.filtration(p, k))

    def zr_br(self, p, q, r):
        key = (p, q, r)
        if key not in self._zb:
            c = self.c
            k = p + q
            fp = c.filtration(p, k)
            z = fp & preimage_basis(c.total_differential(k), c.filtration(p + r, k + 1))
            src = c.filtration(p - r + 1, k - 1)
            b = fp & src.image(c.total_differential(k - 1))
            self._zb[key] = ZB(z, b)
        return self._zb[key]

    def entry(self, p, q, r):
        key = (p, q, r)
        if key not in self._entries:
            zb = self.zr_br(p, q, r)
            f1 = self.c.filtration(p + 1, p + q)
            num = zb.Z + f1
            den = zb.B + f1
            reps = den.extend_with(zb.Z.vectors())
            self._entries[key] = _Entry(num.dim - den.dim, den, reps)
        return self._entries[key]

    def dim(self, p, q, r):
        return self.entry(p, q, r).dim

    def differential(self, p, q, r):
        """Matrix of d_r : E_r^{p,q} -> E_r^{p+r, q+1-r} in the chosen quotient bases."""
        key = (p, q, r)
        if key not in self._diffs:
            src = self.entry(p, q, r)
            tp, tq = p + r, q + 1 - r
            tgt = self.entry(tp, tq, r)
            k = p + q
            n1 = self.c.total_dim(k + 1)
            images = [self.c.total_differential(k).apply(x) for x in src.reps]
            cols = []
            if tgt.dim and images:
                gens = tgt.den.vectors() + list(tgt.reps)
                nden = tgt.den.dim
                for coeffs in coordinates_in(gens, images, n1):
                    if coeffs is None:
                        raise CrossCheckFailure(
                            f"d_{r} image from ({p},{q}) escapes the target page"
                        )
                    cols.append(coeffs[nden:])
            if cols:
                self._diffs[key] = RationalMatrix.from_columns(cols, tgt.dim)
            else:
                self._diffs[key] = RationalMatrix.zeros(tgt.dim, src.dim)
        return self._diffs[key]

    def bidegrees(self):
        return [(p, q) for p in range(self.c.pmax + 1) for q in range(self.c.qmax + 1)]

    def page(self, r, with_differentials=True):
        dims = {pq: self.dim(*pq, r) for pq in self.bidegrees()}
        diffs = {}
        if with_differentials:
            for pq in self.bidegrees():
                if dims[pq]:
                    diffs[pq] = self.differential(*pq, r)
        return SpectralPage(r, dims, diffs)

    @staticmethod
    def stabilization_index(p, q):
        return max(p + 1, q + 2)

    def e_infinity_direct(self, p, q):
        c = self.c
        k = p + q
        fp = c.filtration(p, k)
        f1 = c.filtration(p + 1, k)
        num = (cocycles(c, k) & fp) + f1
        den = (coboundaries(c, k) & fp) + f1
        return num.dim - den.dim

    def e_infinity(self, p, q):
        n = self.stabilization_index(p, q)
        via_pages = self.dim(p, q, n)
        direct = self.e_infinity_direct(p, q)
        if via_pages != direct:
            raise MismatchAtInfinity(
                f"E_{n}^{{{p},{q}}} has dim {via_pages} but the direct formula gives {direct}"
            )
        return EInfinity(direct, n)

    @property
    def last_page(self):
        return max((self.stabilization_index(p, q) for p, q in self.bidegrees()), default=1)


def spectral_sequence(c):
    if "spectral" not in c._cache:
        c._cache["spectral"] = SpectralSequence(c)
    return c._cache["spectral"]


def filtration_slice(c, p, k):
    return spectral_sequence(c).filtration(p, k)


def zr_br(c, p, q, r):
    if r < 0:
        raise ValueError("page index must be nonnegative")
    return spectral_sequence(c).zr_br(p, q, r)


def page(c, r, with_differentials=True):
    if r < 0:
        raise ValueError("page index must be nonnegative")
    return spectral_sequence(c).page(r, with_differentials)


def e_infinity(c, p, q):
    return spectral_sequence(c).e_infinity(p, q)


def e_infinity_table(c):
    ss = spectral_sequence(c)
    return {pq: ss.e_infinity(*pq).dim for pq in ss.bidegrees()}
