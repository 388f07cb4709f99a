"""Exact linear algebra over the rationals.

Matrices are sparse (one ``{col: value}`` dict per row) and immutable once
built.  Subspaces are kept in reduced row-echelon form so that two subspaces
are equal exactly when their basis matrices are equal.

Floats are refused on entry: every downstream answer is a rank, and a float
rank is not an answer.
"""

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC

from .errors import InvalidDimensions

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_rational(x):
    """Coerce ints, Fractions and ``"a/b"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"refusing non-exact scalar {x!r} of type {type(x).__name__}")


def _sparse(vec, n=None):
    """Sequence or mapping -> {index: Fraction} without zeros."""
    if isinstance(vec, dict):
        out = {}
        for j, v in vec.items():
            v = as_rational(v)
            if v:
                out[j] = v
        return out
    if n is not None and len(vec) != n:
        raise InvalidDimensions(f"vector of length {len(vec)}, expected {n}")
    return {j: as_rational(v) for j, v in enumerate(vec) if v}


def _dense(row, n):
    out = [_ZERO] * n
    for j, v in row.items():
        out[j] = v
    return tuple(out)


def _axpy(target, factor, source):
    """target -= factor * source, in place, dropping zeros."""
    for j, v in source.items():
        nv = target.get(j, _ZERO) - factor * v
        if nv:
            target[j] = nv
        else:
            target.pop(j, None)


def _rref_rows(rows, ncols):
    """Reduce a list of sparse rows.

    Returns ``(reduced_rows, pivots)`` with one row per pivot, pivots
    increasing.  Among rows eligible for a pivot column the shortest one is
    taken, which keeps fill-in down without changing the (unique) result.
    """
    remaining = [dict(r) for r in rows if r]
    reduced = []
    pivots = []
    for c in range(ncols):
        if not remaining:
            break
        best = None
        for i, r in enumerate(remaining):
            if c in r and (best is None or len(r) < len(remaining[best])):
                best = i
        if best is None:
            continue
        prow = remaining.pop(best)
        inv = _ONE / prow[c]
        if inv != _ONE:
            prow = {j: v * inv for j, v in prow.items()}
        for r in remaining:
            f = r.get(c)
            if f:
                _axpy(r, f, prow)
        for r in reduced:
            f = r.get(c)
            if f:
                _axpy(r, f, prow)
        remaining = [r for r in remaining if r]
        reduced.append(prow)
        pivots.append(c)
    order = sorted(range(len(pivots)), key=pivots.__getitem__)
    return [reduced[i] for i in order], [pivots[i] for i in order]


class RationalMatrix:
    """Immutable sparse matrix with Fraction entries."""

    __slots__ = ("rows", "cols", "_rows", "_hash")

    def __init__(self, rows, cols, entries=None):
        if rows < 0 or cols < 0:
            raise InvalidDimensions(f"negative shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        data = [dict() for _ in range(rows)]
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise InvalidDimensions(f"entry ({i},{j}) outside {rows}x{cols}")
            v = as_rational(v)
            if v:
                data[i][j] = v
        self._rows = tuple(data)
        self._hash = None

    @classmethod
    def _wrap(cls, rows, cols, row_dicts):
        m = cls.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._rows = tuple(row_dicts)
        m._hash = None
        return m

    @classmethod
    def from_rows(cls, dense, cols=None):
        dense = [list(r) for r in dense]
        if cols is None:
            cols = len(dense[0]) if dense else 0
        rows = [_sparse(r, cols) for r in dense]
        return cls._wrap(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns, rows):
        cols = [_sparse(c, rows) for c in columns]
        data = [dict() for _ in range(rows)]
        for j, col in enumerate(cols):
            for i, v in col.items():
                data[i][j] = v
        return cls._wrap(rows, len(cols), data)

    @classmethod
    def zeros(cls, rows, cols):
        return cls._wrap(rows, cols, [dict() for _ in range(rows)])

    @classmethod
    def identity(cls, n):
        return cls._wrap(n, n, [{i: _ONE} for i in range(n)])

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def entries(self):
        return {(i, j): v for i, r in enumerate(self._rows) for j, v in r.items()}

    @property
    def nnz(self):
        return sum(len(r) for r in self._rows)

    def row(self, i):
        return dict(self._rows[i])

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i].get(j, _ZERO)

    def to_dense(self):
        return [list(_dense(r, self.cols)) for r in self._rows]

    def is_zero(self):
        return not any(self._rows)

    def transpose(self):
        data = [dict() for _ in range(self.cols)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                data[j][i] = v
        return RationalMatrix._wrap(self.cols, self.rows, data)

    @property
    def T(self):
        return self.transpose()

    def apply(self, vec):
        """Matrix times column vector; returns a tuple of Fractions."""
        x = _sparse(vec, self.cols)
        out = []
        for r in self._rows:
            s = _ZERO
            if len(r) < len(x):
                for j, v in r.items():
                    xv = x.get(j)
                    if xv:
                        s += v * xv
            else:
                for j, xv in x.items():
                    v = r.get(j)
                    if v:
                        s += v * xv
            out.append(s)
        return tuple(out)

    def __matmul__(self, other):
        if not isinstance(other, RationalMatrix):
            return self.apply(other)
        if self.cols != other.rows:
            raise InvalidDimensions(f"cannot multiply {self.shape} by {other.shape}")
        brows = other._rows
        data = []
        for r in self._rows:
            acc = {}
            for k, v in r.items():
                for j, w in brows[k].items():
                    acc[j] = acc.get(j, _ZERO) + v * w
            data.append({j: v for j, v in acc.items() if v})
        return RationalMatrix._wrap(self.rows, other.cols, data)

    def __add__(self, other):
        if self.shape != other.shape:
            raise InvalidDimensions(f"cannot add {self.shape} and {other.shape}")
        data = []
        for a, b in zip(self._rows, other._rows):
            r = dict(a)
            _axpy(r, -_ONE, b)
            data.append(r)
        return RationalMatrix._wrap(self.rows, self.cols, data)

    def __neg__(self):
        return RationalMatrix._wrap(
            self.rows, self.cols, [{j: -v for j, v in r.items()} for r in self._rows]
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_rational(c)
        if not c:
            return RationalMatrix.zeros(self.rows, self.cols)
        return RationalMatrix._wrap(
            self.rows, self.cols, [{j: c * v for j, v in r.items()} for r in self._rows]
        )

    def submatrix(self, row_idx, col_idx):
        col_pos = {j: n for n, j in enumerate(col_idx)}
        data = []
        for i in row_idx:
            data.append({col_pos[j]: v for j, v in self._rows[i].items() if j in col_pos})
        return RationalMatrix._wrap(len(row_idx), len(col_idx), data)

    def rank(self):
        return len(_rref_rows(self._rows, self.cols)[1])

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (self.rows, self.cols, tuple(frozenset(r.items()) for r in self._rows))
            )
        return self._hash

    def __repr__(self):
        if self.rows * self.cols <= 36:
            body = "; ".join(" ".join(str(v) for v in _dense(r, self.cols)) for r in self._rows)
            return f"RationalMatrix({self.rows}x{self.cols}: [{body}])"
        return f"RationalMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


def hstack(blocks, rows=None):
    if not blocks:
        return RationalMatrix.zeros(rows or 0, 0)
    rows = blocks[0].rows
    data = [dict() for _ in range(rows)]
    off = 0
    for b in blocks:
        if b.rows != rows:
            raise InvalidDimensions("hstack row mismatch")
        for i, r in enumerate(b._rows):
            for j, v in r.items():
                data[i][off + j] = v
        off += b.cols
    return RationalMatrix._wrap(rows, off, data)


def vstack(blocks, cols=None):
    if not blocks:
        return RationalMatrix.zeros(0, cols or 0)
    cols = blocks[0].cols
    data = []
    for b in blocks:
        if b.cols != cols:
            raise InvalidDimensions("vstack column mismatch")
        data.extend(dict(r) for r in b._rows)
    return RationalMatrix._wrap(len(data), cols, data)


def block_matrix(row_sizes, col_sizes, blocks):
    """Assemble from ``{(bi, bj): RationalMatrix}``; missing blocks are zero."""
    roff = [0]
    for s in row_sizes:
        roff.append(roff[-1] + s)
    coff = [0]
    for s in col_sizes:
        coff.append(coff[-1] + s)
    data = [dict() for _ in range(roff[-1])]
    for (bi, bj), m in blocks.items():
        if m.shape != (row_sizes[bi], col_sizes[bj]):
            raise InvalidDimensions(
                f"block ({bi},{bj}) has shape {m.shape}, "
                f"expected {(row_sizes[bi], col_sizes[bj])}"
            )
        for i, r in enumerate(m._rows):
            tgt = data[roff[bi] + i]
            for j, v in r.items():
                nv = tgt.get(coff[bj] + j, _ZERO) + v
                if nv:
                    tgt[coff[bj] + j] = nv
                else:
                    tgt.pop(coff[bj] + j, None)
    return RationalMatrix._wrap(roff[-1], coff[-1], data)


def kron(a, b):
    data = []
    for ra in a._rows:
        for rb in b._rows:
            row = {}
            for ja, va in ra.items():
                for jb, vb in rb.items():
                    row[ja * b.cols + jb] = va * vb
            data.append(row)
    return RationalMatrix._wrap(a.rows * b.rows, a.cols * b.cols, data)


def rref(m):
    """Reduced row-echelon form (same shape, zero rows last) and pivot columns."""
    rows, pivots = _rref_rows(m._rows, m.cols)
    rows = rows + [dict() for _ in range(m.rows - len(rows))]
    return RationalMatrix._wrap(m.rows, m.cols, rows), pivots


def _kernel_rows(row_dicts, ncols):
    reduced, pivots = _rref_rows(row_dicts, ncols)
    pivset = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = {f: _ONE}
        for r, c in zip(reduced, pivots):
            x = r.get(f)
            if x:
                v[c] = -x
        out.append(v)
    return out


class Subspace:
    """A subspace of Q^n with its canonical (RREF) basis.

    ``basis`` is a RationalMatrix whose rows are the basis vectors.
    """

    __slots__ = ("ambient_dim", "_rows", "_pivots", "_hash", "_ann")

    def __init__(self, ambient_dim, vectors=()):
        rows = [_sparse(v, ambient_dim) for v in vectors]
        reduced, pivots = _rref_rows(rows, ambient_dim)
        self._set(ambient_dim, reduced, pivots)

    def _set(self, n, rows, pivots):
        self.ambient_dim = n
        self._rows = tuple(rows)
        self._pivots = tuple(pivots)
        self._hash = None
        self._ann = None

    @classmethod
    def _from_rows(cls, n, rows):
        s = cls.__new__(cls)
        reduced, pivots = _rref_rows(rows, n)
        s._set(n, reduced, pivots)
        return s

    @classmethod
    def zero(cls, n):
        return cls._from_rows(n, [])

    @classmethod
    def full(cls, n):
        s = cls.__new__(cls)
        s._set(n, [{i: _ONE} for i in range(n)], list(range(n)))
        return s

    @classmethod
    def coordinate(cls, n, indices):
        """Span of the standard basis vectors at ``indices``."""
        idx = sorted(set(indices))
        s = cls.__new__(cls)
        s._set(n, [{i: _ONE} for i in idx], idx)
        return s

    @classmethod
    def span(cls, vectors, n):
        return cls(n, vectors)

    @property
    def dim(self):
        return len(self._rows)

    @property
    def basis(self):
        return RationalMatrix._wrap(len(self._rows), self.ambient_dim, [dict(r) for r in self._rows])

    @property
    def pivots(self):
        return self._pivots

    def vectors(self):
        return [_dense(r, self.ambient_dim) for r in self._rows]

    def sparse_vectors(self):
        return [dict(r) for r in self._rows]

    def is_zero(self):
        return not self._rows

    def _residual(self, x):
        for r, c in zip(self._rows, self._pivots):
            f = x.get(c)
            if f:
                _axpy(x, f, r)
        return x

    def __contains__(self, vec):
        x = _sparse(vec, None if isinstance(vec, dict) else self.ambient_dim)
        return not self._residual(x)

    def coordinates(self, vec):
        """Coefficients of ``vec`` in the canonical basis, or None if outside."""
        x = _sparse(vec, None if isinstance(vec, dict) else self.ambient_dim)
        coeffs = tuple(x.get(c, _ZERO) for c in self._pivots)
        if self._residual(x):
            return None
        return coeffs

    def _check(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise InvalidDimensions(
                f"subspaces of Q^{self.ambient_dim} and Q^{other.ambient_dim}"
            )

    def contains(self, other):
        self._check(other)
        if other.dim > self.dim:
            return False
        return all(not self._residual(dict(r)) for r in other._rows)

    def __le__(self, other):
        return other.contains(self)

    def __ge__(self, other):
        return self.contains(other)

    def __add__(self, other):
        self._check(other)
        if other.dim == 0:
            return self
        if self.dim == 0:
            return other
        return Subspace._from_rows(self.ambient_dim, list(self._rows) + list(other._rows))

    def annihilator(self):
        """Matrix whose rows span {y : y . b = 0 for every b in self}."""
        if self._ann is None:
            rows = _kernel_rows(self._rows, self.ambient_dim)
            self._ann = RationalMatrix._wrap(len(rows), self.ambient_dim, rows)
        return self._ann

    def __and__(self, other):
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        if self.contains(other):
            return other
        if other.contains(self):
            return self
        a, b = self.annihilator(), other.annihilator()
        return Subspace._from_rows(
            self.ambient_dim, _kernel_rows(list(a._rows) + list(b._rows), self.ambient_dim)
        )

    def image(self, m):
        """Image of this subspace under the matrix ``m``."""
        if m.cols != self.ambient_dim:
            raise InvalidDimensions(f"map with {m.cols} columns on Q^{self.ambient_dim}")
        rows = [_sparse(m.apply(r)) for r in self._rows]
        return Subspace._from_rows(m.rows, rows)

    def restrict(self, indices):
        """Project onto the listed coordinates (in that order)."""
        pos = {j: n for n, j in enumerate(indices)}
        rows = [{pos[j]: v for j, v in r.items() if j in pos} for r in self._rows]
        return Subspace._from_rows(len(indices), rows)

    def embed(self, n, indices):
        """Inverse of ``restrict``: place coordinates into Q^n at ``indices``."""
        if len(indices) != self.ambient_dim:
            raise InvalidDimensions("embedding index list has the wrong length")
        rows = [{indices[j]: v for j, v in r.items()} for r in self._rows]
        return Subspace._from_rows(n, rows)

    def complement_in(self, sup):
        """Vectors of ``sup`` extending this basis to a basis of ``sup``."""
        self._check(sup)
        return self.extend_with(sup.vectors())

    def extend_with(self, candidates):
        """Greedily pick candidates that stay independent modulo this subspace."""
        rows = [dict(r) for r in self._rows]
        piv = list(self._pivots)
        chosen = []
        for v in candidates:
            x = _sparse(v, self.ambient_dim)
            for r, c in zip(rows, piv):
                f = x.get(c)
                if f:
                    _axpy(x, f, r)
            if not x:
                continue
            c = min(x)
            inv = _ONE / x[c]
            xn = {j: w * inv for j, w in x.items()}
            for r in rows:
                f = r.get(c)
                if f:
                    _axpy(r, f, xn)
            rows.append(xn)
            piv.append(c)
            chosen.append(tuple(as_rational(w) for w in v))
        return chosen

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ambient_dim, tuple(frozenset(r.items()) for r in self._rows)))
        return self._hash

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def kernel_basis(m):
    return Subspace._from_rows(m.cols, _kernel_rows(m._rows, m.cols))


def image_basis(m):
    return Subspace._from_rows(m.rows, list(m.transpose()._rows))


def preimage_basis(m, target):
    """{x : m x in target}."""
    if target.ambient_dim != m.rows:
        raise InvalidDimensions(
            f"target lives in Q^{target.ambient_dim} but the map lands in Q^{m.rows}"
        )
    if target.dim == m.rows:
        return Subspace.full(m.cols)
    return kernel_basis(target.annihilator() @ m)


@dataclass(frozen=True)
class SubspaceOps:
    sum: Subspace
    intersection: Subspace
    a_contains_b: bool
    quotient_dim_of_a_by_intersection: int


def subspace_ops(a, b):
    if a.ambient_dim != b.ambient_dim:
        raise InvalidDimensions(f"subspaces of Q^{a.ambient_dim} and Q^{b.ambient_dim}")
    inter = a & b
    return SubspaceOps(a + b, inter, a.contains(b), a.dim - inter.dim)


def solve(m, b):
    """One solution of ``m x = b`` as a tuple, or None when inconsistent."""
    rhs = _sparse(b, m.rows)
    rows = []
    for i, r in enumerate(m._rows):
        row = dict(r)
        if i in rhs:
            row[m.cols] = rhs[i]
        rows.append(row)
    reduced, pivots = _rref_rows(rows, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [_ZERO] * m.cols
    for r, c in zip(reduced, pivots):
        x[c] = r.get(m.cols, _ZERO)
    return tuple(x)


def coordinates_in(generators, vectors, n):
    """Express each vector in terms of linearly independent ``generators``.

    Returns a list of coefficient tuples (None for vectors outside the span).
    """
    g = len(generators)
    rows = []
    for i, v in enumerate(generators):
        row = _sparse(v, n)
        row[n + i] = _ONE
        rows.append(row)
    reduced, pivots = _rref_rows(rows, n + g)
    if len(pivots) != g or (pivots and pivots[-1] >= n):
        raise InvalidDimensions("generators are linearly dependent")
    # reduced row i = sum_j T[i][j] * generator_j
    transform = [{j - n: v for j, v in r.items() if j >= n} for r in reduced]
    echelon = [{j: v for j, v in r.items() if j < n} for r in reduced]
    out = []
    for vec in vectors:
        x = _sparse(vec, n)
        d = [x.get(c, _ZERO) for c in pivots]
        for r, c in zip(echelon, pivots):
            f = x.get(c)
            if f:
                _axpy(x, f, r)
        if x:
            out.append(None)
            continue
        coeffs = [_ZERO] * g
        for di, t in zip(d, transform):
            if di:
                for j, v in t.items():
                    coeffs[j] += di * v
        out.append(tuple(coeffs))
    return out
