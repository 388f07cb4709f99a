"""Deterministic random corpus of valid bigraded complexes.

Four classes are mixed:

a. tensor products of two random single-graded complexes (D2m1 = 0);
b. regraded tensor products with D01 = 0;
c. double complexes conjugated by g = 1 + g1, where g1 has bidegree (1,-1)
   and leaves a single row q = r; since g1^2 = 0 the conjugate has no
   component beyond (2,-1), and D2m1 is required to be nonzero;
d. outputs of the geometry module at small weight cutoffs.

Single-graded factors are built in a normal form (harmonic generators plus
cancelling pairs) and then conjugated by integer unimodular matrices.
"""

import random

from .complex import BigradedComplex, validate
from .errors import GenerationExhausted
from .geometry import MModel, build_product_complex, build_vertical_complex
from .linalg import RationalMatrix
from .models import (
    CochainComplex,
    circle_model,
    interval_model,
    regraded_tensor,
    tensor_double_complex,
)

CLASSES = ("a", "b", "c", "d")
MAX_ATTEMPTS = 200


def _unimodular(rng, n, steps=None):
    """A random integer matrix of determinant +-1 and its inverse."""
    g = [[int(i == j) for j in range(n)] for i in range(n)]
    inv = [row[:] for row in g]
    for _ in range(steps if steps is not None else 2 * n):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        t = rng.choice((-1, 1, 2))
        # row_i += t row_j on g; the inverse gets col_j -= t col_i
        for col in range(n):
            g[i][col] += t * g[j][col]
        for row in range(n):
            inv[row][j] -= t * inv[row][i]
    return RationalMatrix.from_rows(g, n), RationalMatrix.from_rows(inv, n)


def random_cochain_complex(rng, length=None, max_block=2):
    """A random complex in degrees 0..length-1 with small dimensions."""
    length = length or rng.choice((2, 2, 3))
    harm = [rng.randint(0, 1) for _ in range(length)]
    pairs = [rng.randint(0, max_block) for _ in range(length - 1)]
    dims = []
    for i in range(length):
        into = pairs[i - 1] if i > 0 else 0
        out = pairs[i] if i < length - 1 else 0
        dims.append(harm[i] + into + out)
    if not any(dims):
        dims[0] = 1
    # basis of degree i: harmonic, then targets of pairs from i-1, then sources of pairs to i+1
    diffs = []
    for i in range(length - 1):
        entries = {}
        src_off = harm[i] + (pairs[i - 1] if i > 0 else 0)
        tgt_off = harm[i + 1]
        for t in range(pairs[i]):
            entries[(tgt_off + t, src_off + t)] = 1
        diffs.append(RationalMatrix(dims[i + 1], dims[i], entries))
    gs = [_unimodular(rng, n) for n in dims]
    conj = [gs[i + 1][0] @ diffs[i] @ gs[i][1] for i in range(length - 1)]
    return CochainComplex(tuple(dims), tuple(conj))


def _class_a(rng):
    a = random_cochain_complex(rng)
    b = random_cochain_complex(rng)
    return tensor_double_complex(a, b)


def _class_b(rng):
    a = random_cochain_complex(rng)
    b = random_cochain_complex(rng, length=rng.choice((2, 3)))
    return regraded_tensor(a, b)


def _get(c, kind, p, q):
    return c.op(kind, p, q)


def conjugate_by_row_shift(c, r, g1):
    """g D g^{-1} for g = 1 + g1 with g1: C^{p,r} -> C^{p+1,r-1} given per p."""

    def G(p, q):
        if q == r and (p, q) in g1:
            return g1[(p, q)]
        return RationalMatrix.zeros(c.dim(p + 1, q - 1), c.dim(p, q))

    ops = {}
    for p in range(c.pmax + 1):
        for q in range(c.qmax + 1):
            if c.in_box(p, q + 1):
                ops[("d01", p, q)] = _get(c, "d01", p, q)
            if c.in_box(p + 1, q):
                m = _get(c, "d10", p, q)
                m = m + G(p, q + 1) @ _get(c, "d01", p, q) - _get(c, "d01", p + 1, q - 1) @ G(p, q)
                ops[("d10", p, q)] = m
            if q >= 1 and c.in_box(p + 2, q - 1):
                m = _get(c, "d2m1", p, q)
                m = m + G(p + 1, q) @ _get(c, "d10", p, q) - _get(c, "d10", p + 1, q - 1) @ G(p, q)
                m = m - G(p + 1, q) @ _get(c, "d01", p + 1, q - 1) @ G(p, q)
                ops[("d2m1", p, q)] = m
    return BigradedComplex(c.dims, ops, pmax=c.pmax, qmax=c.qmax, metadata=dict(c.metadata))


def _class_c(rng):
    for _ in range(MAX_ATTEMPTS):
        base = _class_a(rng)
        if base.qmax < 1 or base.pmax < 1:
            continue
        r = rng.randint(1, base.qmax)
        g1 = {}
        for p in range(base.pmax):
            rows, cols = base.dim(p + 1, r - 1), base.dim(p, r)
            if rows and cols:
                g1[(p, r)] = RationalMatrix(
                    rows,
                    cols,
                    {(i, j): rng.choice((-1, 1, 2)) for i in range(rows) for j in range(cols) if rng.random() < 0.6},
                )
        c = conjugate_by_row_shift(base, r, g1)
        if c.is_family_zero("d2m1") or not validate(c).ok:
            continue
        return c
    raise GenerationExhausted("no class-c complex with nonzero d2m1 found")


_GEOMETRY = (
    lambda: build_vertical_complex(0),
    lambda: build_vertical_complex(1),
    lambda: build_product_complex(MModel(circle_model()), 0),
    lambda: build_product_complex(MModel(interval_model()), 0),
    lambda: build_product_complex(MModel(CochainComplex((1,), ())), 1),
)


def _class_d(rng):
    return _GEOMETRY[rng.randrange(len(_GEOMETRY))]()


_BUILDERS = {"a": _class_a, "b": _class_b, "c": _class_c, "d": _class_d}
_WEIGHTS = {"a": 35, "b": 25, "c": 30, "d": 10}


def corpus_class_sequence(count):
    """Class labels in a fixed interleaved order with the target proportions."""
    seq = []
    credit = {k: 0 for k in CLASSES}
    total = sum(_WEIGHTS.values())
    for _ in range(count):
        for k in CLASSES:
            credit[k] += _WEIGHTS[k]
        best = max(CLASSES, key=lambda k: credit[k])
        credit[best] -= total
        seq.append(best)
    return seq


def generate_corpus(seed, count):
    if count < 1:
        raise ValueError("count must be positive")
    rng = random.Random(seed)
    out = []
    for i, cls in enumerate(corpus_class_sequence(count)):
        c = _BUILDERS[cls](rng)
        meta = dict(c.metadata)
        meta.update({"class": cls, "seed": seed, "index": i})
        c = BigradedComplex(c.dims, c.operators, pmax=c.pmax, qmax=c.qmax, metadata=meta)
        c.require_valid()
        out.append(c)
    return out
