"""JSON documents for complexes and graded vectors.

Rationals are always strings such as "3/4" or "-2"; binary floats are
rejected. A complex document looks like

    {"schema_version": "1",
     "dims": [{"p": 0, "q": 1, "dim": 1}, ...],
     "operators": [{"kind": "d2m1", "p": 0, "q": 1,
                    "entries": [{"row": 0, "col": 0, "value": "1/1"}]}],
     "metadata": {...}}

with optional integer "pmax"/"qmax" fields fixing the bounding box.
"""

import json
from fractions import Fraction

from .complex import KINDS, BigradedComplex, GradedVector
from .errors import MalformedComplex, ParseError
from .linalg import RationalMatrix

SCHEMA_VERSION = "1"


def format_rational(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(v, path):
    if isinstance(v, bool) or isinstance(v, float):
        raise ParseError("rationals must be strings like \"a/b\"", path)
    if isinstance(v, int):
        return Fraction(v)
    if not isinstance(v, str):
        raise ParseError("rationals must be strings like \"a/b\"", path)
    try:
        if any(ch in v for ch in ".eE"):
            raise ValueError
        return Fraction(v.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational: {v!r}", path) from None


def _int(obj, key, path, minimum=None):
    if key not in obj:
        raise ParseError(f"missing field {key!r}", path)
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"field {key!r} must be an integer", f"{path}.{key}")
    if minimum is not None and v < minimum:
        raise ParseError(f"field {key!r} must be >= {minimum}", f"{path}.{key}")
    return v


def _load(text):
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(f"invalid UTF-8: {e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, "$", e.lineno) from None


def _list(doc, key, path):
    v = doc.get(key, [])
    if not isinstance(v, list):
        raise ParseError(f"{key!r} must be a list", f"{path}.{key}")
    return v


def complex_from_document(doc, validate=True):
    if not isinstance(doc, dict):
        raise ParseError("a complex document must be a JSON object")
    version = doc.get("schema_version", SCHEMA_VERSION)
    if str(version) != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema_version {version!r}", "$.schema_version")
    dims = {}
    for i, d in enumerate(_list(doc, "dims", "$")):
        path = f"$.dims[{i}]"
        if not isinstance(d, dict):
            raise ParseError("dims entries must be objects", path)
        p, q = _int(d, "p", path), _int(d, "q", path)
        if (p, q) in dims:
            raise ParseError(f"duplicate dims entry for ({p},{q})", path)
        dims[(p, q)] = _int(d, "dim", path, minimum=0)
    ops = {}
    for i, o in enumerate(_list(doc, "operators", "$")):
        path = f"$.operators[{i}]"
        if not isinstance(o, dict):
            raise ParseError("operator entries must be objects", path)
        kind = o.get("kind")
        if kind not in KINDS:
            raise ParseError(f"kind must be one of {KINDS}", f"{path}.kind")
        p, q = _int(o, "p", path), _int(o, "q", path)
        if (kind, p, q) in ops:
            raise ParseError(f"duplicate operator {kind} at ({p},{q})", path)
        di, dj = {"d01": (0, 1), "d10": (1, 0), "d2m1": (2, -1)}[kind]
        rows, cols = dims.get((p + di, q + dj), 0), dims.get((p, q), 0)
        entries = {}
        for j, e in enumerate(_list(o, "entries", path)):
            epath = f"{path}.entries[{j}]"
            if not isinstance(e, dict):
                raise ParseError("entries must be objects", epath)
            r, c = _int(e, "row", epath, 0), _int(e, "col", epath, 0)
            if r >= rows or c >= cols:
                raise ParseError(f"entry ({r},{c}) outside a {rows}x{cols} block", epath)
            if (r, c) in entries:
                raise ParseError(f"duplicate entry ({r},{c})", epath)
            if "value" not in e:
                raise ParseError("missing field 'value'", epath)
            entries[(r, c)] = parse_rational(e["value"], f"{epath}.value")
        ops[(kind, p, q)] = RationalMatrix(rows, cols, entries)
    keys = [pq for pq, n in dims.items()]
    pmax = doc.get("pmax", max((p for p, _ in keys), default=0))
    qmax = doc.get("qmax", max((q for _, q in keys), default=0))
    for name, v in (("pmax", pmax), ("qmax", qmax)):
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise ParseError(f"{name} must be a nonnegative integer", f"$.{name}")
    meta = doc.get("metadata", {})
    if not isinstance(meta, dict):
        raise ParseError("metadata must be an object", "$.metadata")
    try:
        c = BigradedComplex(dims, ops, pmax=pmax, qmax=qmax, metadata=meta)
    except MalformedComplex as e:
        raise ParseError(str(e), "$") from None
    if validate:
        c.require_valid()
    return c


def parse_complex(text, validate=True):
    """Parse a JSON complex document (str or UTF-8 bytes)."""
    return complex_from_document(_load(text), validate=validate)


def complex_to_document(c):
    dims = [{"p": p, "q": q, "dim": n} for (p, q), n in sorted(c.dims.items()) if n]
    ops = []
    for (kind, p, q), m in sorted(c.operators.items()):
        entries = [
            {"row": i, "col": j, "value": format_rational(v)} for (i, j), v in sorted(m.entries.items())
        ]
        ops.append({"kind": kind, "p": p, "q": q, "entries": entries})
    return {
        "schema_version": SCHEMA_VERSION,
        "pmax": c.pmax,
        "qmax": c.qmax,
        "dims": dims,
        "operators": ops,
        "metadata": dict(c.metadata or {}),
    }


def emit_complex(c, indent=2):
    return json.dumps(complex_to_document(c), indent=indent, default=str)


def parse_vector(text):
    """A graded vector: {"degree": k, "components": {"p,q": ["a/b", ...]}}."""
    doc = _load(text)
    if not isinstance(doc, dict):
        raise ParseError("a vector document must be a JSON object")
    k = _int(doc, "degree", "$")
    comps = doc.get("components", {})
    if not isinstance(comps, dict):
        raise ParseError("components must be an object keyed by \"p,q\"", "$.components")
    out = {}
    for key, vals in comps.items():
        path = f"$.components[{key!r}]"
        try:
            p, q = (int(s) for s in key.split(","))
        except ValueError:
            raise ParseError("component keys look like \"p,q\"", path) from None
        if p + q != k:
            raise ParseError(f"component ({p},{q}) has the wrong total degree", path)
        if not isinstance(vals, list):
            raise ParseError("component values must be a list", path)
        out[(p, q)] = tuple(parse_rational(v, f"{path}[{i}]") for i, v in enumerate(vals))
    try:
        return GradedVector(k, out)
    except MalformedComplex as e:
        raise ParseError(str(e)) from None


def vector_to_document(v):
    return {
        "degree": v.degree,
        "components": {
            f"{p},{q}": [format_rational(x) for x in vals] for (p, q), vals in sorted(v.components.items())
        },
    }
