"""Command-line interface.

Exit codes: 0 success, 2 parse error, 3 validation failure (or any other
rejected input), 4 failed internal cross-check.
"""

import argparse
import json
import sys
from pathlib import Path

from . import structure as st
from .complex import betti_numbers, cohomology, validate
from .corpus import generate_corpus
from .errors import CrossCheckFailure, EngineError, InputError, ParseError, ValidationError
from .geometry import MModel, build_product_complex, build_vertical_complex
from .io import (
    complex_to_document,
    emit_complex,
    format_rational,
    parse_complex,
    parse_vector,
    vector_to_document,
)
from .models import circle_model, interval2_complex, nz_complex, torus_complex
from .obstruction import FirstObstruction, decide_vanishing
from .spectral import page, spectral_sequence

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_ENGINE = 0, 2, 3, 4


def _read(path):
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None


def _load_complex(path, check=True):
    return parse_complex(_read(path), validate=check)


def _matrix(m):
    return [[format_rational(x) for x in row] for row in m.to_dense()]


def _basis(sub):
    return [[format_rational(x) for x in v] for v in sub.vectors()]


def _emit(args, data, text):
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=False))
    else:
        print(text)


# -- subcommands --------------------------------------------------------------


def cmd_validate(args):
    c = _load_complex(args.file, check=False)
    report = validate(c)
    data = {
        "ok": report.ok,
        "violations": [
            {"identity": v.identity, "p": v.bidegree[0], "q": v.bidegree[1], "residual": _matrix(v.residual)}
            for v in report.violations
        ],
    }
    _emit(args, data, "valid" if report.ok else report.summary())
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_cohomology(args):
    c = _load_complex(args.file)
    degrees = [args.degree] if args.degree is not None else list(range(c.max_degree + 1))
    rows = []
    for k in degrees:
        h = cohomology(c, k)
        rows.append({"degree": k, "dim": h.dim, "cocycles": h.cocycles.dim, "coboundaries": h.coboundaries.dim})
    text = "\n".join(f"H^{r['degree']}: dim {r['dim']} (Z {r['cocycles']}, B {r['coboundaries']})" for r in rows)
    _emit(args, {"cohomology": rows}, text)
    return EXIT_OK


def cmd_spectral(args):
    c = _load_complex(args.file)
    ss = spectral_sequence(c)
    if args.infinity:
        entries = []
        for p, q in ss.bidegrees():
            e = ss.e_infinity(p, q)
            entries.append({"p": p, "q": q, "dim": e.dim, "page_index_stabilized": e.page_index_stabilized})
        text = "\n".join(
            f"E_inf^{{{e['p']},{e['q']}}} = {e['dim']} (stable from r = {e['page_index_stabilized']})"
            for e in entries
        )
        _emit(args, {"e_infinity": entries, "betti": betti_numbers(c)}, text)
        return EXIT_OK
    pg = page(c, args.page)
    if pg.composition_defects():
        raise CrossCheckFailure("d_r o d_r != 0")
    dims = [{"p": p, "q": q, "dim": d} for (p, q), d in sorted(pg.dims.items())]
    diffs = [
        {"p": p, "q": q, "target": list(pg.target(p, q)), "rank": m.rank(), "matrix": _matrix(m)}
        for (p, q), m in sorted(pg.differentials.items())
    ]
    lines = [f"page r = {pg.r}"]
    for q in range(c.qmax, -1, -1):
        lines.append(" ".join(f"{pg.dims.get((p, q), 0):3d}" for p in range(c.pmax + 1)) + f"   q={q}")
    lines += [f"d_{pg.r} at ({d['p']},{d['q']}) -> {tuple(d['target'])}: rank {d['rank']}" for d in diffs if d["rank"]]
    _emit(args, {"r": pg.r, "dims": dims, "differentials": diffs}, "\n".join(lines))
    return EXIT_OK


def cmd_diagram(args):
    c = _load_complex(args.file)
    rep = st.diagram(c, args.k, args.q)
    data = {
        "k": rep.k,
        "q": rep.q,
        "p": rep.p,
        "spaces": {n: {"dim": s.dim, "basis": _basis(s)} for n, s in rep.spaces.items()},
        "quotient_dims": rep.quotient_dims,
        "verdicts": rep.verdicts,
        "failures": list(rep.failures),
    }
    lines = [f"diagram k={rep.k} q={rep.q} (p={rep.p})"]
    lines += [f"  {n}: dim {s.dim}" for n, s in rep.spaces.items()]
    lines += [f"  {n}: dim {d}" for n, d in rep.quotient_dims.items()]
    lines += [f"  {n}: {'exact' if ok else 'NOT exact'}" for n, ok in rep.verdicts.items()]
    _emit(args, data, "\n".join(lines))
    return EXIT_OK


def cmd_split(args):
    c = _load_complex(args.file)
    sp = st.splittings(c, args.degree)
    data = {"degree": args.degree, "cohomology": sp.cohomology, "cocycles": sp.cocycles, "coboundaries": sp.coboundaries}
    text = (
        f"H^{args.degree} = {' + '.join(map(str, sp.cohomology))} = {sum(sp.cohomology)}\n"
        f"Z^{args.degree} = {' + '.join(map(str, sp.cocycles))}\n"
        f"B^{args.degree} = {' + '.join(map(str, sp.coboundaries))}"
    )
    _emit(args, data, text)
    return EXIT_OK


def cmd_obstruct(args):
    c = _load_complex(args.file)
    eta = parse_vector(_read(args.cocycle))
    dec = decide_vanishing(c, eta)
    steps = [
        {"p": s.bidegree[0], "q": s.bidegree[1], "class_dim_context": s.class_dim_context, "class_vanishes": s.class_vanishes}
        for s in dec.trace.steps
    ]
    if isinstance(dec.certificate, FirstObstruction):
        cert = {"type": "first_obstruction", "bidegree": list(dec.certificate.bidegree), "representative": vector_to_document(dec.certificate.representative)}
        tail = f"obstruction at {dec.certificate.bidegree}"
    else:
        cert = {"type": "witness", "xi": vector_to_document(dec.certificate.xi)}
        tail = "witness found: D xi = eta"
    lines = [f"stage ({s['p']},{s['q']}): {'clears' if s['class_vanishes'] else 'nonzero'} (dim {s['class_dim_context']})" for s in steps]
    lines.append(f"[eta] {'= 0' if dec.vanishes else '!= 0'}; {tail}")
    _emit(args, {"vanishes": dec.vanishes, "steps": steps, "certificate": cert}, "\n".join(lines))
    return EXIT_OK


def cmd_example(args):
    name = args.name
    if name == "nz":
        c = nz_complex()
    elif name == "torus":
        c = torus_complex()
    elif name == "interval2":
        c = interval2_complex()
    elif name == "vertical":
        c = build_vertical_complex(args.weight)
    else:
        c = build_product_complex(MModel(circle_model()), args.weight)
    print(emit_complex(c))
    return EXIT_OK


def cmd_corpus(args):
    cs = generate_corpus(args.seed, args.count)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for c in cs:
            (out / f"complex_{c.metadata['index']:04d}.json").write_text(emit_complex(c))
        print(f"wrote {len(cs)} complexes to {out}")
    else:
        print(json.dumps([complex_to_document(c) for c in cs], indent=2))
    return EXIT_OK


def build_parser():
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")
    parser = argparse.ArgumentParser(prog="bigcoh", description="Cohomology of bigraded cochain complexes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(name, help_):
        p = sub.add_parser(name, parents=[fmt], help=help_)
        p.add_argument("file", help="complex document (JSON), or - for stdin")
        return p

    with_file("validate", "check the five coboundary identities").set_defaults(func=cmd_validate)
    p = with_file("cohomology", "dimensions of H^k")
    p.add_argument("--degree", type=int)
    p.set_defaults(func=cmd_cohomology)
    p = with_file("spectral", "spectral sequence pages")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--page", type=int)
    g.add_argument("--infinity", action="store_true")
    p.set_defaults(func=cmd_spectral)
    p = with_file("diagram", "the (k, q) diagram and its exactness")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_diagram)
    p = with_file("split", "splitting of H^k, Z^k and B^k by rows")
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_split)
    p = with_file("obstruct", "decide whether a cocycle is a coboundary")
    p.add_argument("--cocycle", required=True, help="graded vector document (JSON)")
    p.set_defaults(func=cmd_obstruct)
    p = sub.add_parser("example", help="emit a named complex")
    p.add_argument("name", choices=("nz", "torus", "interval2", "vertical", "product"))
    p.add_argument("--weight", type=int, default=0, help="weight cutoff for vertical/product")
    p.set_defaults(func=cmd_example)
    p = sub.add_parser("corpus", help="emit generated complexes")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--out", help="directory to write one file per complex")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as e:
        print(f"validation failed:\n{e}", file=sys.stderr)
        return EXIT_INVALID
    except InputError as e:
        print(f"rejected input: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INVALID
    except EngineError as e:
        print(f"internal cross-check failed: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ENGINE


if __name__ == "__main__":
    sys.exit(main())
