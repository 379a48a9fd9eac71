"""Command-line entry point: ``mouldlab eval|table|encode|decode|dims|relations|verify``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import List, Optional, Sequence


EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _q(x) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# rendering of evaluation results

def render_value(value, fmt: str, name: str = "M", alphabet: str = "xy") -> str:
    from .dictionary import Vimo
    from .dsl import Report
    from .mould import Mould
    from .ncpoly import NCPolynomial
    from .render import render_mould, render_nc, render_vimo

    if isinstance(value, Mould):
        return render_mould(value, name, fmt)
    if isinstance(value, NCPolynomial):
        return render_nc(value, fmt, alphabet)
    if isinstance(value, Vimo):
        return render_vimo(value, "vimo", fmt)
    if isinstance(value, Report):
        return render_report(value, fmt)
    if fmt == "json":
        return json.dumps({"value": _q(value)})
    return _q(value)


def render_report(rep, fmt: str) -> str:
    if rep.data is not None and isinstance(rep.data, list):
        return render_table(rep.title, rep.header, rep.data, fmt)
    if fmt == "json":
        return json.dumps({"check": rep.title, "holds": rep.holds, "detail": rep.detail}, sort_keys=True)
    status = "holds" if rep.holds else "fails"
    return f"{rep.title}: {status}" + (f" ({rep.detail})" if rep.detail else "")


def render_table(title: str, header: Sequence[str], rows: Sequence[Sequence], fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"title": title, "columns": list(header),
                           "rows": [[_cell(c) for c in r] for r in rows]}, sort_keys=True)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows([[_cell(c) for c in r] for r in rows])
        return buf.getvalue().rstrip("\n")
    widths = [max(len(str(h)), *(len(str(_cell(r[i]))) for r in rows)) if rows else len(str(h))
              for i, h in enumerate(header)]
    lines = [title, "  ".join(str(h).rjust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(str(_cell(c)).rjust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(lines)


def _cell(c):
    if isinstance(c, (int, str, bool)):
        return c
    try:
        return _q(c)
    except AttributeError:
        return str(c)


# ---------------------------------------------------------------------------
# subcommands

def _read_source(args) -> str:
    src = " ".join(args.expr) if args.expr else ""
    if not src or src == "-":
        src = sys.stdin.read()
    src = src.strip()
    if not src:
        raise UsageError("no expression given")
    return src


def cmd_eval(args) -> int:
    from .dsl import DSLError, Report, evaluate

    src = _read_source(args)
    try:
        value = evaluate(src, depth=args.depth, weight=args.weight)
    except DSLError as exc:
        print(exc.render(src), file=sys.stderr)
        return EXIT_USAGE
    print(render_value(value, args.format, args.name, args.alphabet))
    if isinstance(value, Report) and not value.holds:
        return EXIT_FAIL
    return EXIT_OK


def cmd_table(args) -> int:
    from .mould import MouldError
    from .special import named_mould

    try:
        M = named_mould(args.name, args.depth)
    except MouldError as exc:
        raise UsageError(str(exc)) from exc
    print(render_value(M, args.format, args.name))
    return EXIT_OK


def cmd_encode(args) -> int:
    from .dictionary import ma, mi, vimo
    from .ncpoly import NCError, c_view, f_Y, parse_nc, render_c, render_y
    from .render import mould_to_json, nc_to_json, render_mould, render_vimo

    src = _read_source(args)
    try:
        f = parse_nc(src)
        D = args.depth
        V_, A, B = vimo(f, D), ma(f, D), mi(f, D)
    except NCError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        print(json.dumps({"poly": nc_to_json(f), "vimo": json.loads(render_vimo(V_, fmt="json")),
                          "ma": mould_to_json(A), "mi": mould_to_json(B),
                          "fY": render_y(f_Y(f)), "fC": render_c(c_view(f))}, sort_keys=True))
        return EXIT_OK
    blocks = [render_vimo(V_, "vimo_f", args.format), render_mould(A, "ma_f", args.format),
              render_mould(B, "mi_f", args.format)]
    if args.format == "text":
        blocks.append(f"f_Y = {render_y(f_Y(f))}\nf_C = {render_c(c_view(f))}")
    print("\n".join(blocks))
    return EXIT_OK


def cmd_decode(args) -> int:
    from .dictionary import mould_to_ncpoly
    from .dsl import DSLError, evaluate
    from .mould import Mould, MouldError
    from .render import mould_from_json

    try:
        if args.json:
            with open(args.json, encoding="utf-8") as fh:
                M = mould_from_json(json.load(fh))
        else:
            src = _read_source(args)
            M = evaluate(src, depth=args.depth, weight=args.weight)
            if not isinstance(M, Mould):
                raise UsageError("decode needs a mould-valued expression")
        f = mould_to_ncpoly(M)
    except DSLError as exc:
        print(exc.render(src), file=sys.stderr)
        return EXIT_USAGE
    except (MouldError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(render_value(f, args.format, alphabet=args.alphabet))
    return EXIT_OK


def cmd_dims(args) -> int:
    from . import dimlab

    n, kind = args.n, args.kind
    if kind == "ls":
        if n < 3:
            raise UsageError("dims ls needs n >= 3")
        rows = [(n, d, dimlab.dim_ls(n, d)) for d in range(1, n)]
        print(render_table(f"dim ls_{n}^d", ("n", "d", "dim"), rows, args.format))
    elif kind == "ds":
        if n < 3:
            raise UsageError("dims ds needs n >= 3")
        basis = dimlab.ds_solve(n)
        print(render_table(f"dim ds_{n}", ("n", "dim"), [(n, len(basis))], args.format))
    elif kind == "fz":
        if not 2 <= n <= 8:
            raise UsageError("dims fz needs 2 <= n <= 8")
        rows = []
        for k in range(2, n + 1):
            res = dimlab.fz_relations(k)
            rows.append((k, len(res.unknowns), len(res.relations), res.rank, res.bound))
        print(render_table("dim FZ_n upper bounds", ("n", "words", "relations", "rank", "bound"), rows,
                           args.format))
    elif kind == "bk":
        rows = [(n, d, dimlab.bk_coeff(n, d)) for d in range(0, n + 1)]
        print(render_table(f"Broadhurst-Kreimer coefficients of X^{n}", ("n", "d", "coeff"), rows,
                           args.format))
    return EXIT_OK


def cmd_relations(args) -> int:
    from . import dimlab

    if not 2 <= args.n <= 8:
        raise UsageError("relations needs 2 <= n <= 8")
    res = dimlab.fz_relations(args.n)
    if args.format == "json":
        print(json.dumps({"weight": res.weight, "unknowns": res.unknowns, "rank": res.rank, "bound": res.bound,
                          "relations": [{"tag": t, "coeffs": {w: _q(c) for w, c in rel.items()}}
                                        for t, rel in res.relations]}, sort_keys=True))
        return EXIT_OK
    if args.format == "csv":
        rows = [(t, w, dimlab.z_name(w), c) for t, rel in res.relations for w, c in rel.items()]
        print(render_table("", ("relation", "word", "symbol", "coeff"), rows, "csv"))
        return EXIT_OK
    print(f"weight {res.weight}: {len(res.unknowns)} convergent words, {len(res.relations)} relations, "
          f"rank {res.rank}, dim bound {res.bound}")
    for tag, rel in res.relations:
        print(f"{tag}: {_linear_text(rel, dimlab.z_name)} = 0")
    return EXIT_OK


def _linear_text(rel, label) -> str:
    parts = []
    for w, c in rel.items():
        mag = abs(c)
        coef = "" if mag == 1 else f"{_q(mag)}*"
        sign = "-" if c < 0 else "+"
        parts.append(f"{sign} {coef}{label(w)}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def cmd_verify(args) -> int:
    from .suites import SUITES, Context, run_suite

    names = list(SUITES) if args.suite == "all" else [args.suite]
    ctx = Context(depth=args.depth, weight=args.weight, seed=args.seed, samples=args.samples)
    failed = 0
    for name in names:
        for out in run_suite(name, ctx):
            status = "ok" if out.ok else "FAIL"
            line = f"[{name}] {status} {out.name}"
            if not out.ok:
                failed += 1
                if out.detail:
                    line += f": {out.detail}"
                if out.seed is not None:
                    line += f" (seed {out.seed})"
            print(line)
    print(f"{failed} failure(s)")
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    from .suites import SUITES

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--depth", type=int, default=4, help="mould truncation depth")
    common.add_argument("--weight", type=int, default=6, help="series truncation weight")
    common.add_argument("--format", default="text", choices=("text", "json", "latex", "csv"))
    common.add_argument("--seed", type=int, default=0, help="seed for randomized moulds")

    p = argparse.ArgumentParser(prog="mouldlab", description="Exact mould calculus and double shuffle toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="evaluate an expression (stdin if omitted)")
    e.add_argument("expr", nargs="*")
    e.add_argument("--name", default="M", help="label used when printing a mould")
    e.add_argument("--alphabet", default="xy", choices=("xy", "y", "C"))
    e.set_defaults(func=cmd_eval)

    t = sub.add_parser("table", parents=[common], help="print a named mould")
    t.add_argument("name")
    t.set_defaults(func=cmd_table)

    en = sub.add_parser("encode", parents=[common], help="vimo, ma and mi of a polynomial")
    en.add_argument("expr", nargs="*")
    en.set_defaults(func=cmd_encode)

    de = sub.add_parser("decode", parents=[common], help="polynomial with a given ma-image")
    de.add_argument("expr", nargs="*")
    de.add_argument("--json", help="read the mould from a JSON file")
    de.add_argument("--alphabet", default="xy", choices=("xy", "y", "C"))
    de.set_defaults(func=cmd_decode)

    di = sub.add_parser("dims", parents=[common], help="dimension tables")
    di.add_argument("kind", choices=("ls", "ds", "fz", "bk"))
    di.add_argument("n", type=int)
    di.set_defaults(func=cmd_dims)

    r = sub.add_parser("relations", parents=[common], help="regularized double shuffle relations")
    r.add_argument("n", type=int)
    r.set_defaults(func=cmd_relations)

    v = sub.add_parser("verify", parents=[common], help="run an identity suite")
    v.add_argument("--suite", default="all", choices=tuple(SUITES) + ("all",))
    v.add_argument("--samples", type=int, default=3, help="random inputs per identity")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.depth < 0 or args.weight < 0:
        print("error: --depth and --weight must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
