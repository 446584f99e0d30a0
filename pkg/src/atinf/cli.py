"""Command line entry point: ``atinf analyze "<poly>" ...``."""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .algebra.fields import Budget
from .parse import ParseError, parse_poly
from .report import Options, analyze, emit_dot, emit_json, to_dict


def _point(text):
    a, _, b = text.partition(":")
    if not b:
        raise argparse.ArgumentTypeError("expected a:b")
    return Fraction(a), Fraction(b)


def _values(text):
    return tuple(Fraction(v) for v in text.split(",") if v.strip())


def build_parser():
    ap = argparse.ArgumentParser(prog="atinf", description="Critical points at infinity of polynomials in x, y.")
    sub = ap.add_subparsers(dest="command", required=True)
    an = sub.add_parser("analyze", help="classify points at infinity and critical values")
    an.add_argument("poly")
    an.add_argument("--point", type=_point, help="only the point [a,b,0], given as a:b")
    an.add_argument("--values", type=_values, default=(), help="extra values c1,c2,... to classify")
    an.add_argument("--resolve", action="store_true", help="resolve the indeterminacy and check Condition R")
    an.add_argument("--gtilde", action="store_true", help="compute g~ from a resolution of f, f_x, f_y")
    an.add_argument("--json", metavar="PATH", help="write the JSON report here ('-' for stdout)")
    an.add_argument("--dot", metavar="PATH", help="write dual graphs in DOT format (implies --resolve)")
    an.add_argument("--budget", type=int, default=16, help="maximal degree of extension fields")
    an.add_argument("--trunc", type=int, help="truncation bound for polar series (default 4 d^2)")
    return ap


def _summary(d):
    lines = [f"f = {d['polynomial']}  (degree {d['degree']})"]
    for pt in d["points_at_infinity"]:
        lines.append(f"point {pt['point']}  d_p={pt['d_p']}  mu_gen={pt['mu_gen']}")
        for v in pt["verdicts"]:
            c = v["c"]
            if isinstance(c, dict):
                c = f"{c['num']}/{c['den']}" if "num" in c else f"root of {c['minpoly']}"
                c = c[:-2] if c.endswith("/1") else c
            extra = []
            if v["g_tilde"] is not None:
                extra.append(f"g~={v['g_tilde']}")
            if v["condition_R"] is not None:
                extra.append(f"R {v['condition_R']}")
            label = v["label"] or ""
            if v["reason"]:
                label += f" ({v['reason']})"
            parts = [f"c={c}:", f"nu={v['nu']}", f"polar={v['nu_polar']}", label, *extra]
            lines.append("  " + " ".join(x for x in parts if x))
    fmt = lambda xs: "{" + ", ".join(x if isinstance(x, str) else f"root of {x['minpoly']}" for x in xs) + "}"
    lines.append(f"Sigma_fin = {fmt(d['sigma_fin'])}   Sigma_inf = {fmt(d['sigma_infinity'])}")
    aff = d["affine"]
    if aff and "error" in aff:
        lines.append(f"affine analysis: {aff['error']}")
    g = d["global"]
    if g:
        bound = " (lower bound)" if g["rankH1_lower_bound"] else ""
        lines.append(f"mu = {g['mu']}, lambda = {g['lambda']}, rank H1 = {g['rankH1']}{bound}")
    failed = [c for c in d["checks"] if not c["passed"]]
    lines.append(f"cross-checks: {len(d['checks']) - len(failed)} passed, {len(failed)} failed")
    for c in failed:
        lines.append(f"  FAILED {c['name']}: {c['detail']}")
    return "\n".join(lines) + "\n"


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        f = parse_poly(args.poly)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    if f.total_degree() < 1:
        print("parse error: polynomial is constant", file=sys.stderr)
        return 2
    opts = Options(
        point=args.point, values=args.values, resolve=args.resolve or bool(args.dot), gtilde=args.gtilde,
        budget=Budget(max_degree=args.budget), trunc=args.trunc,
    )
    try:
        report = analyze(f, opts)
    except Exception as exc:  # a point that is not on the level curves, and the like
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    text = emit_json(report)
    if args.json == "-":
        sys.stdout.write(text)
    else:
        if args.json:
            with open(args.json, "w") as fh:
                fh.write(text)
        sys.stdout.write(_summary(to_dict(report)))
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(emit_dot(report))
    return 3 if report.partial else 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
