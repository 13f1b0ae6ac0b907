"""Command-line interface.

Subcommands: ``derive``, ``eval``, ``table``, ``figure-data``, ``check``.
Exit status is 0 on success, 1 when a verification fails and 2 on usage
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .checks import SUITES, run_suite
from .moments import KINDS, DomainError, MomentQuery, QueryError, derive
from .oracle import oracle_moment
from .render import render
from .tables import TABLE_FORMATS, decimal15, figure_csv, p_grid, table_docs

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def parse_probability(text: str, warn=None) -> Fraction:
    """Parse ``a/b`` or a decimal string exactly; decimals trigger a notice."""
    text = text.strip()
    try:
        p = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse probability {text!r}") from exc
    if "/" not in text and not text.isdigit() and warn is not None:
        warn(f"note: decimal p={text} taken exactly as {p}")
    if not 0 <= p <= 1:
        raise UsageError(f"p must lie in [0, 1], got {text}")
    return p


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _query(args) -> MomentQuery:
    basis = args.basis
    if basis is None:
        basis = "variance" if args.kind == "central" and args.method not in ("direct", "fast") else "p"
    return MomentQuery(args.kind, args.d, basis, args.method)


def cmd_derive(args) -> int:
    doc = derive(_query(args))
    _emit(render(doc, args.format) + "\n", args.out)
    return EXIT_OK


def cmd_eval(args) -> int:
    p = parse_probability(args.p, warn=lambda m: print(m, file=sys.stderr))
    if args.n < 0:
        raise UsageError("n must be non-negative")
    doc = derive(_query(args))
    value = doc.evaluate(args.n, p)
    truth = oracle_moment(args.n, p, args.d, args.kind)
    if args.format == "json":
        text = json.dumps({"kind": args.kind, "d": args.d, "n": args.n, "p": str(p), "value": str(value),
                           "decimal": decimal15(value), "oracle_agrees": value == truth}) + "\n"
    else:
        text = f"{value}\ndecimal approximation: {decimal15(value)}\n"
    _emit(text, args.out)
    if value != truth:
        print(f"error: formula gives {value} but direct summation gives {truth}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_table(args) -> int:
    if args.d_from > args.d_to:
        raise UsageError("--from must not exceed --to")
    docs = table_docs(args.kind, args.d_from, args.d_to, args.basis, args.method)
    _emit(TABLE_FORMATS[args.format](docs), args.out)
    return EXIT_OK


def cmd_figure_data(args) -> int:
    if args.d < 0:
        raise UsageError("d must be non-negative")
    if args.format != "csv":
        raise UsageError("figure-data emits csv only")
    if args.n_min < 0 or args.n_max < args.n_min:
        raise UsageError("need 0 <= --n-min <= --n-max")
    ns = range(args.n_min, args.n_max + 1)
    _emit(figure_csv(args.d, ns, p_grid(args.p_steps), exact=args.exact), args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    report = run_suite(args.suite, args.dmax, args.nmax)
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    return EXIT_OK if report["ok"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="binmoments", description="Exact formulas for binomial moments.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def moment_flags(p, d_flag=True):
        p.add_argument("--kind", choices=KINDS, default="central")
        if d_flag:
            p.add_argument("--d", type=int, required=True, help="moment order")
        p.add_argument("--basis", choices=("p", "variance"), default=None,
                       help="central moments default to the variance basis")
        p.add_argument("--method", choices=("direct", "fast", "alg1", "alg2"), default=None)
        p.add_argument("--out", metavar="PATH", default=None)

    p = sub.add_parser("derive", help="print a moment formula")
    moment_flags(p)
    p.add_argument("--format", choices=("text", "latex", "json"), default="text")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("eval", help="evaluate a moment exactly")
    moment_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", required=True, help="probability as a/b or an exact decimal")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("table", help="print a table of formulas")
    moment_flags(p, d_flag=False)
    p.add_argument("--from", dest="d_from", type=int, default=2)
    p.add_argument("--to", dest="d_to", type=int, default=10)
    p.add_argument("--format", choices=tuple(TABLE_FORMATS), default="text")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("figure-data", help="CSV grid of a central moment over (n, p)")
    p.add_argument("--d", type=int, default=6)
    p.add_argument("--n-min", type=int, default=0)
    p.add_argument("--n-max", type=int, default=99)
    p.add_argument("--p-steps", type=int, default=20, help="p runs over i/STEPS for i = 0..STEPS")
    p.add_argument("--exact", action="store_true", help="append an exact rational column")
    p.add_argument("--format", choices=("csv",), default="csv")
    p.add_argument("--out", metavar="PATH", default=None)
    p.set_defaults(func=cmd_figure_data)

    p = sub.add_parser("check", help="run verification suites")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--dmax", type=int, default=None)
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--out", metavar="PATH", default=None)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, QueryError, DomainError) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
