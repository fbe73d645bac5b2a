"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage or configuration error.
Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence, TextIO

from .colored_partitions import nb_enumerate, nb_table, row_sum_series
from .exprtext import ParseError, parse_expr
from .identities import (
    VerificationReport,
    case_ids,
    congruence_registry,
    get_congruence,
    select_cases,
    verify,
    verify_all,
    verify_congruence,
)
from .products import eval_product_expr

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 2 like argparse, but keep it explicit
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _nonnegative(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {v}")
    return v


def fmt_rational(x: object) -> str:
    return str(Fraction(x))


def _emit_report(rep: VerificationReport, fmt: str, out: TextIO) -> None:
    if fmt == "json":
        out.write(rep.to_json() + "\n")
        return
    line = f"{rep.id}\torder={rep.order_checked}\t{rep.status}"
    if rep.first_mismatch is not None:
        fm = rep.first_mismatch
        line += f"\texponent={fm.exponent}\tlhs={fm.lhs}\trhs={fm.rhs}"
    if rep.message:
        line += f"\t{rep.message}"
    out.write(line + "\n")


def _known_ids(err: TextIO) -> None:
    err.write("known ids:\n")
    for cid in case_ids():
        err.write(f"  {cid}\n")


def cmd_verify(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    cases = select_cases(args.case)
    if not cases:
        err.write(f"no registered case matches {args.case!r}\n")
        _known_ids(err)
        return EXIT_USAGE
    ok = True
    for case in cases:
        rep = verify(case, args.order)
        _emit_report(rep, args.format, out)
        ok &= rep.status == "verified"
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify_all(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    reports = verify_all(args.order, jobs=args.jobs)
    for rep in reports:
        _emit_report(rep, args.format, out)
    bad = [r.id for r in reports if r.status != "verified"]
    if bad:
        err.write(f"{len(bad)} case(s) not verified: {', '.join(bad)}\n")
        return EXIT_FAIL
    return EXIT_OK


def cmd_table(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    if args.k < 2 or args.m < 2:
        err.write("need --k >= 2 and --m >= 2\n")
        return EXIT_USAGE
    table = nb_table(args.k, args.m, args.n_max)
    status = EXIT_OK
    if args.self_check:
        sums = row_sum_series(args.k, args.n_max + 1)
        for n in range(args.n_max + 1):
            if table.row_sum(n) != sums[n]:
                err.write(f"row sum mismatch at n={n}: {table.row_sum(n)} vs {sums[n]}\n")
                status = EXIT_FAIL
        for n in range(min(8, args.n_max) + 1):
            e = nb_enumerate(args.k, args.m, n)
            if tuple(e[r] for r in range(args.m)) != table.row(n):
                err.write(f"enumeration mismatch at n={n}\n")
                status = EXIT_FAIL
    if args.format == "json":
        rows = [
            {"n": n, "values": list(table.row(n)), "row_sum": table.row_sum(n)}
            for n in range(args.n_max + 1)
        ]
        out.write(json.dumps({"k": args.k, "m": args.m, "rows": rows}, sort_keys=True) + "\n")
    else:
        sep = "," if args.format == "csv" else "\t"
        header = ["n"] + [f"r{r}" for r in range(args.m)] + ["row_sum"]
        out.write(sep.join(header) + "\n")
        for n in range(args.n_max + 1):
            cells = [n, *table.row(n), table.row_sum(n)]
            out.write(sep.join(str(c) for c in cells) + "\n")
    return status


def _parse_weights(text: str) -> tuple[int, ...]:
    try:
        w = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad weight list {text!r}") from None
    if len(w) != 4:
        raise argparse.ArgumentTypeError("give four weights, for residues 1..4")
    return w


def cmd_congruence(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    try:
        case = get_congruence(args.case)
    except KeyError:
        err.write(f"unknown congruence id {args.case!r}\nknown ids:\n")
        for c in congruence_registry():
            err.write(f"  {c.id}\n")
        return EXIT_USAGE
    if args.weights is not None:
        case = type(case)(
            case.id, case.k, case.residue, case.weight_power, case.n_max,
            case.citation, args.weights,
        )
    rep = verify_congruence(case, args.n_max)
    if args.format == "json":
        out.write(rep.to_json() + "\n")
    else:
        out.write(f"{rep.id}\tn_max={rep.n_max}\t{rep.status}\n")
        for n, v in rep.violations:
            out.write(f"  n={n}\tvalue={v}\n")
    if rep.violations:
        err.write(f"first violation at n={rep.violations[0][0]}\n")
        return EXIT_FAIL
    return EXIT_OK


def cmd_series(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    try:
        expr = parse_expr(args.expr)
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_USAGE
    s = eval_product_expr(expr, args.order)
    start = min(s.valuation, 0)
    pairs = [(n, s[n]) for n in range(start, args.order)]
    if args.format == "json":
        doc = {
            "expr": args.expr,
            "order": args.order,
            "coefficients": [
                {"exponent": n, "coefficient": fmt_rational(c)} for n, c in pairs
            ],
        }
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    elif args.format == "csv":
        out.write("exponent,coefficient\n")
        for n, c in pairs:
            out.write(f"{n},{fmt_rational(c)}\n")
    else:
        for n, c in pairs:
            out.write(f"{n}\t{fmt_rational(c)}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nbcrank", description="Verify q-series identities for NB_k.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="verify registered identities by id glob")
    v.add_argument("--case", required=True, help="case id or shell glob, e.g. 'eq-2-*'")
    v.add_argument("--order", type=_positive, default=None,
                   help="check exponents below this (default: per case)")
    v.add_argument("--format", choices=("json", "plain"), default="json")
    v.set_defaults(func=cmd_verify)

    va = sub.add_parser("verify-all", help="verify the whole registry")
    va.add_argument("--order", type=_positive, default=None)
    va.add_argument("--jobs", type=_positive, default=1)
    va.add_argument("--format", choices=("json", "plain"), default="json")
    va.set_defaults(func=cmd_verify_all)

    t = sub.add_parser("table", help="print NB_k(r, m, n) for 0 <= n <= n-max")
    t.add_argument("--k", type=int, required=True)
    t.add_argument("--m", type=int, default=5)
    t.add_argument("--n-max", type=_nonnegative, required=True)
    t.add_argument("--self-check", action="store_true",
                   help="cross-check against enumeration and row sums")
    t.add_argument("--format", choices=("csv", "json", "plain"), default="csv")
    t.set_defaults(func=cmd_table)

    c = sub.add_parser("congruence", help="check a mod-5 congruence")
    c.add_argument("--case", required=True)
    c.add_argument("--n-max", type=_nonnegative, default=None)
    c.add_argument("--weights", type=_parse_weights, default=None,
                   help="override weights for residues 1..4, e.g. 1,2,3,5")
    c.add_argument("--format", choices=("json", "plain"), default="json")
    c.set_defaults(func=cmd_congruence)

    s = sub.add_parser("series", help="expand a product expression")
    s.add_argument("--expr", required=True)
    s.add_argument("--order", type=_positive, default=20)
    s.add_argument("--format", choices=("plain", "csv", "json"), default="plain")
    s.set_defaults(func=cmd_series)
    return p


def main(argv: Sequence[str] | None = None, out: TextIO | None = None,
         err: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    return args.func(args, out, err)


if __name__ == "__main__":
    sys.exit(main())
