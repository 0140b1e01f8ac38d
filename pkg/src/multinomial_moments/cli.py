"""Command-line front end.

Exit codes: 0 success, 1 conformance mismatch, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import enum_oracle
from .errors import MomentError
from .formulas import central_moment, factorial_moment, raw_moment
from .model import format_scalar, parse_scalar, validate_params
from .verify import CSV_COLUMNS, ORACLES, VerifyConfig, run_verify

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, "%s: error: %s\n" % (self.prog, message))


def int_range(text: str) -> tuple[int, ...]:
    """``"5"`` -> (5,), ``"1..4"`` -> (1, 2, 3, 4)."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if lo > hi:
                raise ValueError
            return tuple(range(lo, hi + 1))
        return (int(text),)
    except ValueError:
        raise argparse.ArgumentTypeError("expected an integer or a range a..b, got %r" % text) from None


def int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected a comma-separated integer list, got %r" % text) from None


def name_list(text: str) -> tuple[str, ...]:
    names = tuple(v.strip() for v in text.split(",") if v.strip())
    unknown = [n for n in names if n not in ORACLES]
    if unknown or not names:
        raise argparse.ArgumentTypeError("oracles must come from %s" % ",".join(ORACLES))
    return names


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="multinomial-moments", description="Joint moments of the multinomial distribution.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    mom = sub.add_parser("moment", help="evaluate one closed-form moment")
    mom.add_argument("kind", choices=("raw", "central", "factorial"))
    mom.add_argument("--m", type=int, required=True, help="number of trials")
    mom.add_argument("--x", required=True, help="comma-separated probabilities, p/q or decimal")
    mom.add_argument("--indices", type=int_list, help="1-based category indices (raw, central)")
    mom.add_argument("--orders", type=int_list, help="falling-factorial order per category (factorial)")
    mom.add_argument("--exact", action="store_true", help="exact rational arithmetic")
    mom.add_argument("--format", choices=("json", "csv"), default="json")

    ver = sub.add_parser("verify", help="compare the closed forms against independent oracles")
    ver.add_argument("--oracles", type=name_list, default=("enum", "mgf", "expansion"))
    ver.add_argument("--d", type=int_range, default=(1, 2, 3), help="dimension or range a..b")
    ver.add_argument("--m", type=int_range, default=(1, 2, 3, 4, 5), help="trial count or range a..b")
    ver.add_argument("--grid", type=int, default=4, help="probability grid resolution g (x_i = k/g)")
    ver.add_argument("--exact", action="store_true")
    ver.add_argument("--samples", type=int, default=100_000)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--budget", type=int, default=enum_oracle.DEFAULT_BUDGET, help="enumeration point cap")
    ver.add_argument("--format", choices=("json", "csv"), default="json")
    return parser


def cmd_moment(args: argparse.Namespace) -> tuple[dict, int]:
    x = [parse_scalar(v, args.exact) for v in args.x.split(",")]
    params = validate_params(args.m, x, exact=args.exact)
    if args.kind == "factorial":
        if args.orders is None or args.indices is not None:
            raise MomentError("factorial moments take --orders and no --indices")
        value = factorial_moment(params, args.orders)
    else:
        if args.indices is None or args.orders is not None:
            raise MomentError("%s moments take --indices and no --orders" % args.kind)
        fn = raw_moment if args.kind == "raw" else central_moment
        value = fn(params, args.indices)
    result = {
        "kind": args.kind,
        "m": params.m,
        "x": [format_scalar(v) for v in params.x],
        "indices": list(args.indices) if args.indices is not None else None,
        "orders": list(args.orders) if args.orders is not None else None,
        "mode": "exact" if params.exact else "float",
        "value": format_scalar(value),
    }
    return result, EXIT_OK


def _render_moment(result: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result, indent=2)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(result))
    writer.writerow([
        ",".join(map(str, v)) if isinstance(v, list) else ("" if v is None else v)
        for v in result.values()
    ])
    return buf.getvalue().rstrip("\n")


def cmd_verify(args: argparse.Namespace):
    config = VerifyConfig(
        oracles=tuple(args.oracles),
        dims=tuple(args.d),
        ms=tuple(args.m),
        grid=args.grid,
        exact=args.exact,
        samples=args.samples,
        seed=args.seed,
        budget=args.budget,
    )
    report = run_verify(config, collect_rows=args.format == "csv")
    return report, EXIT_OK if report.ok else EXIT_MISMATCH


def _render_report(report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(report.rows)
    return buf.getvalue().rstrip("\n")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "moment":
            result, code = cmd_moment(args)
            text = _render_moment(result, args.format)
        else:
            report, code = cmd_verify(args)
            text = _render_report(report, args.format)
    except (MomentError, ValueError) as exc:
        print("error: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return EXIT_USAGE
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
