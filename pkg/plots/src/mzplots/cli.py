"""Command-line interface: one command per plot kind, CSV in, image out."""

from __future__ import annotations

import argparse
import sys

from . import render
from .io import SchemaError


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="mzplots")
    sub = parser.add_subparsers(dest="command", required=True)
    for kind, help_text in (
            ("ratio-envelope", "min/max ratio band with bound lines"),
            ("loglog-decay", "log-log decay with slope refit"),
            ("margin-hist", "bound-margin histogram with a zero line")):
        p = sub.add_parser(kind, help=help_text)
        p.add_argument("csv", help="input CSV (harness schema)")
        p.add_argument("out", help="output image path")
        if kind == "loglog-decay":
            p.add_argument("--column", default="lower_ratio",
                           help="value column to fit")
    args = parser.parse_args(argv)
    try:
        if args.command == "ratio-envelope":
            info = render.ratio_envelope(args.csv, args.out)
        elif args.command == "loglog-decay":
            info = render.loglog_decay(args.csv, args.out, args.column)
        else:
            info = render.margin_hist(args.csv, args.out)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for k, v in info.items():
        print(f"{k} = {v}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
