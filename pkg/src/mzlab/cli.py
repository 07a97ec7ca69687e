"""Command-line interface.

Subcommands:
  run        execute experiments from a config file (or the full registry)
  list       print the experiment catalog
  constants  evaluate an entry of the closed-form constant catalog
  nodes      dump a node system as CSV

Exit codes: 0 success, 2 configuration/parse error, 3 runtime numerical
error (the failing experiment is named on stderr).
"""

from __future__ import annotations

import argparse
import sys

from . import experiments, lab, nodes
from .experiments import ConfigError
from .norms import NormError


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="mzlab")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run experiments and emit CSV reports")
    p_run.add_argument("--config", help="experiment config file (flat "
                                        "key = value sections); omit to run "
                                        "the full registry defaults")
    p_run.add_argument("--out", default="mzlab_out", help="output directory")
    p_run.add_argument("--jobs", type=int, default=1,
                       help="worker processes for trial fan-out")
    p_run.add_argument("--seed", type=int, default=None,
                       help="override every experiment's master seed")
    p_run.add_argument("--filter", default=None,
                       help="glob filter on experiment names")

    sub.add_parser("list", help="list the experiment catalog")

    p_const = sub.add_parser("constants",
                             help="evaluate closed-form bound constants")
    p_const.add_argument("--id", required=True,
                         help="bound id, e.g. grid_mz or orlicz_sharp_upper")
    p_const.add_argument("params", nargs="*",
                         help="key=value parameters, e.g. A=0.6 d=1")

    p_nodes = sub.add_parser("nodes", help="dump a node system as CSV")
    p_nodes.add_argument("--kind", required=True,
                         choices=["equispaced", "minimal_trig", "perturbed",
                                  "gauss_jacobi", "cms", "chebyshev_like"])
    p_nodes.add_argument("--n", type=int, default=8)
    p_nodes.add_argument("--count", type=int, default=None)
    p_nodes.add_argument("--d", type=int, default=1)
    p_nodes.add_argument("--sigma", type=float, default=0.1)
    p_nodes.add_argument("--alpha", type=float, default=0.0)
    p_nodes.add_argument("--beta", type=float, default=0.0)
    p_nodes.add_argument("--seed", type=int, default=0)
    p_nodes.add_argument("--out", default=None, help="output path (default stdout)")

    args = parser.parse_args(argv)
    try:
        if args.command == "list":
            print(experiments.list_experiments())
            return 0
        if args.command == "constants":
            return _cmd_constants(args)
        if args.command == "nodes":
            return _cmd_nodes(args)
        return _cmd_run(args)
    except (ConfigError, NormError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3


def _cmd_run(args) -> int:
    config = None
    if args.config:
        try:
            with open(args.config) as fh:
                text = fh.read()
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        config = experiments.parse_config(text)
    try:
        ok, summary = experiments.run_experiments(
            config, args.out, jobs=args.jobs, seed_override=args.seed,
            name_filter=args.filter)
    except (ConfigError, NormError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3
    for line in summary:
        print(line)
    return 0 if ok else 1


def _cmd_constants(args) -> int:
    params = {}
    for item in args.params:
        if "=" not in item:
            raise ConfigError(f"expected key=value, got {item!r}")
        k, _, v = item.partition("=")
        try:
            params[k] = int(v)
        except ValueError:
            try:
                params[k] = float(v)
            except ValueError:
                params[k] = v
    out = lab.constant_bounds(args.id, **params)
    for k, v in out.items():
        print(f"{k} = {v}")
    return 0


def _cmd_nodes(args) -> int:
    if args.kind == "equispaced":
        system = nodes.equispaced_nodes(args.count or args.n, d=args.d)
    elif args.kind == "minimal_trig":
        system = nodes.minimal_trig_nodes(args.n, d=args.d)
    elif args.kind == "perturbed":
        system = nodes.perturbed_nodes(args.n, args.sigma, args.seed)
    elif args.kind in ("gauss_jacobi", "cms"):
        # Gauss nodes ship with Christoffel weights and the separation cells
        system = nodes.cms_cells(args.n, args.alpha, args.beta)
    else:
        system = nodes.chebyshev_like_nodes(args.count or args.n)
    lines = ["k,x_k,cell_lo,cell_hi,weight"]
    for row in system.to_csv_rows():
        lines.append(",".join(experiments._fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
