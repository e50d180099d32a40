#!/usr/bin/env python3
"""Reproduce the truncation-error table as CSV.

Defaults match the headline setting (theta=0.1, xi=0, n=4, lambda from
0.5 to 10): relative errors of the order-m truncations against the
high-precision oracle, one row per (lambda, m).  Thin wrapper over the
`uniasym errtable` command so the CSV contract stays in one place.
"""

from __future__ import annotations

import argparse
import sys

from uniasym.cli import main as cli_main


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--theta", type=float, default=0.1)
    ap.add_argument("--xi", type=float, default=0.0)
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--lambda-min", type=float, default=0.5)
    ap.add_argument("--lambda-max", type=float, default=10.0)
    ap.add_argument("--steps", type=int, default=20)
    ap.add_argument("--orders", type=str, default="0,1,2,3")
    ap.add_argument("--out", type=str, default=None, help="CSV path (default stdout)")
    args = ap.parse_args(argv)

    cli_args = [
        "errtable",
        "--theta", str(args.theta),
        "--xi", str(args.xi),
        "--n", str(args.n),
        "--lambda-min", str(getattr(args, "lambda_min")),
        "--lambda-max", str(getattr(args, "lambda_max")),
        "--steps", str(args.steps),
        "--orders", args.orders,
    ]
    if args.out:
        cli_args += ["--out", args.out]
    return cli_main(cli_args)


if __name__ == "__main__":
    sys.exit(main())
