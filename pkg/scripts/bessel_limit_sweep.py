#!/usr/bin/env python3
"""Sweep the small-angle limit where the cone pair collapses to I_n, K_n.

For each theta the scaled first/second solutions are compared against
I_n(n*lambda) and K_n(n*lambda) and the exponent profile against its
limit; all three gaps should shrink roughly linearly in theta.
"""

from __future__ import annotations

import argparse
import sys

from uniasym import OracleConfig, eta, eta_tilde, limit_check_bessel


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--lambda", type=float, default=1.0, dest="lam")
    ap.add_argument("--thetas", type=str, default="1e-1,1e-2,1e-3,1e-4")
    ap.add_argument("--dps", type=int, default=40, help="oracle working digits")
    args = ap.parse_args(argv)

    thetas = [float(s) for s in args.thetas.split(",") if s]
    cfg = OracleConfig(dps=args.dps)
    eta_inf = eta(args.lam)
    print(f"n={args.n} lambda={args.lam:g} eta_limit={eta_inf:.10f}")
    print(f"{'theta':>10} {'eta_gap':>12} {'p_vs_I':>12} {'q_vs_K':>12}")
    for theta in thetas:
        rep = limit_check_bessel(args.n, args.lam, theta, cfg)
        eta_gap = abs(eta_tilde(args.lam, theta) - eta_inf)
        print(f"{theta:>10g} {eta_gap:>12.4e} {rep.p_gap:>12.4e} {rep.q_gap:>12.4e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
