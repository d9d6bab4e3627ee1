#!/usr/bin/env python3
"""Sample residual spectral densities J_0..J_N onto a grid.

Shows how embedding chain sites flattens an ohmic bath toward the Wigner
semicircle (particle mapping) or Rubin density (phonon mapping):

    python scripts/residual_profiles.py --q 0 --orders 4 --out profiles.csv
    python scripts/residual_profiles.py --family power_law_exp_cutoff --q 0
"""

import argparse
import csv
import math

import numpy as np

import chaincast as cc


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", default="power_law",
                    choices=["power_law", "power_law_exp_cutoff"])
    ap.add_argument("--s", type=float, default=1.0)
    ap.add_argument("--alpha", type=float, default=0.1)
    ap.add_argument("--omega-c", type=float, default=1.0)
    ap.add_argument("--q", type=int, default=0, choices=[0, 1])
    ap.add_argument("--orders", type=int, default=4)
    ap.add_argument("--points", type=int, default=201)
    ap.add_argument("--out", default=None, help="CSV destination (else stdout summary)")
    args = ap.parse_args()

    maker = (cc.power_law_sd if args.family == "power_law"
             else cc.power_law_exp_sd)
    j = maker(args.s, args.alpha, args.omega_c)
    rd = cc.ResidualDensity.build(j, args.q, args.orders)
    lo, hi = rd.clipped_range()
    grid = np.linspace(lo, hi, args.points)
    profiles = {n: np.asarray(rd(n, grid), float)
                for n in range(args.orders + 1)}

    verdict = cc.szego_check(j, args.q)
    print(f"{args.family} s={args.s} q={args.q}: szego {verdict}")
    if verdict.in_class:
        jt = cc.terminal_sd(j, args.q)
        term = np.asarray(jt(grid), float)
        for n in range(1, args.orders + 1):
            sup = float(np.max(np.abs(profiles[n] - term)))
            print(f"  sup |J_{n} - J_T| on grid: {sup:.4e}")
    else:
        print("  no terminal density (sequence does not converge)")

    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            writer = csv.writer(fh)
            writer.writerow(["omega"] + [f"J{n}" for n in profiles])
            for i, w in enumerate(grid):
                writer.writerow([f"{w:.12g}"]
                                + [f"{profiles[n][i]:.12g}" for n in profiles])
        print(f"wrote {len(grid)} samples to {args.out}")
    else:
        mid = grid[len(grid) // 2]
        vals = ", ".join(f"J{n}={profiles[n][len(grid) // 2]:.5g}"
                         for n in profiles)
        print(f"  at omega = {mid:.4g}: {vals}")


if __name__ == "__main__":
    main()
