#!/usr/bin/env python3
"""Tabulate the limit pair probability p_r over a grid of expansion
factors, producing a plot-ready CSV (columns r, p_r).

Usage: python scripts/pr_curve.py [--out out/pr_curve.csv]
       [--r-min 1.01] [--r-max 1.5] [--steps 50] [--tol 1e-6]

The curve is decreasing in r; the value at exactly r = 3/2 includes the
three-fold vertex coincidence correction and therefore jumps above the
left limit of the open-interval curve.
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from pepcd.mc import pr_curve_rows, write_pr_curve_csv


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="out/pr_curve.csv")
    ap.add_argument("--r-min", type=float, default=1.01)
    ap.add_argument("--r-max", type=float, default=1.5)
    ap.add_argument("--steps", type=int, default=50)
    ap.add_argument("--tol", type=float, default=1e-6)
    args = ap.parse_args(argv)

    grid = np.linspace(args.r_min, args.r_max, args.steps)
    rows = pr_curve_rows([float(r) for r in grid], abs_tol=args.tol)
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    write_pr_curve_csv(rows, args.out)
    print(f"wrote {args.out} ({len(rows)} rows, p_r in [{min(p for _, p in rows):.4f}, "
          f"{max(p for _, p in rows):.4f}])")
    return 0


if __name__ == "__main__":
    sys.exit(main())
