#!/usr/bin/env python3
"""Regenerate the five reference frequency tables (plus the multi-triangle
demo workflow) into an output directory.

Usage: python scripts/reproduce_tables.py [--out OUT_DIR] [--seed S]
       [--replicates N] [--workers W]

Writes one CSV + JSON pair per table plus a summary of the runs. Expect
a few seconds per 2000-point table on one core.
"""

import argparse
import json
import sys
import time
from pathlib import Path

from pepcd.mc import McConfig, run_mc

TABLES = {
    # r=2, center of mass: degenerate limit 1
    "table1_left": dict(r=2.0, m="centroid", n_list=(10, 20, 30, 50, 100)),
    # r=5/4, center of mass: degenerate limit 3
    "table1_right": dict(r=1.25, m="centroid", n_list=(10, 20, 30, 50, 100)),
    # r=5/4, center on the inner triangle's boundary (non-vertex)
    "table2": dict(
        r=1.25, m="bary:0.3,0.5,0.2", n_list=(10, 20, 30, 50, 100, 500, 1000, 2000)
    ),
    # r=5/4, center at the inner triangle's vertex t2: 2 + Bernoulli(1-p_r)
    "table3": dict(r=1.25, m="t2", n_list=(10, 20, 30, 50, 100, 500, 1000, 2000)),
    # r=3/2, center of mass (the degenerate inner-triangle point)
    "table4": dict(r=1.5, m="centroid", n_list=(10, 20, 30, 50, 100, 500, 1000, 2000)),
    # d=3 simplex at the critical expansion factor
    "table5_d3": dict(
        r=4.0 / 3.0,
        m="centroid",
        d=3,
        n_list=(10, 20, 30, 40, 50, 100, 200, 500, 1000, 2000),
    ),
    # multi-triangle workflow: anchors in the unit square, data in the hull
    "multi_demo": dict(r=1.5, m="centroid", mode="multi", anchors=10, n_list=(200,)),
}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="out/tables")
    ap.add_argument("--seed", type=int, default=5)
    ap.add_argument("--replicates", type=int, default=1000)
    ap.add_argument("--workers", type=int, default=4)
    ap.add_argument("--only", default=None, help="comma-separated table names")
    args = ap.parse_args(argv)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    selected = set(args.only.split(",")) if args.only else set(TABLES)

    summary = {}
    for name, kw in TABLES.items():
        if name not in selected:
            continue
        reps = args.replicates if kw.get("mode") != "multi" else min(args.replicates, 200)
        cfg = McConfig(seed=args.seed, replicates=reps, **kw)
        t0 = time.time()
        report = run_mc(cfg, workers=args.workers)
        report.write_csv(str(out_dir / f"{name}.csv"))
        report.write_json(str(out_dir / f"{name}.json"))
        summary[name] = {
            "seconds": round(time.time() - t0, 2),
            "tables": {str(n): report.tables[n] for n in sorted(report.tables)},
        }
        print(f"{name}: done in {summary[name]['seconds']}s")
        for n in sorted(report.tables):
            print(f"  n={n:5d}  {report.tables[n]}")

    with open(out_dir / "summary.json", "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True, default=str)
    print(f"wrote {out_dir}/summary.json")
    return 0


if __name__ == "__main__":
    sys.exit(main())
