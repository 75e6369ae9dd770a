"""Command-line frontend.

Subcommands: pr, gamma, law, simulate, multi, tr, version. Primary output
is JSON on stdout; --out writes CSV/JSON files plus a run manifest.
Exit codes: 0 ok, 2 usage, 3 numeric failure, 4 I/O. Errors are emitted
as a single JSON line on stderr.

The expansion factor accepts fractions ('3/2', '4/3') so rational
parameters stay exact; centers are specified as
centroid | t1 | t2 | t3 | bary:m1,m2,m3 | point:x,y.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import math
import os
import sys
from fractions import Fraction

from . import __version__
from .asymptotics import asymptotic_law, law_moments, multi_law, p_r
from .domination import PcdInstance, build_arcs, domination_exact, domination_multi
from .geometry import (
    GeometryError,
    Point2,
    Triangle2,
    equilateral_triangle,
    read_points_csv,
    read_points_json,
)
from .mc import McConfig, default_workers, run_mc
from .regions import ProximityParams, resolve_m_spec, tr_triangle

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_IO = 4


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # emit machine-readable usage errors
        raise UsageError(message)


def parse_r(text: str) -> float:
    """Expansion factor: 'inf', a float, or a fraction like '3/2'."""
    s = text.strip().lower()
    if s in ("inf", "infinity", "+inf"):
        return math.inf
    try:
        if "/" in s:
            return float(Fraction(s))
        return float(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse expansion factor {text!r}") from exc


def parse_r_exact(text: str):
    """Like parse_r but keeps rationals exact for exact classification."""
    s = text.strip().lower()
    if s in ("inf", "infinity", "+inf"):
        return math.inf
    try:
        frac = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse expansion factor {text!r}") from exc
    return frac


def _json_out(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _read_points(path: str) -> list[Point2]:
    if path.endswith(".json"):
        return read_points_json(path)
    return read_points_csv(path)


def _parse_triangle(text: str) -> Triangle2:
    if text.strip().lower() == "equilateral":
        return equilateral_triangle()
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"cannot parse triangle {text!r}") from exc
    if len(vals) != 6:
        raise UsageError("triangle must be 'equilateral' or x1,y1,x2,y2,x3,y3")
    return Triangle2(Point2(vals[0], vals[1]), Point2(vals[2], vals[3]), Point2(vals[4], vals[5]))


def _write_manifest(out_prefix: str, subcommand: str, config: dict, outputs: list[str], seed=None) -> str:
    manifest = {
        "subcommand": subcommand,
        "config": config,
        "tool_version": __version__,
        "seed": seed,
        "created_utc": _dt.datetime.now(_dt.timezone.utc).isoformat(),
        "outputs": outputs,
    }
    path = out_prefix + ".manifest.json"
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(manifest, fh, sort_keys=True, indent=2)
        fh.write("\n")
    return path


def cmd_pr(args) -> int:
    r = parse_r(args.r)
    value = p_r(r, abs_tol=args.tol)
    _json_out({"r": r, "p_r": value, "tol": args.tol})
    return EXIT_OK


def cmd_tr(args) -> int:
    r = parse_r(args.r)
    from .geometry import BasicTriangleParams, EQUILATERAL_PARAMS

    basic = (
        BasicTriangleParams(args.c1, args.c2)
        if args.c1 is not None and args.c2 is not None
        else EQUILATERAL_PARAMS
    )
    tri = tr_triangle(r, basic)
    out: dict = {"r": r, "empty": tri.is_empty, "c1": basic.c1, "c2": basic.c2}
    if tri.t1 is not None:
        out["t1"] = [tri.t1.x, tri.t1.y]
        out["t2"] = [tri.t2.x, tri.t2.y]
        out["t3"] = [tri.t3.x, tri.t3.y]
    _json_out(out)
    return EXIT_OK


def cmd_law(args) -> int:
    r_exact = parse_r_exact(args.r)
    spec = args.M.strip().lower()
    if spec in ("t1", "t2", "t3") and not math.isinf(float(r_exact)):
        if float(r_exact) > 1.5:
            raise UsageError(f"{spec} undefined: inner triangle empty for r={args.r}")
        # keep rational coordinates exact so the vertex classifies exactly
        from .regions import tr_vertices_bary

        m = tr_vertices_bary(r_exact)[int(spec[1]) - 1]
    elif spec == "centroid":
        m = (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))
    else:
        m = resolve_m_spec(args.M, r_exact)
    if args.Jm is None:
        law = asymptotic_law(r_exact, m)
        mean, var = law_moments(law)
        out = law.to_json_dict()
        out.update({"r": float(r_exact), "M": args.M, "mean": mean, "variance": var})
    else:
        law_m = multi_law(r_exact, m, args.Jm)
        out = law_m.to_json_dict()
        out.update({"r": float(r_exact), "M": args.M, "mean": law_m.mean()})
    _json_out(out)
    return EXIT_OK


def cmd_gamma(args) -> int:
    r = parse_r(args.r)
    tri = _parse_triangle(args.triangle)
    pts = _read_points(args.points)
    if not pts:
        raise UsageError("points file is empty")
    params = ProximityParams(r, resolve_m_spec(args.M, r))
    inst = PcdInstance(tri, params, pts)
    res = domination_exact(inst)
    arcs = build_arcs(inst)
    out = {"gamma": res.gamma, "witness": list(res.witness), "arcs": len(arcs), "n": inst.n}
    _json_out(out)
    if args.out:
        path = args.out + ".gamma.json"
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(out, fh, sort_keys=True)
            fh.write("\n")
        _write_manifest(
            args.out,
            "gamma",
            {"r": args.r, "M": args.M, "triangle": args.triangle, "points": args.points},
            [path],
        )
    return EXIT_OK


def cmd_multi(args) -> int:
    r = parse_r(args.r)
    anchors = _read_points(args.anchors)
    data = _read_points(args.points)
    params = ProximityParams(r, resolve_m_spec(args.M, r))
    res = domination_multi(anchors, data, params)
    per_cell = []
    for cell in res.cells:
        entry: dict = {"cell": cell.cell_index, "n": len(cell.point_indices)}
        if cell.result is not None:
            entry["gamma"] = cell.result.gamma
            # witness indices are local to the cell; report global data indices
            entry["witness"] = [cell.point_indices[i] for i in cell.result.witness]
        per_cell.append(entry)
    out = {
        "total_gamma": res.total_gamma,
        "J": res.triangulation.n_cells,
        "kept": res.kept,
        "discarded": res.discarded,
        "per_cell": per_cell,
    }
    _json_out(out)
    if args.out:
        path = args.out + ".multi.json"
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(out, fh, sort_keys=True)
            fh.write("\n")
        _write_manifest(
            args.out,
            "multi",
            {"r": args.r, "M": args.M, "anchors": args.anchors, "points": args.points},
            [path],
        )
    return EXIT_OK


def cmd_simulate(args) -> int:
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        cfg_dict = raw.get("config", raw)  # accept a manifest or a bare config
        config = McConfig.from_json_dict(cfg_dict)
    else:
        if args.r is None or args.n is None:
            raise UsageError("simulate needs --r and --n (or --config)")
        try:
            n_list = tuple(int(v) for v in args.n.split(","))
        except ValueError as exc:
            raise UsageError(f"cannot parse sample sizes {args.n!r}") from exc
        config = McConfig(
            r=parse_r(args.r),
            m=args.M,
            n_list=n_list,
            replicates=args.replicates,
            seed=args.seed,
            d=args.d,
            mode=args.mode,
            anchors=args.anchors,
        )
    workers = args.workers or default_workers()
    env_cap = os.environ.get("PCD_THREADS")
    if env_cap:
        workers = min(workers, max(1, int(env_cap)))
    report = run_mc(config, workers=workers)
    _json_out(report.to_json_dict())
    if args.out:
        csv_path = args.out + ".csv"
        json_path = args.out + ".json"
        report.write_csv(csv_path)
        report.write_json(json_path)
        _write_manifest(
            args.out,
            "simulate",
            config.to_json_dict(),
            [csv_path, json_path],
            seed=config.seed,
        )
    return EXIT_OK


def cmd_version(args) -> int:
    _json_out({"version": __version__})
    return EXIT_OK


def build_parser() -> _Parser:
    p = _Parser(prog="pepcd", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("pr", help="evaluate the limit pair probability p_r")
    sp.add_argument("--r", required=True)
    sp.add_argument("--tol", type=float, default=1e-6)
    sp.set_defaults(fn=cmd_pr)

    sp = sub.add_parser("tr", help="print the inner-triangle vertices")
    sp.add_argument("--r", required=True)
    sp.add_argument("--c1", type=float, default=None)
    sp.add_argument("--c2", type=float, default=None)
    sp.set_defaults(fn=cmd_tr)

    sp = sub.add_parser("law", help="asymptotic law of the domination number")
    sp.add_argument("--r", required=True)
    sp.add_argument("--M", default="centroid")
    sp.add_argument("--Jm", type=int, default=None)
    sp.set_defaults(fn=cmd_law)

    sp = sub.add_parser("gamma", help="domination number of a points file")
    sp.add_argument("--points", required=True)
    sp.add_argument("--triangle", default="equilateral")
    sp.add_argument("--r", required=True)
    sp.add_argument("--M", default="centroid")
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=cmd_gamma)

    sp = sub.add_parser("multi", help="multi-triangle domination over anchors + data")
    sp.add_argument("--anchors", required=True)
    sp.add_argument("--points", required=True)
    sp.add_argument("--r", required=True)
    sp.add_argument("--M", default="centroid")
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=cmd_multi)

    sp = sub.add_parser("simulate", help="seeded Monte-Carlo frequency tables")
    sp.add_argument("--r", default=None)
    sp.add_argument("--M", default="centroid")
    sp.add_argument("--n", default=None, help="comma-separated sample sizes")
    sp.add_argument("--replicates", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=5)
    sp.add_argument("--d", type=int, default=2)
    sp.add_argument("--mode", default="single", choices=("single", "multi"))
    sp.add_argument("--anchors", type=int, default=10)
    sp.add_argument("--workers", type=int, default=None)
    sp.add_argument("--config", default=None, help="JSON config (or manifest) file")
    sp.add_argument("--out", default=None, help="output path prefix")
    sp.set_defaults(fn=cmd_simulate)

    sp = sub.add_parser("version", help="print the tool version")
    sp.set_defaults(fn=cmd_version)
    return p


def _fail(code: int, message: str) -> int:
    sys.stderr.write(json.dumps({"error": message, "code": code}) + "\n")
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except UsageError as exc:
        return _fail(EXIT_USAGE, str(exc))
    except json.JSONDecodeError as exc:
        return _fail(EXIT_IO, f"malformed JSON input: {exc}")
    except (FileNotFoundError, PermissionError, IsADirectoryError, OSError) as exc:
        return _fail(EXIT_IO, str(exc))
    except GeometryError as exc:
        return _fail(EXIT_NUMERIC, str(exc))
    except (ValueError, ArithmeticError) as exc:
        return _fail(EXIT_NUMERIC, str(exc))


if __name__ == "__main__":
    sys.exit(main())
