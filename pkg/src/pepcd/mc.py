"""Seeded Monte-Carlo engine for the empirical distribution of the
domination number, reproducing the reference frequency tables.

Reproducibility contract: every replicate draws from its own
counter-based stream keyed by (seed, sample size, replicate index), so
results are byte-identical no matter how replicates are chunked or how
many worker threads run them; tabulation is an order-free integer sum.
"""

from __future__ import annotations

import json
import math
import os
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__ as _version
from .domination import domination_multi
from .geometry import Point2, sample_uniform_triangle_bary
from .regions import ProximityParams, resolve_m_spec
from .simplex import gamma_batch_d, sample_uniform_simplex

CHUNK = 250  # replicates per vectorized batch; fixed so threading cannot matter


def replicate_rng(seed: int, n: int, rep: int) -> np.random.Generator:
    """Independent counter-based stream for one replicate of one sample
    size (Philox keyed by (seed, n, rep))."""
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(n), int(rep)))
    return np.random.Generator(np.random.Philox(ss))


@dataclass(frozen=True)
class McConfig:
    """Simulation configuration.

    ``m`` is a center specification: 'centroid', 't1'/'t2'/'t3' (resolved
    against r), 'bary:a,b,c', or 'point:x,y' (cartesian in the standard
    equilateral triangle). For d > 2 only the center of mass is supported.
    ``mode`` is 'single' (one triangle/simplex) or 'multi' (anchors drawn
    uniform in the unit square, data restricted to their convex hull).
    """

    r: float
    m: str = "centroid"
    n_list: tuple[int, ...] = (10,)
    replicates: int = 1000
    seed: int = 5
    d: int = 2
    mode: str = "single"
    anchors: int = 10

    def __post_init__(self) -> None:
        if not self.r >= 1.0:
            raise ValueError(f"expansion factor must be >= 1, got {self.r}")
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")
        if any(n < 1 for n in self.n_list):
            raise ValueError("every sample size must be >= 1")
        if self.d < 2:
            raise ValueError("dimension must be >= 2")
        if self.d > 2 and self.m != "centroid":
            raise ValueError("d > 2 supports only the center of mass")
        if self.mode not in ("single", "multi"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "multi" and self.d != 2:
            raise ValueError("multi-triangle mode is planar only")

    def resolved_m(self) -> np.ndarray:
        if self.d > 2:
            return np.full(self.d + 1, 1.0 / (self.d + 1))
        return np.array(resolve_m_spec(self.m, self.r).as_tuple())

    def to_json_dict(self) -> dict:
        return {
            "r": "inf" if math.isinf(self.r) else self.r,
            "M": self.m,
            "n": list(self.n_list),
            "replicates": self.replicates,
            "seed": self.seed,
            "d": self.d,
            "mode": self.mode,
            "anchors": self.anchors,
        }

    @staticmethod
    def from_json_dict(d: dict) -> "McConfig":
        r = d["r"]
        if "M_special" in d:
            m = str(d["M_special"])
        else:
            m_raw = d.get("M", "centroid")
            if isinstance(m_raw, (list, tuple)):
                m = "bary:" + ",".join(repr(float(v)) for v in m_raw)
            else:
                m = str(m_raw)
        return McConfig(
            r=math.inf if r == "inf" else float(r),
            m=m,
            n_list=tuple(int(x) for x in d["n"]),
            replicates=int(d.get("replicates", 1000)),
            seed=int(d.get("seed", 5)),
            d=int(d.get("d", 2)),
            mode=str(d.get("mode", "single")),
            anchors=int(d.get("anchors", 10)),
        )


@dataclass
class McReport:
    """Frequency tables of the domination number per sample size."""

    config: McConfig
    tables: dict[int, dict[int, int]]
    wall_time_s: float = 0.0
    version: str = _version

    def phat(self, n: int) -> dict[int, float]:
        tab = self.tables[n]
        total = sum(tab.values())
        return {k: c / total for k, c in sorted(tab.items())}

    def stderr(self, n: int) -> dict[int, float]:
        tab = self.tables[n]
        total = sum(tab.values())
        return {
            k: math.sqrt(max(p * (1.0 - p), 0.0) / total)
            for k, p in self.phat(n).items()
        }

    def mean_gamma(self, n: int) -> float:
        tab = self.tables[n]
        total = sum(tab.values())
        return sum(k * c for k, c in tab.items()) / total

    def var_gamma(self, n: int) -> float:
        mu = self.mean_gamma(n)
        tab = self.tables[n]
        total = sum(tab.values())
        return sum(c * (k - mu) ** 2 for k, c in tab.items()) / total

    def to_json_dict(self, include_timing: bool = True) -> dict:
        d = {
            "config": self.config.to_json_dict(),
            "version": self.version,
            "tables": {
                str(n): {str(k): c for k, c in sorted(tab.items())}
                for n, tab in sorted(self.tables.items())
            },
        }
        if include_timing:
            d["wall_time_s"] = self.wall_time_s
        return d

    def canonical_json(self) -> str:
        """Deterministic serialization (timing excluded), used for the
        byte-identity reproducibility checks."""
        return json.dumps(self.to_json_dict(include_timing=False), sort_keys=True)

    @staticmethod
    def from_json_dict(d: dict) -> "McReport":
        return McReport(
            config=McConfig.from_json_dict(d["config"]),
            tables={
                int(n): {int(k): int(c) for k, c in tab.items()}
                for n, tab in d["tables"].items()
            },
            wall_time_s=float(d.get("wall_time_s", 0.0)),
            version=str(d.get("version", _version)),
        )

    def csv_rows(self) -> list[tuple[int, int, int, float, float]]:
        rows = []
        for n in sorted(self.tables):
            ph, se = self.phat(n), self.stderr(n)
            for k in sorted(self.tables[n]):
                rows.append((n, k, self.tables[n][k], ph[k], se[k]))
        return rows

    def write_csv(self, path: str) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("n,k,count,phat,stderr\n")
            for n, k, c, p, s in self.csv_rows():
                fh.write(f"{n},{k},{c},{p!r},{s!r}\n")

    def write_json(self, path: str) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(self.to_json_dict(), fh, sort_keys=True)
            fh.write("\n")


def default_workers() -> int:
    env = os.environ.get("PCD_THREADS")
    if env:
        return max(1, int(env))
    return 1


def _chunk_ranges(replicates: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + CHUNK, replicates)) for lo in range(0, replicates, CHUNK)]


def _draw_batch(config: McConfig, n: int, lo: int, hi: int) -> np.ndarray:
    """Stack per-replicate draws lo..hi-1 into one (hi-lo, n, d+1) array."""
    out = np.empty((hi - lo, n, config.d + 1))
    for rep in range(lo, hi):
        rng = replicate_rng(config.seed, n, rep)
        if config.d == 2:
            out[rep - lo] = sample_uniform_triangle_bary(rng, n)
        else:
            out[rep - lo] = sample_uniform_simplex(config.d, rng, n)
    return out


def _single_chunk_counts(config: McConfig, m: np.ndarray, n: int, lo: int, hi: int) -> Counter:
    B = _draw_batch(config, n, lo, hi)
    gam = gamma_batch_d(B, config.r, None if config.d > 2 else m)
    return Counter(int(g) for g in gam)


def _multi_chunk_counts(config: McConfig, params: ProximityParams, n: int, lo: int, hi: int) -> Counter:
    counts: Counter = Counter()
    for rep in range(lo, hi):
        rng = replicate_rng(config.seed, n, rep)
        anchors = [Point2(x, y) for x, y in rng.random((config.anchors, 2))]
        data = [Point2(x, y) for x, y in rng.random((n, 2))]
        res = domination_multi(anchors, data, params)
        counts[res.total_gamma] += 1
    return counts


def run_mc(config: McConfig, workers: int | None = None) -> McReport:
    """Run the experiment and tabulate domination-number frequencies.

    Deterministic for a fixed (config, seed) regardless of worker count.
    """
    workers = workers or default_workers()
    m = config.resolved_m()
    params = None
    if config.mode == "multi":
        params = ProximityParams(config.r, resolve_m_spec(config.m, config.r))
    t0 = time.perf_counter()
    tables: dict[int, dict[int, int]] = {}
    for n in config.n_list:
        jobs = _chunk_ranges(config.replicates)
        if config.mode == "single":
            fn = lambda job, n=n: _single_chunk_counts(config, m, n, *job)
        else:
            fn = lambda job, n=n: _multi_chunk_counts(config, params, n, *job)
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                partials = list(pool.map(fn, jobs))
        else:
            partials = [fn(job) for job in jobs]
        total: Counter = Counter()
        for c in partials:
            total.update(c)
        tables[n] = dict(sorted(total.items()))
    return McReport(config=config, tables=tables, wall_time_s=time.perf_counter() - t0)


def trend_distinct_extrema(config: McConfig, workers: int | None = None) -> dict[int, float]:
    """Fraction of replicates whose three closest-to-edge extrema are
    three distinct sample points, per sample size (planar single mode)."""
    if config.d != 2 or config.mode != "single":
        raise ValueError("edge-extrema trend is defined for the planar single-triangle mode")
    out: dict[int, float] = {}
    for n in config.n_list:
        distinct = 0
        for lo, hi in _chunk_ranges(config.replicates):
            B = _draw_batch(config, n, lo, hi)
            ext = np.argmin(B, axis=1)  # (chunk, 3) indices of per-coordinate minima
            distinct += int(
                np.sum(
                    (ext[:, 0] != ext[:, 1])
                    & (ext[:, 0] != ext[:, 2])
                    & (ext[:, 1] != ext[:, 2])
                )
            )
        out[n] = distinct / config.replicates
    return out


def emit_table(report: McReport, path: str, fmt: str = "csv") -> str:
    """Write a report as CSV or JSON; returns the path written."""
    if fmt == "csv":
        report.write_csv(path)
    elif fmt == "json":
        report.write_json(path)
    else:
        raise ValueError(f"unknown table format {fmt!r}")
    return path


def pr_curve_rows(r_values, abs_tol: float = 1e-6) -> list[tuple[float, float]]:
    """(r, p_r) pairs for a plot-ready curve file."""
    from .asymptotics import p_r

    return [(float(r), p_r(float(r), abs_tol=abs_tol)) for r in r_values]


def write_pr_curve_csv(rows, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("r,p_r\n")
        for r, p in rows:
            fh.write(f"{r!r},{p!r}\n")
