"""Incremental Bowyer-Watson Delaunay triangulation with robust predicates.

Points are inserted in input order. The triangulation is maintained with
a single symbolic ghost vertex at infinity: every hull edge carries a
ghost triangle, and the in-circle test against a ghost triangle reduces
to a half-plane test on its real edge. This keeps hull triangles with
huge circumcircles intact (a finite super-triangle would lose them) and
makes outside-the-hull insertions a connected cavity.

Predicates fall back to exact rational arithmetic when the floating-point
determinant is too small to trust. Near-cocircular configurations (within
1e-12 of zero after normalization) are treated as "outside", i.e. the
existing diagonal is kept, which pins down a deterministic tie-break for
inputs like the corners of a square.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .geometry import GeometryError, Point2, convex_hull, polygon_area

COCIRCLE_TOL = 1e-12  # |normalized in-circle det| below this counts as cocircular
EXACT_FALLBACK_TOL = 1e-9  # below this, recompute the determinant exactly


def _incircle_det_float(ax, ay, bx, by, cx, cy, dx, dy) -> tuple[float, float]:
    """In-circle determinant for CCW triangle (a,b,c) and query d.

    Positive means d is strictly inside the circumcircle. Returns the
    determinant and a magnitude scale for normalization.
    """
    adx, ady = ax - dx, ay - dy
    bdx, bdy = bx - dx, by - dy
    cdx, cdy = cx - dx, cy - dy
    ad2 = adx * adx + ady * ady
    bd2 = bdx * bdx + bdy * bdy
    cd2 = cdx * cdx + cdy * cdy
    det = (
        ad2 * (bdx * cdy - bdy * cdx)
        - bd2 * (adx * cdy - ady * cdx)
        + cd2 * (adx * bdy - ady * bdx)
    )
    scale = (
        ad2 * (abs(bdx * cdy) + abs(bdy * cdx))
        + bd2 * (abs(adx * cdy) + abs(ady * cdx))
        + cd2 * (abs(adx * bdy) + abs(ady * bdx))
    )
    return det, scale


def _incircle_det_exact(ax, ay, bx, by, cx, cy, dx, dy) -> int:
    """Sign of the in-circle determinant via exact rational arithmetic."""
    ax, ay, bx, by, cx, cy, dx, dy = (
        Fraction(v) for v in (ax, ay, bx, by, cx, cy, dx, dy)
    )
    adx, ady = ax - dx, ay - dy
    bdx, bdy = bx - dx, by - dy
    cdx, cdy = cx - dx, cy - dy
    det = (
        (adx * adx + ady * ady) * (bdx * cdy - bdy * cdx)
        - (bdx * bdx + bdy * bdy) * (adx * cdy - ady * cdx)
        + (cdx * cdx + cdy * cdy) * (adx * bdy - ady * bdx)
    )
    return (det > 0) - (det < 0)


def _orient_float(ax, ay, bx, by, cx, cy) -> float:
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def _orient_exact(ax, ay, bx, by, cx, cy) -> int:
    ax, ay, bx, by, cx, cy = (Fraction(v) for v in (ax, ay, bx, by, cx, cy))
    det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (det > 0) - (det < 0)


def _orientation_sign(a: Point2, b: Point2, c: Point2, scale: float) -> int:
    o = _orient_float(a.x, a.y, b.x, b.y, c.x, c.y)
    if abs(o) <= 1e-12 * scale:
        return _orient_exact(a.x, a.y, b.x, b.y, c.x, c.y)
    return 1 if o > 0 else -1


def in_circumcircle(a: Point2, b: Point2, c: Point2, d: Point2) -> bool:
    """True iff d lies strictly inside the circumcircle of CCW (a,b,c).

    Values within COCIRCLE_TOL of zero (after normalization) are treated
    as outside (no flip), per the documented cocircular tie-break.
    """
    det, scale = _incircle_det_float(a.x, a.y, b.x, b.y, c.x, c.y, d.x, d.y)
    if scale == 0.0:
        return False
    if abs(det) <= COCIRCLE_TOL * scale:
        return False
    if abs(det) <= EXACT_FALLBACK_TOL * scale:
        sign = _incircle_det_exact(a.x, a.y, b.x, b.y, c.x, c.y, d.x, d.y)
        return sign > 0
    return det > 0.0


@dataclass
class DelaunayTriangulation:
    """Triangulation of anchor points: CCW vertex-index triples plus a
    cell-to-cell adjacency map (shared-edge neighbors, -1 for hull edges)."""

    points: list[Point2]
    cells: list[tuple[int, int, int]]
    adjacency: dict[int, tuple[int, int, int]] = field(default_factory=dict)

    @property
    def n_cells(self) -> int:
        return len(self.cells)

    def cell_triangle(self, idx: int):
        from .geometry import Triangle2

        i, j, k = self.cells[idx]
        return Triangle2(self.points[i], self.points[j], self.points[k])

    def total_cell_area(self) -> float:
        area = 0.0
        for i, j, k in self.cells:
            a, b, c = self.points[i], self.points[j], self.points[k]
            area += 0.5 * abs(_orient_float(a.x, a.y, b.x, b.y, c.x, c.y))
        return area

    def hull_area(self) -> float:
        return polygon_area(convex_hull(self.points))

    def to_json_dict(self) -> dict:
        return {
            "points": [[p.x, p.y] for p in self.points],
            "cells": [list(c) for c in self.cells],
        }

    def write_json(self, path: str) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(self.to_json_dict(), fh)
            fh.write("\n")


def _build_adjacency(cells: list[tuple[int, int, int]]) -> dict[int, tuple[int, int, int]]:
    edge_owner: dict[tuple[int, int], int] = {}
    neighbors = {ci: [-1, -1, -1] for ci in range(len(cells))}
    for ci, (i, j, k) in enumerate(cells):
        for slot, (u, v) in enumerate(((i, j), (j, k), (k, i))):
            key = (min(u, v), max(u, v))
            if key in edge_owner:
                cj = edge_owner[key]
                neighbors[ci][slot] = cj
                other = cells[cj]
                for s2, (u2, v2) in enumerate(
                    ((other[0], other[1]), (other[1], other[2]), (other[2], other[0]))
                ):
                    if (min(u2, v2), max(u2, v2)) == key:
                        neighbors[cj][s2] = ci
            else:
                edge_owner[key] = ci
    return {ci: tuple(ns) for ci, ns in neighbors.items()}


def delaunay(points: Sequence[Point2]) -> DelaunayTriangulation:
    """Delaunay-triangulate >= 3 points via incremental Bowyer-Watson.

    Deterministic for a fixed input ordering. Raises GeometryError for
    fewer than 3 points or an all-collinear configuration. Exact duplicate
    points are skipped (the tiling is unaffected).
    """
    pts = list(points)
    n = len(pts)
    if n < 3:
        raise GeometryError("Delaunay triangulation needs at least 3 points")
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
    scale = span * span
    GHOST = n

    # seed with the first non-degenerate triple in input order
    i1 = next((i for i in range(1, n) if pts[i].as_tuple() != pts[0].as_tuple()), None)
    if i1 is None:
        raise GeometryError("all points coincide")
    i2 = next(
        (
            i
            for i in range(i1 + 1, n)
            if _orientation_sign(pts[0], pts[i1], pts[i], scale) != 0
        ),
        None,
    )
    if i2 is None:
        raise GeometryError("all points are collinear")
    if _orientation_sign(pts[0], pts[i1], pts[i2], scale) > 0:
        a, b, c = 0, i1, i2
    else:
        a, b, c = 0, i2, i1
    # real seed triangle CCW plus the three ghost triangles on its hull
    triangles: list[tuple[int, int, int]] = [
        (a, b, c),
        (b, a, GHOST),
        (c, b, GHOST),
        (a, c, GHOST),
    ]

    def cavity_test(tri: tuple[int, int, int], p: Point2) -> bool:
        """In-circle test with the ghost vertex interpreted symbolically:
        a ghost triangle's circumcircle is the open half-plane left of its
        directed real edge, plus the open edge segment itself."""
        if GHOST not in tri:
            ta, tb, tc = (pts[t] for t in tri)
            return in_circumcircle(ta, tb, tc, p)
        idx = tri.index(GHOST)
        u = pts[tri[(idx + 1) % 3]]
        v = pts[tri[(idx + 2) % 3]]
        s = _orientation_sign(u, v, p, scale)
        if s > 0:
            return True
        if s == 0:
            inside_x = min(u.x, v.x) <= p.x <= max(u.x, v.x)
            inside_y = min(u.y, v.y) <= p.y <= max(u.y, v.y)
            at_endpoint = (p.x, p.y) in ((u.x, u.y), (v.x, v.y))
            return inside_x and inside_y and not at_endpoint
        return False

    for pi in range(n):
        if pi in (0, i1, i2):
            continue
        p = pts[pi]
        bad = [ti for ti, tri in enumerate(triangles) if cavity_test(tri, p)]
        if not bad:
            # exact duplicate of an already-inserted vertex
            continue
        bad_set = set(bad)
        edge_count: dict[tuple[int, int], int] = {}
        for ti in bad:
            i, j, k = triangles[ti]
            for u, v in ((i, j), (j, k), (k, i)):
                key = (min(u, v), max(u, v))
                edge_count[key] = edge_count.get(key, 0) + 1
        boundary: list[tuple[int, int]] = []
        for ti in bad:
            i, j, k = triangles[ti]
            for u, v in ((i, j), (j, k), (k, i)):
                if edge_count[(min(u, v), max(u, v))] == 1:
                    boundary.append((u, v))
        triangles = [t for ti, t in enumerate(triangles) if ti not in bad_set]
        # the fan (u, v, p) preserves cyclic orientation for real and ghost
        # triangles alike
        for u, v in boundary:
            triangles.append((u, v, pi))

    cells = sorted(tuple(sorted(t)) for t in triangles if GHOST not in t)
    cells_ccw: list[tuple[int, int, int]] = []
    for i, j, k in cells:
        if _orientation_sign(pts[i], pts[j], pts[k], scale) < 0:
            cells_ccw.append((i, k, j))
        else:
            cells_ccw.append((i, j, k))
    tri = DelaunayTriangulation(points=pts, cells=cells_ccw)
    tri.adjacency = _build_adjacency(cells_ccw)
    return tri
