"""Planar geometric substrate: points, triangles, barycentric coordinates,
similarity normalization to the basic/equilateral triangle, convex hulls,
and uniform sampling inside a triangle.

All downstream region predicates work in barycentric coordinates, so the
routines here are the single place where cartesian/barycentric conversions
and shape normalization happen.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

BARY_SUM_TOL = 1e-12
# |signed area| <= DEGENERACY_TOL * (bbox diagonal)^2 is rejected as degenerate
DEGENERACY_TOL = 1e-14

SQRT3 = math.sqrt(3.0)


class GeometryError(ValueError):
    """Raised for degenerate or otherwise invalid geometric input."""


@dataclass(frozen=True)
class Point2:
    """A point in the plane. Coordinates must be finite."""

    x: float
    y: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise GeometryError(f"non-finite coordinates ({self.x}, {self.y})")

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class Bary3:
    """Barycentric coordinates of a planar point relative to a triangle.

    Coordinates sum to 1 (within tolerance); the point lies in the closed
    triangle iff all three are >= -tolerance.
    """

    b1: float
    b2: float
    b3: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "b1", float(self.b1))
        object.__setattr__(self, "b2", float(self.b2))
        object.__setattr__(self, "b3", float(self.b3))
        s = self.b1 + self.b2 + self.b3
        if not math.isfinite(s) or abs(s - 1.0) > 1e-9:
            raise GeometryError(f"barycentric coordinates sum to {s}, not 1")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.b1, self.b2, self.b3)

    def __getitem__(self, j: int) -> float:
        return (self.b1, self.b2, self.b3)[j]

    def inside_closed(self, tol: float = BARY_SUM_TOL) -> bool:
        return min(self.b1, self.b2, self.b3) >= -tol


def _signed_area(a: Point2, b: Point2, c: Point2) -> float:
    return 0.5 * ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x))


@dataclass(frozen=True)
class Triangle2:
    """A non-degenerate triangle; vertex order is normalized to CCW."""

    v1: Point2
    v2: Point2
    v3: Point2

    def __post_init__(self) -> None:
        xs = (self.v1.x, self.v2.x, self.v3.x)
        ys = (self.v1.y, self.v2.y, self.v3.y)
        diag2 = (max(xs) - min(xs)) ** 2 + (max(ys) - min(ys)) ** 2
        area = _signed_area(self.v1, self.v2, self.v3)
        if abs(area) <= DEGENERACY_TOL * diag2 or area == 0.0:
            raise GeometryError("degenerate triangle (collinear vertices)")
        if area < 0.0:
            # normalize to counterclockwise: swap v2 and v3
            old_v2, old_v3 = self.v2, self.v3
            object.__setattr__(self, "v2", old_v3)
            object.__setattr__(self, "v3", old_v2)

    @property
    def vertices(self) -> tuple[Point2, Point2, Point2]:
        return (self.v1, self.v2, self.v3)

    @property
    def area(self) -> float:
        return _signed_area(self.v1, self.v2, self.v3)

    def to_cartesian(self, b: Bary3) -> Point2:
        return Point2(
            b.b1 * self.v1.x + b.b2 * self.v2.x + b.b3 * self.v3.x,
            b.b1 * self.v1.y + b.b2 * self.v2.y + b.b3 * self.v3.y,
        )


def equilateral_triangle() -> Triangle2:
    """The standard equilateral triangle T((0,0), (1,0), (1/2, sqrt(3)/2))."""
    return Triangle2(Point2(0.0, 0.0), Point2(1.0, 0.0), Point2(0.5, SQRT3 / 2.0))


@dataclass(frozen=True)
class BasicTriangleParams:
    """Parameters (c1, c2) of the basic triangle T((0,0), (1,0), (c1,c2)),
    with 0 < c1 <= 1/2, c2 > 0 and (1-c1)^2 + c2^2 <= 1."""

    c1: float
    c2: float

    def __post_init__(self) -> None:
        tol = 1e-9
        ok = (0.0 < self.c1 <= 0.5 + tol) and self.c2 > 0.0 and (
            (1.0 - self.c1) ** 2 + self.c2**2 <= 1.0 + tol
        )
        if not ok:
            raise GeometryError(f"invalid basic-triangle parameters ({self.c1}, {self.c2})")

    def triangle(self) -> Triangle2:
        return Triangle2(Point2(0.0, 0.0), Point2(1.0, 0.0), Point2(self.c1, self.c2))


EQUILATERAL_PARAMS = BasicTriangleParams(0.5, SQRT3 / 2.0)


@dataclass(frozen=True)
class AffineMap2:
    """Affine map p -> L p + t with invertible 2x2 linear part L."""

    a11: float
    a12: float
    a21: float
    a22: float
    tx: float
    ty: float

    def __post_init__(self) -> None:
        if self.det() == 0.0 or not math.isfinite(self.det()):
            raise GeometryError("affine map is singular")

    def det(self) -> float:
        return self.a11 * self.a22 - self.a12 * self.a21

    def apply(self, p: Point2) -> Point2:
        return Point2(
            self.a11 * p.x + self.a12 * p.y + self.tx,
            self.a21 * p.x + self.a22 * p.y + self.ty,
        )

    def compose(self, inner: "AffineMap2") -> "AffineMap2":
        """Map equal to self applied after ``inner``."""
        return AffineMap2(
            self.a11 * inner.a11 + self.a12 * inner.a21,
            self.a11 * inner.a12 + self.a12 * inner.a22,
            self.a21 * inner.a11 + self.a22 * inner.a21,
            self.a21 * inner.a12 + self.a22 * inner.a22,
            self.a11 * inner.tx + self.a12 * inner.ty + self.tx,
            self.a21 * inner.tx + self.a22 * inner.ty + self.ty,
        )

    def inverse(self) -> "AffineMap2":
        d = self.det()
        i11, i12, i21, i22 = self.a22 / d, -self.a12 / d, -self.a21 / d, self.a11 / d
        return AffineMap2(
            i11, i12, i21, i22, -(i11 * self.tx + i12 * self.ty), -(i21 * self.tx + i22 * self.ty)
        )

    @staticmethod
    def identity() -> "AffineMap2":
        return AffineMap2(1.0, 0.0, 0.0, 1.0, 0.0, 0.0)

    @staticmethod
    def from_triangles(src: Triangle2, dst: Triangle2) -> "AffineMap2":
        """The unique affine map sending src.v_i -> dst.v_i."""
        sm = np.array(
            [
                [src.v1.x, src.v1.y, 1.0],
                [src.v2.x, src.v2.y, 1.0],
                [src.v3.x, src.v3.y, 1.0],
            ]
        )
        dx = np.array([dst.v1.x, dst.v2.x, dst.v3.x])
        dy = np.array([dst.v1.y, dst.v2.y, dst.v3.y])
        cx = np.linalg.solve(sm, dx)
        cy = np.linalg.solve(sm, dy)
        return AffineMap2(cx[0], cx[1], cy[0], cy[1], cx[2], cy[2])


def barycentric(tri: Triangle2, p: Point2) -> Bary3:
    """Barycentric coordinates of p relative to tri (p = sum b_j v_j, sum b_j = 1)."""
    d = 2.0 * tri.area
    b1 = _signed_area(p, tri.v2, tri.v3) * 2.0 / d
    b2 = _signed_area(tri.v1, p, tri.v3) * 2.0 / d
    b3 = 1.0 - b1 - b2
    return Bary3(b1, b2, b3)


def _similarity_to_unit_base(a: Point2, b: Point2) -> AffineMap2:
    """Similarity (rotation + uniform scaling + translation) sending a -> (0,0), b -> (1,0)."""
    wx, wy = b.x - a.x, b.y - a.y
    n2 = wx * wx + wy * wy
    if n2 == 0.0:
        raise GeometryError("coincident vertices")
    # complex multiplication by conj(w)/|w|^2
    l11, l12 = wx / n2, wy / n2
    l21, l22 = -wy / n2, wx / n2
    return AffineMap2(l11, l12, l21, l22, -(l11 * a.x + l12 * a.y), -(l21 * a.x + l22 * a.y))


_REFLECT_Y = AffineMap2(1.0, 0.0, 0.0, -1.0, 0.0, 0.0)


def to_basic_triangle(tri: Triangle2) -> tuple[AffineMap2, BasicTriangleParams]:
    """Similarity transform (rigid motions + optional reflection + uniform
    scaling) taking ``tri`` onto the basic triangle T((0,0),(1,0),(c1,c2)).

    The six vertex orderings are tried in a fixed order; the first whose
    image satisfies the basic-triangle constraints wins, which makes the
    result deterministic. Uniform distributions are preserved.
    """
    verts = tri.vertices
    tol = 1e-12
    for i, j in ((0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)):
        k = 3 - i - j
        fmap = _similarity_to_unit_base(verts[i], verts[j])
        img = fmap.apply(verts[k])
        if img.y < 0.0:
            fmap = _REFLECT_Y.compose(fmap)
            img = Point2(img.x, -img.y)
        c1, c2 = img.x, img.y
        if (
            tol < c1 <= 0.5 + tol
            and c2 > tol
            and (1.0 - c1) ** 2 + c2**2 <= 1.0 + 1e-9
        ):
            return fmap, BasicTriangleParams(min(c1, 0.5), c2)
    raise GeometryError("no vertex ordering yields valid basic-triangle parameters")


def phi_e(params: BasicTriangleParams) -> AffineMap2:
    """The uniformity-preserving map taking the basic triangle to the
    standard equilateral triangle: (0,0) -> (0,0), (1,0) -> (1,0),
    (c1,c2) -> (1/2, sqrt(3)/2).

    Linear part [[1, (1-2 c1)/(2 c2)], [0, sqrt(3)/(2 c2)]].
    """
    return AffineMap2(
        1.0, (1.0 - 2.0 * params.c1) / (2.0 * params.c2), 0.0, SQRT3 / (2.0 * params.c2), 0.0, 0.0
    )


def convex_hull(points: Sequence[Point2]) -> list[Point2]:
    """Counterclockwise convex hull (Andrew's monotone chain).

    Collinear points interior to hull edges are dropped. Raises for fewer
    than 3 points or all-collinear input.
    """
    if len(points) < 3:
        raise GeometryError("convex hull needs at least 3 points")
    pts = sorted(set((p.x, p.y) for p in points))
    if len(pts) < 3:
        raise GeometryError("convex hull needs at least 3 distinct points")

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[tuple[float, float]] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[float, float]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise GeometryError("all points are collinear")
    return [Point2(x, y) for x, y in hull]


def polygon_area(points: Sequence[Point2]) -> float:
    """Shoelace area of a CCW polygon."""
    s = 0.0
    for p, q in zip(points, list(points[1:]) + [points[0]]):
        s += p.x * q.y - q.x * p.y
    return 0.5 * s


def sample_uniform_triangle(tri: Triangle2, rng: np.random.Generator) -> Point2:
    """One uniform draw in the closed triangle via the square-fold scheme:
    (u,v) uniform on the unit square, reflected to the lower-left half when
    u+v > 1, mapped by v1 + u (v2-v1) + v (v3-v1)."""
    u, v = rng.random(2)
    if u + v > 1.0:
        u, v = 1.0 - u, 1.0 - v
    return Point2(
        tri.v1.x + u * (tri.v2.x - tri.v1.x) + v * (tri.v3.x - tri.v1.x),
        tri.v1.y + u * (tri.v2.y - tri.v1.y) + v * (tri.v3.y - tri.v1.y),
    )


def sample_uniform_triangle_bary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Barycentric coordinates of ``n`` uniform draws, shape (n, 3).

    Identical square-fold construction as :func:`sample_uniform_triangle`,
    expressed directly in barycentric coordinates (= (1-u-v, u, v)).
    """
    uv = rng.random((n, 2))
    flip = uv.sum(axis=1) > 1.0
    uv[flip] = 1.0 - uv[flip]
    return np.column_stack([1.0 - uv[:, 0] - uv[:, 1], uv[:, 0], uv[:, 1]])


# ---------------------------------------------------------------------------
# point-set file I/O: CSV (two columns x,y, header optional) and JSON arrays


def read_points_csv(path: str) -> list[Point2]:
    pts: list[Point2] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh):
            line = line.strip()
            if not line:
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) < 2:
                raise GeometryError(f"{path}:{line_no + 1}: expected two columns")
            try:
                x, y = float(parts[0]), float(parts[1])
            except ValueError:
                if line_no == 0:  # tolerate a header row
                    continue
                raise GeometryError(f"{path}:{line_no + 1}: non-numeric row {line!r}")
            pts.append(Point2(x, y))
    return pts


def write_points_csv(points: Iterable[Point2], path: str, header: bool = True) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        if header:
            fh.write("x,y\n")
        for p in points:
            fh.write(f"{p.x!r},{p.y!r}\n")


def read_points_json(path: str) -> list[Point2]:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return [Point2(float(x), float(y)) for x, y in data]


def write_points_json(points: Iterable[Point2], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump([[p.x, p.y] for p in points], fh)
        fh.write("\n")
