"""Core constructions for the expansion-parametrized proximity map:
vertex regions around a center M, the arc predicate, the inner triangle
of centers with empty superset region, the superset region itself, and
the region of points whose proximity region swallows a whole point set.

Everything is expressed in barycentric coordinates, where the geometry
collapses to elementary inequalities:

* vertex region of x: the index j maximizing b_j(x) / m_j;
* arc from x to z:    1 - b_j(z) <= r (1 - b_j(x)) with j = region of x;
* superset region:    b_j(x) <= 1 - 1/r;
* inner triangle:     {b : min_j b_j >= (r-1)/r}, whose vertices place
  (2-r)/r at one coordinate and (r-1)/r at the other two.

The barycentric formulation makes all predicates exactly invariant under
affine maps applied jointly to the triangle and its points, which is the
operational content of the geometry-invariance theorem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from numbers import Rational
from typing import Sequence

from .geometry import Bary3, BasicTriangleParams, EQUILATERAL_PARAMS, Point2

MEMBERSHIP_EPS = 1e-12  # absolute slack for region-membership comparisons
CLASSIFY_TOL = 1e-9  # float tolerance for classifying M against the inner triangle


@dataclass(frozen=True)
class ProximityParams:
    """Expansion factor r in [1, inf] and center M (strictly interior,
    in barycentric form)."""

    r: float
    m: Bary3

    def __post_init__(self) -> None:
        if not (self.r >= 1.0):
            raise ValueError(f"expansion factor must be >= 1, got {self.r}")
        if min(self.m.b1, self.m.b2, self.m.b3) <= 0.0:
            raise ValueError("center M must be strictly interior to the triangle")

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.r)


CENTROID = Bary3(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0)


def centroid_params(r: float) -> ProximityParams:
    return ProximityParams(r, CENTROID)


def vertex_region_of(params: ProximityParams, b: Bary3) -> int:
    """Index in {0,1,2} of the M-vertex region containing b.

    The region of vertex j is {x : b_j(x)/m_j >= b_k(x)/m_k for all k};
    boundary ties go to the smallest index.
    """
    m = params.m
    ratios = (b.b1 / m.b1, b.b2 / m.b2, b.b3 / m.b3)
    best = max(ratios)
    for j in range(3):
        if ratios[j] >= best:
            return j
    return 2  # unreachable


def arc_predicate(params: ProximityParams, x: Bary3, z: Bary3) -> bool:
    """True iff z lies in the proximity region of x.

    The region of x (anchored at vertex j of x's vertex region, similar to
    the whole triangle, expanded by r and clipped) contains exactly the
    points z with 1 - b_j(z) <= r (1 - b_j(x)). A point sitting on a
    triangle vertex has the singleton region {itself} for every r.
    """
    if not z.inside_closed(MEMBERSHIP_EPS):
        return False
    j = vertex_region_of(params, x)
    bx = x[j]
    if params.is_infinite:
        if bx >= 1.0:  # x on a triangle vertex: region degenerates to {x}
            return z[j] >= 1.0 - MEMBERSHIP_EPS
        return True
    return 1.0 - z[j] <= params.r * (1.0 - bx) + MEMBERSHIP_EPS


class MPlacement(Enum):
    """Position of a center M relative to the inner triangle of a given r."""

    OUTSIDE = "outside"
    INTERIOR = "interior"
    BOUNDARY_NON_VERTEX = "boundary-non-vertex"
    VERTEX = "vertex"


@dataclass(frozen=True)
class TrTriangle:
    """The inner triangle of centers whose superset region is empty.

    Nonempty (positive area) iff r < 3/2; at r = 3/2 it degenerates to a
    single point (all three vertices coincide); empty for r > 3/2.
    Vertices are given in the basic triangle T((0,0),(1,0),(c1,c2)).
    """

    r: float
    t1: Point2 | None
    t2: Point2 | None
    t3: Point2 | None

    @property
    def is_empty(self) -> bool:
        return self.r >= 1.5

    @property
    def is_degenerate_point(self) -> bool:
        return self.r == 1.5


def tr_vertices_bary(r) -> tuple[tuple, tuple, tuple]:
    """Barycentric coordinates of the inner triangle's vertices.

    Vertex j carries (2-r)/r at coordinate j and (r-1)/r elsewhere. Exact
    (Fraction) when r is rational. Only meaningful for r in [1, 3/2].
    """
    if isinstance(r, Rational) and not isinstance(r, float):
        lo = (r - 1) / Fraction(r)
        hi = (2 - r) / Fraction(r)
    else:
        lo = (r - 1.0) / r
        hi = (2.0 - r) / r
    return (
        (hi, lo, lo),
        (lo, hi, lo),
        (lo, lo, hi),
    )


def tr_triangle(r: float, basic: BasicTriangleParams = EQUILATERAL_PARAMS) -> TrTriangle:
    """Vertices t_j(r) of the inner triangle in the basic triangle (c1, c2).

    For r < 3/2 the triangle is cut out by y >= c2 (r-1)/r,
    y <= c2 (1 - r x)/(r (1-c1)) and y <= c2 (r (x-1) + 1)/(r c1); its
    vertices are

        t1 = ((r-1)(1+c1)/r,        c2 (r-1)/r)
        t2 = ((2-r+c1(r-1))/r,      c2 (r-1)/r)
        t3 = ((c1(2-r)+r-1)/r,      c2 (2-r)/r)

    The t3 ordinate follows from intersecting the two upper constraint
    lines; note that it is c2 (2-r)/r, increasing toward the apex, not the
    sign-flipped variant that would leave the triangle for r < 2.
    """
    if r < 1.0:
        raise ValueError(f"expansion factor must be >= 1, got {r}")
    if r > 1.5:
        return TrTriangle(r, None, None, None)
    c1, c2 = basic.c1, basic.c2
    t1 = Point2((r - 1.0) * (1.0 + c1) / r, c2 * (r - 1.0) / r)
    t2 = Point2((2.0 - r + c1 * (r - 1.0)) / r, c2 * (r - 1.0) / r)
    t3 = Point2((c1 * (2.0 - r) + r - 1.0) / r, c2 * (2.0 - r) / r)
    return TrTriangle(r, t1, t2, t3)


def classify_M(r, m, basic: BasicTriangleParams | None = None, tol: float = CLASSIFY_TOL) -> MPlacement:
    """Classify a center against the inner triangle for expansion r.

    ``m`` is a Bary3 or a 3-tuple of coordinates; when both r and all
    coordinates are rational (int/Fraction), comparisons are exact,
    otherwise the float tolerance applies. The basic-triangle parameters
    do not influence the classification (it is affine-invariant), and are
    accepted only for interface symmetry with :func:`tr_triangle`.
    """
    coords = m.as_tuple() if isinstance(m, Bary3) else tuple(m)
    exact = (
        isinstance(r, Rational)
        and not isinstance(r, float)
        and all(isinstance(c, Rational) and not isinstance(c, float) for c in coords)
    )
    if exact:
        thr = (Fraction(r) - 1) / Fraction(r)
        below = any(c < thr for c in coords)
        n_eq = sum(1 for c in coords if c == thr)
    else:
        r = float(r)
        thr = (r - 1.0) / r
        below = any(c < thr - tol for c in coords)
        n_eq = sum(1 for c in coords if abs(c - thr) <= tol)
    if below:
        return MPlacement.OUTSIDE
    if n_eq == 0:
        return MPlacement.INTERIOR
    if n_eq == 1:
        return MPlacement.BOUNDARY_NON_VERTEX
    return MPlacement.VERTEX


def superset_contains(params: ProximityParams, x: Bary3) -> bool:
    """True iff the proximity region of x is the whole triangle, i.e.
    b_j(x) <= 1 - 1/r with j = vertex region of x."""
    j = vertex_region_of(params, x)
    if params.is_infinite:
        return True
    return x[j] <= 1.0 - 1.0 / params.r + MEMBERSHIP_EPS


@dataclass(frozen=True)
class Gamma1Thresholds:
    """Per-vertex-region barycentric ceilings tau_j = 1 - (1 - beta_j)/r,
    beta_j the minimum j-th coordinate over the generating point set."""

    tau1: float
    tau2: float
    tau3: float

    def __getitem__(self, j: int) -> float:
        return (self.tau1, self.tau2, self.tau3)[j]


def gamma1_thresholds(params: ProximityParams, points: Sequence[Bary3]) -> Gamma1Thresholds:
    """Thresholds describing the region of points whose proximity region
    contains every generating point. Only the three closest-to-edge
    extrema (per-coordinate minima) enter."""
    if not points:
        raise ValueError("gamma1_thresholds needs a nonempty point list")
    taus = []
    for j in range(3):
        beta = min(p[j] for p in points)
        if params.is_infinite:
            taus.append(1.0)
        else:
            taus.append(1.0 - (1.0 - beta) / params.r)
    return Gamma1Thresholds(*taus)


def gamma1_contains(params: ProximityParams, thresholds: Gamma1Thresholds, z: Bary3) -> bool:
    """True iff z's proximity region contains the generating set, i.e.
    b_j(z) <= tau_j with j = vertex region of z."""
    j = vertex_region_of(params, z)
    return z[j] <= thresholds[j] + MEMBERSHIP_EPS


def edge_extrema(points: Sequence[Bary3]) -> tuple[int, int, int]:
    """Indices of the points closest to each edge (argmin of each
    barycentric coordinate); ties go to the smallest point index."""
    if not points:
        raise ValueError("edge_extrema needs a nonempty point list")
    out = []
    for j in range(3):
        best, best_i = math.inf, -1
        for i, p in enumerate(points):
            if p[j] < best:
                best, best_i = p[j], i
        out.append(best_i)
    return (out[0], out[1], out[2])


def resolve_m_spec(spec, r) -> Bary3:
    """Resolve a center specification to barycentric coordinates.

    Accepts 'centroid', 't1'/'t2'/'t3' (resolved against r; error when the
    inner triangle is empty), 'bary:m1,m2,m3', 'point:x,y' (cartesian in
    the standard equilateral triangle), a 3-sequence of barycentric
    coordinates, or a Bary3.
    """
    if isinstance(spec, Bary3):
        return spec
    if isinstance(spec, str):
        name = spec.strip().lower()
        if name == "centroid":
            return CENTROID
        if name in ("t1", "t2", "t3"):
            rf = float(r)
            if math.isinf(rf) or rf > 1.5:
                raise ValueError(f"{name} undefined: inner triangle empty for r={r}")
            verts = tr_vertices_bary(r)
            v = verts[int(name[1]) - 1]
            return Bary3(float(v[0]), float(v[1]), float(v[2]))
        if name.startswith("bary:"):
            return resolve_m_spec(tuple(float(v) for v in name[len("bary:"):].split(",")), r)
        if name.startswith("point:"):
            from .geometry import barycentric, equilateral_triangle

            x, y = (float(v) for v in name[len("point:"):].split(","))
            return barycentric(equilateral_triangle(), Point2(x, y))
        raise ValueError(f"unknown center specification {spec!r}")
    coords = tuple(float(c) for c in spec)
    if len(coords) != 3:
        raise ValueError("barycentric center needs exactly 3 coordinates")
    s = sum(coords)
    if s <= 0:
        raise ValueError("barycentric center coordinates must be positive")
    return Bary3(coords[0] / s, coords[1] / s, coords[2] / s)
