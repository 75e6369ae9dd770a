"""Proportional-edge proximity catch digraphs over Delaunay triangulations:
region constructions, exact domination numbers, limit laws, and seeded
Monte-Carlo reproduction of the reference tables."""

__version__ = "0.1.0"

from .geometry import (  # noqa: F401
    AffineMap2,
    Bary3,
    BasicTriangleParams,
    GeometryError,
    Point2,
    Triangle2,
    barycentric,
    convex_hull,
    equilateral_triangle,
    phi_e,
    sample_uniform_triangle,
    to_basic_triangle,
)
from .delaunay import DelaunayTriangulation, delaunay  # noqa: F401
from .regions import (  # noqa: F401
    Gamma1Thresholds,
    MPlacement,
    ProximityParams,
    TrTriangle,
    arc_predicate,
    classify_M,
    edge_extrema,
    gamma1_contains,
    gamma1_thresholds,
    superset_contains,
    tr_triangle,
    tr_vertices_bary,
    vertex_region_of,
)
from .domination import (  # noqa: F401
    DominationResult,
    MultiTriangleResult,
    PcdInstance,
    build_arcs,
    domination_bruteforce,
    domination_exact,
    domination_multi,
)
from .asymptotics import (  # noqa: F401
    GammaLaw,
    MultiGammaLaw,
    asymptotic_law,
    law_moments,
    multi_law,
    p_r,
)
from .simplex import (  # noqa: F401
    SimplexD,
    arc_predicate_d,
    domination_bruteforce_d,
    domination_exact_d,
    sample_uniform_simplex,
)
from .mc import McConfig, McReport, replicate_rng, run_mc, trend_distinct_extrema  # noqa: F401
