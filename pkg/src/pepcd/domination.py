"""Digraph construction and exact domination-number computation.

Within a vertex region, proximity regions are nested: if x and u lie in
region j and b_j(u) <= b_j(x), then the region of u contains the region
of x, and u also catches x itself (since r >= 1). Replacing any member
of a dominating set by its region's minimizer therefore preserves
domination, so some minimum dominating set lives inside the candidate
set {U_j = argmin of b_j within region j}. The exact solver searches
subsets of those (at most three) candidates in increasing size; the
brute-force oracle searches subsets of all points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from .delaunay import DelaunayTriangulation, delaunay
from .geometry import Bary3, GeometryError, Point2, Triangle2, barycentric
from .regions import MEMBERSHIP_EPS, ProximityParams

BRUTE_FORCE_MAX_N = 25


@dataclass(frozen=True)
class DominationResult:
    gamma: int
    witness: tuple[int, ...]


@dataclass
class PcdInstance:
    """A triangle, proximity parameters, and a finite point set, with
    cached barycentric coordinates. The arc set is derived lazily and
    cached (the instance owns its digraph)."""

    triangle: Triangle2
    params: ProximityParams
    points: list[Point2]
    bary: list[Bary3] = field(default_factory=list)
    _arcs: list[tuple[int, int]] | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if not self.bary:
            self.bary = [barycentric(self.triangle, p) for p in self.points]
        for i, b in enumerate(self.bary):
            if not b.inside_closed(1e-9):
                raise GeometryError(f"point {i} lies outside the closed triangle")

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def arcs(self) -> list[tuple[int, int]]:
        if self._arcs is None:
            self._arcs = build_arcs(self)
        return self._arcs

    def bary_matrix(self) -> np.ndarray:
        return np.array([b.as_tuple() for b in self.bary], dtype=float)


def _regions_and_coverage(instance: PcdInstance) -> tuple[np.ndarray, np.ndarray]:
    """Vertex-region index per point and the n x n coverage matrix
    cov[i, z] = (z is in the proximity region of i), via the same
    barycentric threshold as the scalar arc predicate."""
    B = instance.bary_matrix()
    n = B.shape[0]
    m = np.array(instance.params.m.as_tuple())
    ratios = B / m
    best = ratios.max(axis=1, keepdims=True)
    reg = np.argmax(ratios >= best, axis=1)  # ties -> smallest index
    bx = B[np.arange(n), reg]
    if instance.params.is_infinite:
        cov = np.ones((n, n), dtype=bool)
        at_vertex = bx >= 1.0
        if at_vertex.any():
            for i in np.nonzero(at_vertex)[0]:
                cov[i] = B[:, reg[i]] >= 1.0 - MEMBERSHIP_EPS
        return reg, cov
    thr = 1.0 - instance.params.r * (1.0 - bx)  # z covered iff b_reg(i)(z) >= thr_i
    cov = B[:, reg].T >= thr[:, None] - MEMBERSHIP_EPS
    return reg, cov


def build_arcs(instance: PcdInstance) -> list[tuple[int, int]]:
    """All arcs (i, j), i != j, with point j inside the proximity region
    of point i. Sorted lexicographically."""
    _, cov = _regions_and_coverage(instance)
    np.fill_diagonal(cov, False)
    return [(int(i), int(j)) for i, j in np.argwhere(cov)]


def out_neighborhoods(instance: PcdInstance) -> list[list[int]]:
    _, cov = _regions_and_coverage(instance)
    np.fill_diagonal(cov, False)
    return [list(np.nonzero(cov[i])[0]) for i in range(instance.n)]


def candidate_indices(instance: PcdInstance) -> list[int]:
    """Per nonempty vertex region, the index minimizing that region's
    barycentric coordinate (ties to the smallest point index)."""
    B = instance.bary_matrix()
    m = np.array(instance.params.m.as_tuple())
    ratios = B / m
    best = ratios.max(axis=1, keepdims=True)
    reg = np.argmax(ratios >= best, axis=1)
    cands = []
    for j in range(3):
        in_j = np.nonzero(reg == j)[0]
        if in_j.size:
            cands.append(int(in_j[np.argmin(B[in_j, j])]))
    return cands


def _check_dominates(cov: np.ndarray, subset: Sequence[int]) -> bool:
    covered = np.zeros(cov.shape[1], dtype=bool)
    for i in subset:
        covered |= cov[i]
        covered[i] = True  # a vertex always dominates itself
    return bool(covered.all())


def domination_exact(instance: PcdInstance) -> DominationResult:
    """Exact domination number via the candidate set, with the
    lexicographically smallest minimum dominating candidate subset as
    witness."""
    if instance.n == 0:
        raise ValueError("domination of an empty point set is undefined")
    _, cov = _regions_and_coverage(instance)
    cands = sorted(candidate_indices(instance))
    for size in range(1, len(cands) + 1):
        for subset in combinations(cands, size):
            if _check_dominates(cov, subset):
                return DominationResult(size, tuple(subset))
    raise AssertionError("candidate set failed to dominate (unreachable)")


def domination_bruteforce(instance: PcdInstance) -> DominationResult:
    """True minimum dominating set by exhaustive subset search in
    increasing size. Guarded to n <= 25."""
    n = instance.n
    if n == 0:
        raise ValueError("domination of an empty point set is undefined")
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force limited to n <= {BRUTE_FORCE_MAX_N}, got {n}")
    _, cov = _regions_and_coverage(instance)
    for size in range(1, n + 1):
        for subset in combinations(range(n), size):
            if _check_dominates(cov, subset):
                return DominationResult(size, tuple(subset))
    raise AssertionError("unreachable: the full set dominates itself")


@dataclass
class CellResult:
    cell_index: int
    point_indices: list[int]
    result: DominationResult | None  # None for empty cells


@dataclass
class MultiTriangleResult:
    triangulation: DelaunayTriangulation
    cells: list[CellResult]
    total_gamma: int
    kept: int
    discarded: int


def locate_points(
    tri: DelaunayTriangulation, data: Sequence[Point2], tol: float = 1e-12
) -> tuple[dict[int, list[int]], list[int]]:
    """Assign each data point to the containing Delaunay cell.

    Points on a shared edge go to the incident cell with the smallest
    index (cells are scanned in index order); points outside every cell
    are reported as discarded.
    """
    assignment: dict[int, list[int]] = {ci: [] for ci in range(tri.n_cells)}
    discarded: list[int] = []
    cell_tris = [tri.cell_triangle(ci) for ci in range(tri.n_cells)]
    for pi, p in enumerate(data):
        for ci, ct in enumerate(cell_tris):
            if barycentric(ct, p).inside_closed(tol):
                assignment[ci].append(pi)
                break
        else:
            discarded.append(pi)
    return assignment, discarded


def domination_multi(
    anchors: Sequence[Point2], data: Sequence[Point2], params: ProximityParams
) -> MultiTriangleResult:
    """Delaunay-triangulate the anchors, keep the data points inside the
    hull, and sum the per-cell domination numbers. The center M is reused
    per cell through its barycentric coordinates."""
    tri = delaunay(anchors)
    assignment, discarded = locate_points(tri, data)
    cells: list[CellResult] = []
    total = 0
    for ci in range(tri.n_cells):
        idxs = assignment[ci]
        if not idxs:
            cells.append(CellResult(ci, [], None))
            continue
        inst = PcdInstance(tri.cell_triangle(ci), params, [data[i] for i in idxs])
        res = domination_exact(inst)
        total += res.gamma
        cells.append(CellResult(ci, idxs, res))
    kept = sum(len(c.point_indices) for c in cells)
    return MultiTriangleResult(tri, cells, total, kept, len(discarded))
