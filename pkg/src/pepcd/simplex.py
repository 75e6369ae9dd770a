"""d-dimensional extension with the center of mass: uniform sampling in a
simplex, the barycentric arc predicate, and exact domination with the
a.s. bound gamma <= d+1.

Vertex regions generalize to {x : b_j(x) maximal} (the center-of-mass
specialization of the ratio rule), and the proximity region of x is the
sub-simplex anchored at vertex j scaled by r (1 - b_j(x)), i.e. it
catches z iff 1 - b_j(z) <= r (1 - b_j(x)). For d = 2 this reduces
exactly to the planar predicate with the centroid center.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .geometry import GeometryError
from .domination import BRUTE_FORCE_MAX_N, DominationResult
from .regions import MEMBERSHIP_EPS

BARY_SUM_TOL = 1e-12


@dataclass(frozen=True)
class SimplexD:
    """A d-simplex given by d+1 affinely independent vertices (rows)."""

    vertices: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[0] != v.shape[1] + 1:
            raise GeometryError("a d-simplex needs d+1 vertices of dimension d")
        edges = v[1:] - v[0]
        if abs(np.linalg.det(edges)) <= 1e-12:
            raise GeometryError("degenerate simplex (affinely dependent vertices)")

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def to_cartesian(self, bary: np.ndarray) -> np.ndarray:
        return np.asarray(bary, dtype=float) @ np.asarray(self.vertices, dtype=float)


def standard_simplex(d: int) -> SimplexD:
    """The corner simplex with vertices 0, e_1, ..., e_d."""
    v = np.zeros((d + 1, d))
    v[1:] = np.eye(d)
    return SimplexD(tuple(tuple(row) for row in v))


def validate_bary(b: np.ndarray, tol: float = BARY_SUM_TOL) -> bool:
    b = np.asarray(b, dtype=float)
    return bool(abs(b.sum() - 1.0) <= 1e-9 and (b >= -tol).all())


def sample_uniform_simplex(d: int, rng: np.random.Generator, n: int = 1) -> np.ndarray:
    """Barycentric coordinates of n uniform draws in a d-simplex, shape
    (n, d+1), via normalized exponential spacings."""
    e = rng.standard_exponential((n, d + 1))
    return e / e.sum(axis=1, keepdims=True)


def vertex_region_d(x: np.ndarray) -> int:
    """Center-of-mass vertex region: the argmax coordinate, ties to the
    smallest index."""
    return int(np.argmax(x))


def arc_predicate_d(r: float, x: np.ndarray, z: np.ndarray) -> bool:
    """True iff z lies in the proximity region of x (center of mass)."""
    z = np.asarray(z, dtype=float)
    if (z < -MEMBERSHIP_EPS).any():
        return False
    j = vertex_region_d(x)
    if np.isinf(r):
        if x[j] >= 1.0:
            return bool(z[j] >= 1.0 - MEMBERSHIP_EPS)
        return True
    return bool(1.0 - z[j] <= r * (1.0 - x[j]) + MEMBERSHIP_EPS)


def _coverage_d(points: np.ndarray, r: float) -> tuple[np.ndarray, np.ndarray]:
    """Region index per point and coverage matrix cov[i, z]."""
    B = np.asarray(points, dtype=float)
    n, _ = B.shape
    reg = np.argmax(B, axis=1)
    bx = B[np.arange(n), reg]
    if np.isinf(r):
        cov = np.ones((n, n), dtype=bool)
        for i in np.nonzero(bx >= 1.0)[0]:
            cov[i] = B[:, reg[i]] >= 1.0 - MEMBERSHIP_EPS
        return reg, cov
    thr = 1.0 - r * (1.0 - bx)
    cov = B[:, reg].T >= thr[:, None] - MEMBERSHIP_EPS
    return reg, cov


def candidate_indices_d(points: np.ndarray) -> list[int]:
    B = np.asarray(points, dtype=float)
    reg = np.argmax(B, axis=1)
    cands = []
    for j in range(B.shape[1]):
        in_j = np.nonzero(reg == j)[0]
        if in_j.size:
            cands.append(int(in_j[np.argmin(B[in_j, j])]))
    return cands


def _dominates(cov: np.ndarray, subset) -> bool:
    covered = np.zeros(cov.shape[1], dtype=bool)
    for i in subset:
        covered |= cov[i]
        covered[i] = True
    return bool(covered.all())


def domination_exact_d(points: np.ndarray, r: float) -> DominationResult:
    """Exact domination number in a simplex via the per-region candidate
    set (same nesting argument as in the plane); gamma <= d+1."""
    B = np.asarray(points, dtype=float)
    if B.ndim != 2 or B.shape[0] == 0:
        raise ValueError("domination of an empty point set is undefined")
    _, cov = _coverage_d(B, r)
    cands = sorted(candidate_indices_d(B))
    for size in range(1, len(cands) + 1):
        for subset in combinations(cands, size):
            if _dominates(cov, subset):
                return DominationResult(size, tuple(subset))
    raise AssertionError("candidate set failed to dominate (unreachable)")


def domination_bruteforce_d(points: np.ndarray, r: float) -> DominationResult:
    """Exhaustive oracle over all point subsets in increasing size."""
    B = np.asarray(points, dtype=float)
    n = B.shape[0]
    if n == 0:
        raise ValueError("domination of an empty point set is undefined")
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force limited to n <= {BRUTE_FORCE_MAX_N}, got {n}")
    _, cov = _coverage_d(B, r)
    for size in range(1, n + 1):
        for subset in combinations(range(n), size):
            if _dominates(cov, subset):
                return DominationResult(size, tuple(subset))
    raise AssertionError("unreachable: the full set dominates itself")


def gamma_batch_d(B: np.ndarray, r: float, m: np.ndarray | None = None) -> np.ndarray:
    """Exact domination numbers for a batch of replicates.

    B has shape (reps, n, d+1) of barycentric coordinates; the result is
    the per-replicate domination number, computed with the same candidate
    logic as :func:`domination_exact_d` but vectorized across replicates.
    An explicit center ``m`` (d+1 positive coordinates) switches the
    vertex regions to the general ratio rule; the default is the center
    of mass.
    """
    reps, n, k = B.shape
    reg = np.argmax(B if m is None else B / np.asarray(m, dtype=float), axis=2)
    masked = np.where(reg[:, :, None] == np.arange(k), B, np.inf)
    u_b = masked.min(axis=1)  # (reps, k); inf where the region is empty
    nonempty = np.isfinite(u_b)
    if np.isinf(r):
        cov = np.broadcast_to(nonempty[:, None, :], (reps, n, k)).copy()
    else:
        thr = 1.0 - r * (1.0 - u_b)
        cov = (B >= thr[:, None, :] - MEMBERSHIP_EPS) & nonempty[:, None, :]
    full = cov.all(axis=1)  # (reps, k): candidate j alone dominates
    gamma = np.full(reps, k, dtype=np.int64)
    done = full.any(axis=1)
    gamma[done] = 1
    for size in range(2, k):
        if done.all():
            break
        hit = np.zeros(reps, dtype=bool)
        for subset in combinations(range(k), size):
            u = cov[:, :, subset[0]]
            for j in subset[1:]:
                u = u | cov[:, :, j]
            hit |= u.all(axis=1)
        newly = hit & ~done
        gamma[newly] = size
        done |= newly
    # replicates needing all k candidates keep gamma = k, but cap by the
    # number of nonempty regions (the full candidate set always dominates)
    cap = np.maximum(nonempty.sum(axis=1), 1)
    return np.minimum(gamma, cap)
