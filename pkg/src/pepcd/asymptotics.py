"""Limit law of the domination number: classification by center placement,
numerical evaluation of the nondegenerate success probability, moments,
and the multi-triangle lift.

The nondegenerate case (center at a vertex of the inner triangle) has

    p_r = lim P(gamma = 2)
        = (64/9) (r/(r-1))^2 int_0^inf int_0^inf w1 w3
          exp(-(4 r / (3 (r-1))) (w1^2 + w3^2 + 2 r (r-1) w1 w3)) dw1 dw3

for r in (1, 3/2); the exponent must decay for the integral to exist.
At r = 3/2 the inner triangle collapses to the centroid, the three vertex
cases coincide, and three candidate pairs (not one) can witness gamma = 2.
Writing q = exp(-2 rho V_i V_j) with rho = r (r-1) for the conditional
probability that pair (i, j) dominates, where V_1, V_2, V_3 are the iid
Rayleigh-type limits (density 2 v exp(-v^2)) of the scaled candidate
deficiencies, inclusion-exclusion gives

    p_{3/2} = 3 E[q] - 3 E[q q'] + E[q q' q'']  ~= 0.7413,

whereas the single-pair integral alone evaluates to ~0.4126 there. The
correction terms reduce to low-dimensional integrals through the
transform g(s) = E[exp(-s V)] = 1 - (sqrt(pi)/2) s erfcx(s/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erfcx

from .geometry import Bary3, BasicTriangleParams
from .quadrature import adaptive_quad_1d, adaptive_quad_2d
from .regions import MPlacement, classify_M

SQRT_PI = math.sqrt(math.pi)


def _pair_integral(r: float, abs_tol: float) -> float:
    """The displayed two-dimensional integral, mapped to the unit square
    via w = t/(1-t)."""
    a = 4.0 * r / (3.0 * (r - 1.0))
    rho = r * (r - 1.0)
    pref = (64.0 / 9.0) * (r / (r - 1.0)) ** 2

    def f(t1, t3):
        o1 = 1.0 - t1
        o3 = 1.0 - t3
        w1 = t1 / o1
        w3 = t3 / o3
        q = w1 * w1 + w3 * w3 + 2.0 * rho * w1 * w3
        return pref * w1 * w3 * np.exp(-a * q) / (o1 * o1 * o3 * o3)

    # the integrand vanishes identically on the t=1 edges; stop just short
    return adaptive_quad_2d(f, 0.0, 1.0 - 1e-14, 0.0, 1.0 - 1e-14, abs_tol=abs_tol)


def _rayleigh_laplace(s: np.ndarray) -> np.ndarray:
    """g(s) = E[exp(-s V)] for V with density 2 v exp(-v^2), v >= 0."""
    return 1.0 - (SQRT_PI / 2.0) * s * erfcx(s / 2.0)


def _triple_corrections(abs_tol: float) -> tuple[float, float]:
    """E[q q'] and E[q q' q''] for r = 3/2, where q_k = exp(-c V_i V_j)
    with c = 2 r (r-1) = 3/2 and V iid Rayleigh-type.

    E[q1 q2]    = int 2w exp(-w^2) g(c w)^2 dw
    E[q1 q2 q3] = int int 4 v1 v2 exp(-v1^2 - v2^2 - c v1 v2) g(c (v1+v2)) dv1 dv2
    """
    c = 1.5
    cut = 9.0  # exp(-81) tail, far below any tolerance in play

    def f2(w):
        g = _rayleigh_laplace(c * w)
        return 2.0 * w * np.exp(-w * w) * g * g

    e2 = adaptive_quad_1d(f2, 0.0, cut, abs_tol=abs_tol)

    def f3(v1, v2):
        return (
            4.0
            * v1
            * v2
            * np.exp(-v1 * v1 - v2 * v2 - c * v1 * v2)
            * _rayleigh_laplace(c * (v1 + v2))
        )

    e3 = adaptive_quad_2d(f3, 0.0, cut, 0.0, cut, abs_tol=abs_tol)
    return e2, e3


def p_r(r: float, abs_tol: float = 1e-6) -> float:
    """Limit probability that the domination number equals 2 when the
    center sits at a vertex of the inner triangle.

    Valid for r in (1, 3/2]; the integrand's prefactor is singular at
    r = 1 (values are computed for r >= 1 + 1e-3 only), and for r > 3/2
    the inner triangle is empty. At exactly r = 3/2 the three vertices
    coincide and the inclusion-exclusion over the three candidate pairs
    applies.
    """
    r = float(r)
    if not (1.0 < r <= 1.5):
        raise ValueError(f"p_r is defined for r in (1, 3/2], got {r}")
    if r < 1.0 + 1e-3:
        raise ValueError("p_r evaluation restricted to r >= 1 + 1e-3 (singular prefactor)")
    if r == 1.5:
        e1 = _pair_integral(r, abs_tol / 8.0)
        e2, e3 = _triple_corrections(abs_tol / 8.0)
        return 3.0 * e1 - 3.0 * e2 + e3
    return _pair_integral(r, abs_tol)


def p_r_montecarlo(
    r: float, n_samples: int = 10**7, seed: int = 0
) -> tuple[float, float]:
    """Importance-sampled Monte-Carlo estimate of p_r (value, standard
    error), sampling V from its exact Rayleigh-type law. Cross-check for
    the quadrature, not the production path."""
    r = float(r)
    if not (1.0 < r <= 1.5):
        raise ValueError(f"p_r is defined for r in (1, 3/2], got {r}")
    rho = r * (r - 1.0)
    rng = np.random.default_rng(seed)
    if r == 1.5:
        v = np.sqrt(rng.exponential(size=(n_samples, 3)))
        q1 = np.exp(-2.0 * rho * v[:, 1] * v[:, 2])
        q2 = np.exp(-2.0 * rho * v[:, 0] * v[:, 2])
        q3 = np.exp(-2.0 * rho * v[:, 0] * v[:, 1])
        vals = 1.0 - (1.0 - q1) * (1.0 - q2) * (1.0 - q3)
    else:
        v = np.sqrt(rng.exponential(size=(n_samples, 2)))
        vals = np.exp(-2.0 * rho * v[:, 0] * v[:, 1])
    return float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(n_samples))


@dataclass(frozen=True)
class GammaLaw:
    """Limit distribution of the domination number in one triangle:
    a point mass at 1 or 3, or 2 + Bernoulli(q) with q = 1 - p_r."""

    kind: str  # "degenerate" | "two_plus_bernoulli"
    value: int | None  # point mass location for the degenerate case
    q: float | None  # Bernoulli success probability, else None
    note: str

    @property
    def support(self) -> tuple[int, ...]:
        if self.kind == "degenerate":
            return (self.value,)
        return (2, 3)

    def to_json_dict(self) -> dict:
        d: dict = {"kind": self.kind, "note": self.note}
        if self.kind == "degenerate":
            d["value"] = self.value
        else:
            d["q"] = self.q
            d["p_r"] = 1.0 - self.q
        return d


def degenerate_law(value: int, note: str) -> GammaLaw:
    return GammaLaw("degenerate", value, None, note)


def bernoulli_law(q: float, note: str) -> GammaLaw:
    if not (0.0 < q < 1.0):
        raise ValueError(f"Bernoulli parameter must lie in (0,1), got {q}")
    return GammaLaw("two_plus_bernoulli", None, q, note)


def asymptotic_law(
    r: float,
    m,
    basic: BasicTriangleParams | None = None,
    abs_tol: float = 1e-6,
) -> GammaLaw:
    """Classify (r, M) and return the limit law of the domination number.

    ``m`` may be a Bary3 or a rational 3-tuple (exact classification).
    """
    rf = float(r)
    if rf < 1.0:
        raise ValueError(f"expansion factor must be >= 1, got {r}")
    if math.isinf(rf) or rf > 1.5:
        return degenerate_law(1, "inner triangle empty (r > 3/2): superset region has positive area")
    placement = classify_M(r, m, basic)
    if placement == MPlacement.OUTSIDE:
        return degenerate_law(1, "M outside the inner triangle: superset region has positive area")
    if placement in (MPlacement.INTERIOR, MPlacement.BOUNDARY_NON_VERTEX):
        return degenerate_law(3, f"M {placement.value} of the inner triangle")
    q = 1.0 - p_r(rf, abs_tol=abs_tol)
    return bernoulli_law(q, "M at a vertex of the inner triangle: 2 + Bernoulli(1 - p_r)")


def law_moments(law: GammaLaw) -> tuple[float, float]:
    """(mean, variance). For 2 + Bernoulli(q) these are 2 + q and q (1-q);
    the latter matches the anchored numeric value of the limit variance."""
    if law.kind == "degenerate":
        return float(law.value), 0.0
    q = law.q
    return 2.0 + q, q * (1.0 - q)


@dataclass(frozen=True)
class MultiGammaLaw:
    """Limit law of the total domination number over J Delaunay cells:
    a point mass at J or 3J, or 2J + Binomial(J, q)."""

    j_cells: int
    kind: str  # "degenerate" | "shifted_binomial"
    value: int | None
    q: float | None
    note: str

    @property
    def support(self) -> tuple[int, int]:
        if self.kind == "degenerate":
            return (self.value, self.value)
        return (2 * self.j_cells, 3 * self.j_cells)

    def mean(self) -> float:
        if self.kind == "degenerate":
            return float(self.value)
        return 2.0 * self.j_cells + self.j_cells * self.q

    def to_json_dict(self) -> dict:
        d: dict = {"kind": self.kind, "J": self.j_cells, "note": self.note}
        if self.kind == "degenerate":
            d["value"] = self.value
        else:
            d["q"] = self.q
            d["p_r"] = 1.0 - self.q
        return d


def multi_law(
    r: float,
    m,
    j_cells: int,
    basic: BasicTriangleParams | None = None,
    abs_tol: float = 1e-6,
) -> MultiGammaLaw:
    """Lift the one-triangle law to J independent cells: point masses lift
    to J or 3J, the vertex case to 2J + Binomial(J, 1 - p_r)."""
    if j_cells < 1:
        raise ValueError(f"cell count must be >= 1, got {j_cells}")
    base = asymptotic_law(r, m, basic, abs_tol=abs_tol)
    if base.kind == "degenerate":
        return MultiGammaLaw(j_cells, "degenerate", base.value * j_cells, None, base.note)
    return MultiGammaLaw(j_cells, "shifted_binomial", None, base.q, base.note)
