"""Small adaptive Gauss quadrature, 1D and tensor-product 2D.

Panels are bisected (quadrisected in 2D) greedily by estimated error,
where the error estimate is the difference between a 15-point and a
7-point Gauss-Legendre rule on the panel. Integrands are evaluated
vectorized over node arrays.
"""

from __future__ import annotations

import heapq
from typing import Callable

import numpy as np

_X7, _W7 = np.polynomial.legendre.leggauss(7)
_X15, _W15 = np.polynomial.legendre.leggauss(15)


def _panel_1d(f, a: float, b: float) -> tuple[float, float]:
    h = 0.5 * (b - a)
    c = 0.5 * (a + b)
    v15 = h * float(np.dot(_W15, f(c + h * _X15)))
    v7 = h * float(np.dot(_W7, f(c + h * _X7)))
    return v15, abs(v15 - v7)


def adaptive_quad_1d(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    abs_tol: float = 1e-9,
    max_panels: int = 4000,
) -> float:
    """Integrate a vectorized scalar function over [a, b] to abs_tol."""
    val, err = _panel_1d(f, a, b)
    heap = [(-err, a, b, val)]
    total_val, total_err = val, err
    while total_err > abs_tol and len(heap) < max_panels:
        nerr, pa, pb, pval = heapq.heappop(heap)
        total_val -= pval
        total_err += nerr  # nerr is negative
        mid = 0.5 * (pa + pb)
        for qa, qb in ((pa, mid), (mid, pb)):
            v, e = _panel_1d(f, qa, qb)
            total_val += v
            total_err += e
            heapq.heappush(heap, (-e, qa, qb, v))
    return total_val


def _panel_2d(f, ax, bx, ay, by) -> tuple[float, float]:
    hx, cx = 0.5 * (bx - ax), 0.5 * (ax + bx)
    hy, cy = 0.5 * (by - ay), 0.5 * (ay + by)
    X15, Y15 = np.meshgrid(cx + hx * _X15, cy + hy * _X15, indexing="ij")
    W15 = np.outer(_W15, _W15)
    v15 = hx * hy * float(np.sum(W15 * f(X15, Y15)))
    X7, Y7 = np.meshgrid(cx + hx * _X7, cy + hy * _X7, indexing="ij")
    W7 = np.outer(_W7, _W7)
    v7 = hx * hy * float(np.sum(W7 * f(X7, Y7)))
    return v15, abs(v15 - v7)


def adaptive_quad_2d(
    f: Callable[[np.ndarray, np.ndarray], np.ndarray],
    ax: float = 0.0,
    bx: float = 1.0,
    ay: float = 0.0,
    by: float = 1.0,
    abs_tol: float = 1e-8,
    max_panels: int = 4000,
) -> float:
    """Integrate a vectorized f(x, y) over [ax,bx] x [ay,by] to abs_tol by
    adaptive quadrisection with tensor Gauss rules."""
    val, err = _panel_2d(f, ax, bx, ay, by)
    heap = [(-err, ax, bx, ay, by, val)]
    total_val, total_err = val, err
    while total_err > abs_tol and len(heap) < max_panels:
        nerr, pax, pbx, pay, pby, pval = heapq.heappop(heap)
        total_val -= pval
        total_err += nerr
        mx, my = 0.5 * (pax + pbx), 0.5 * (pay + pby)
        for qax, qbx in ((pax, mx), (mx, pbx)):
            for qay, qby in ((pay, my), (my, pby)):
                v, e = _panel_2d(f, qax, qbx, qay, qby)
                total_val += v
                total_err += e
                heapq.heappush(heap, (-e, qax, qbx, qay, qby, v))
    return total_val
