import numpy as np
import pytest

from pepcd.geometry import Point2, Triangle2


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_triangle(rng, span: float = 10.0) -> Triangle2:
    """A well-conditioned random triangle (resampled until far from degenerate)."""
    while True:
        pts = rng.uniform(-span, span, size=(3, 2))
        tri_area = 0.5 * abs(
            (pts[1, 0] - pts[0, 0]) * (pts[2, 1] - pts[0, 1])
            - (pts[1, 1] - pts[0, 1]) * (pts[2, 0] - pts[0, 0])
        )
        if tri_area > 0.05 * span * span:
            return Triangle2(*(Point2(*p) for p in pts))
