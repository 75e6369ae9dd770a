import math

import numpy as np
import pytest
from scipy.stats import ks_2samp

from pepcd.geometry import Bary3, GeometryError, sample_uniform_triangle_bary
from pepcd.regions import CENTROID, ProximityParams, arc_predicate
from pepcd.simplex import (
    SimplexD,
    arc_predicate_d,
    candidate_indices_d,
    domination_bruteforce_d,
    domination_exact_d,
    gamma_batch_d,
    sample_uniform_simplex,
    standard_simplex,
    validate_bary,
    vertex_region_d,
)


class TestSimplexD:
    def test_standard_simplex(self):
        s = standard_simplex(3)
        assert s.dim == 3
        b = np.full(4, 0.25)
        assert np.allclose(s.to_cartesian(b), [0.25, 0.25, 0.25])

    def test_degenerate_rejected(self):
        with pytest.raises(GeometryError):
            SimplexD(((0.0, 0.0), (1.0, 0.0), (2.0, 0.0)))


class TestSampler:
    def test_means_are_uniform(self, rng):
        n = 10**6
        B = sample_uniform_simplex(3, rng, n)
        se = B.std(axis=0) / math.sqrt(n)
        assert np.all(np.abs(B.mean(axis=0) - 0.25) < 3 * se)

    def test_invariants(self, rng):
        B = sample_uniform_simplex(4, rng, 5000)
        assert np.allclose(B.sum(axis=1), 1.0, atol=1e-12)
        assert (B >= 0).all()
        assert all(validate_bary(b) for b in B[:100])

    def test_d2_matches_triangle_sampler(self, rng):
        n = 10**5
        a = sample_uniform_simplex(2, rng, n)[:, 0]
        b = sample_uniform_triangle_bary(rng, n)[:, 0]
        # same marginal law from two independent constructions
        stat = ks_2samp(a, b)
        assert stat.pvalue > 1e-4


class TestArcPredicateD:
    def test_self_arc(self, rng):
        for _ in range(100):
            x = sample_uniform_simplex(3, rng, 1)[0]
            assert arc_predicate_d(1.0 + rng.random(), x, x)

    def test_d2_reduction_to_planar_centroid(self, rng):
        params_cache = {}
        for _ in range(10**4):
            r = 1.0 + 2.0 * rng.random()
            x = rng.dirichlet((1.0, 1.0, 1.0))
            z = rng.dirichlet((1.0, 1.0, 1.0))
            key = round(r, 12)
            params = params_cache.setdefault(key, ProximityParams(r, CENTROID))
            planar = arc_predicate(params, Bary3(*x), Bary3(*z))
            assert arc_predicate_d(r, x, z) == planar

    def test_centroid_dominates_everything_at_critical_r(self, rng):
        for d in (2, 3, 4):
            r = (d + 1) / d
            x = np.full(d + 1, 1.0 / (d + 1))
            for _ in range(100):
                z = sample_uniform_simplex(d, rng, 1)[0]
                assert arc_predicate_d(r, x, z)

    def test_region_is_argmax(self, rng):
        for _ in range(100):
            x = sample_uniform_simplex(3, rng, 1)[0]
            assert vertex_region_d(x) == int(np.argmax(x))


class TestDominationD:
    def test_single_region_gamma_one(self, rng):
        B = 0.7 * np.eye(4)[np.zeros(5, dtype=int)] + 0.3 * sample_uniform_simplex(3, rng, 5)
        assert domination_exact_d(B, 1.2).gamma == 1

    def test_oracle_equivalence_d3(self, rng):
        for _ in range(300):
            n = int(rng.integers(1, 11))
            r = 1.0 + rng.random()
            B = sample_uniform_simplex(3, rng, n)
            assert domination_exact_d(B, r).gamma == domination_bruteforce_d(B, r).gamma

    def test_kappa_bound(self, rng):
        for d in (2, 3, 4):
            for _ in range(100):
                B = sample_uniform_simplex(d, rng, int(rng.integers(1, 15)))
                assert domination_exact_d(B, 1.0 + rng.random()).gamma <= d + 1

    def test_monotone_in_r(self, rng):
        for _ in range(100):
            B = sample_uniform_simplex(3, rng, int(rng.integers(1, 12)))
            r1 = 1.0 + rng.random()
            r2 = r1 + rng.random()
            assert domination_exact_d(B, r2).gamma <= domination_exact_d(B, r1).gamma

    def test_batch_matches_exact(self, rng):
        for d in (2, 3):
            B = sample_uniform_simplex(d, rng, 30 * 40).reshape(40, 30, d + 1)
            gam = gamma_batch_d(B, 4 / 3)
            for i in range(40):
                assert gam[i] == domination_exact_d(B[i], 4 / 3).gamma

    def test_batch_with_center_matches_planar_candidates(self, rng):
        # skewed center in the plane through the batch path
        m = np.array([0.2, 0.6, 0.2])
        B = sample_uniform_simplex(2, rng, 12 * 50).reshape(50, 12, 3)
        gam = gamma_batch_d(B, 1.25, m)
        from pepcd.domination import PcdInstance, domination_exact
        from pepcd.geometry import equilateral_triangle

        te = equilateral_triangle()
        for i in range(50):
            pts = [te.to_cartesian(Bary3(*row)) for row in B[i]]
            inst = PcdInstance(te, ProximityParams(1.25, Bary3(*m)), pts)
            assert gam[i] == domination_exact(inst).gamma

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            domination_exact_d(np.empty((0, 4)), 1.5)

    def test_candidates_one_per_nonempty_region(self, rng):
        B = sample_uniform_simplex(3, rng, 40)
        cands = candidate_indices_d(B)
        regions = {int(np.argmax(B[i])) for i in cands}
        assert len(cands) == len(regions)
