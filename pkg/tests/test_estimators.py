import itertools
import math

import numpy as np
import pytest
from conftest import random_upper_triangular

from latred.estimators import (
    EnumerationBudgetError,
    babai_point,
    babai_point_batch,
    count_points_in_region,
    sphere_decode,
)
from latred.reduction import lll_reduce


def enumeration_box(r, y, radius):
    """Box guaranteed to contain every x with ||y - Rx|| <= radius:
    ||x - R^{-1}y||_inf <= ||R^{-1}||_inf * radius."""
    center = np.linalg.solve(r, y)
    half = np.linalg.norm(np.linalg.inv(r), np.inf) * radius
    lows = np.ceil(center - half).astype(int)
    highs = np.floor(center + half).astype(int)
    return lows, highs


def brute_force_ils(r, y):
    """Oracle: exhaustive search over a radius-bound-validated integer box."""
    xb = babai_point(r, y)
    radius = float(np.linalg.norm(y - r @ xb))
    lows, highs = enumeration_box(r, y, radius * (1 + 1e-12))
    if np.prod(highs - lows + 1.0) > 2e5:
        return None, None  # caller skips oversized instances
    best, best_d = None, math.inf
    for x in itertools.product(*[range(lo, hi + 1) for lo, hi in zip(lows, highs)]):
        x = np.array(x)
        d = np.linalg.norm(y - r @ x)
        if d < best_d:
            best, best_d = x, d
    return best, best_d


class TestBabai:
    def test_identity_rounds_componentwise(self):
        assert list(babai_point(np.eye(3), [1.2, -0.4, 3.0])) == [1, 0, 3]

    def test_recursion_example(self):
        r = np.array([[2.0, 1.0], [0.0, 1.0]])
        assert list(babai_point(r, [3.2, 1.4])) == [1, 1]

    def test_tie_rule(self):
        r = np.array([[1.0, 0.5], [0.0, 1.0]])
        assert list(babai_point(r, [0.75, 0.5])) == [1, 0]

    def test_batch_matches_scalar(self, rng):
        r = random_upper_triangular(5, rng)
        ys = rng.standard_normal((50, 5))
        batch = babai_point_batch(r, ys)
        for i in range(50):
            assert list(batch[i]) == list(babai_point(r, ys[i]))


class TestSphere:
    def test_identity_lattice(self):
        res = sphere_decode(np.eye(2), [0.3, -0.2])
        assert list(res.solution) == [0, 0]
        assert res.residual_norm == pytest.approx(math.sqrt(0.13), abs=1e-12)

    def test_matches_brute_force(self, rng):
        for _ in range(60):
            n = int(rng.integers(1, 5))
            r = random_upper_triangular(n, rng)
            y = rng.standard_normal(n) * 2.0
            res = sphere_decode(r, y)
            _, best_d = brute_force_ils(r, y)
            if best_d is None:
                continue
            assert res.residual_norm == pytest.approx(best_d, rel=1e-10)
            assert np.linalg.norm(y - r @ res.solution) == pytest.approx(best_d, rel=1e-10)

    def test_small_noise_recovery(self, rng):
        r = np.array([[5.0, 4.0], [0.0, 2.0]])
        y = r @ np.array([1.0, 1.0]) + 0.01 * rng.standard_normal(2)
        res = sphere_decode(r, y)
        assert list(res.solution) == [1, 1]

    def test_first_leaf_is_babai(self, rng):
        for _ in range(1000):
            n = int(rng.integers(1, 6))
            r = random_upper_triangular(n, rng)
            y = rng.standard_normal(n) * 2.0
            res = sphere_decode(r, y)
            assert list(res.first_leaf) == list(babai_point(r, y))

    def test_radius_history_non_increasing(self, rng):
        for _ in range(100):
            r = random_upper_triangular(4, rng)
            y = rng.standard_normal(4) * 3.0
            res = sphere_decode(r, y)
            hist = res.radius_history
            assert all(a >= b for a, b in zip(hist, hist[1:]))
            assert res.nodes_total == sum(res.nodes_per_level)

    def test_no_solution_inside_tiny_radius(self):
        res = sphere_decode(np.eye(2), [0.5, 0.5], initial_radius=0.1)
        assert res.solution is None
        assert math.isinf(res.residual_norm)

    def test_reduction_invariance(self, rng):
        # solving the reduced problem and mapping back via Z gives the same
        # optimum residual
        for _ in range(50):
            n = int(rng.integers(2, 5))
            r = random_upper_triangular(n, rng)
            y = rng.standard_normal(n) * 2.0
            res = sphere_decode(r, y)
            red = lll_reduce(r, 1.0)
            # y_bar = Q_bar^T y with Q_bar = R Z R_bar^{-1}
            qbar = r @ red.z.astype(float) @ np.linalg.inv(red.r_bar)
            res2 = sphere_decode(red.r_bar, qbar.T @ y)
            assert res2.residual_norm == pytest.approx(res.residual_norm, abs=1e-9)
            x_mapped = red.z.astype(float) @ res2.solution
            assert np.linalg.norm(y - r @ x_mapped) == pytest.approx(res.residual_norm, abs=1e-9)


class TestCountPoints:
    def test_scalar_interval(self):
        assert count_points_in_region(np.array([[1.0]]), [0.0], 1.5, 1) == 3

    def test_disc_count(self):
        assert count_points_in_region(2.0 * np.eye(2), [0.0, 0.0], 2.0, 1) == 5

    def test_empty_region_at_last_level(self):
        r = np.array([[1.0, 0.3], [0.0, 2.0]])
        y = np.array([0.0, 1.0])  # distance 1 to nearest multiple of 2
        assert count_points_in_region(r, y, 0.5, 2) == 0

    def test_monotone_in_beta(self, rng):
        r = random_upper_triangular(3, rng)
        y = rng.standard_normal(3)
        counts = [count_points_in_region(r, y, b, 1) for b in (0.5, 1.0, 2.0, 4.0)]
        assert counts == sorted(counts)

    def test_matches_brute_force(self, rng):
        for _ in range(30):
            n = int(rng.integers(1, 4))
            r = random_upper_triangular(n, rng, scale=1.5)
            y = rng.standard_normal(n)
            beta = float(rng.uniform(0.5, 2.5))
            for level in range(1, n + 1):
                sub = r[level - 1 :, level - 1 :]
                ysub = y[level - 1 :]
                lows, highs = enumeration_box(sub, ysub, beta)
                if np.prod(highs - lows + 1.0) > 2e5:
                    continue
                brute = sum(
                    1
                    for x in itertools.product(
                        *[range(lo, hi + 1) for lo, hi in zip(lows, highs)]
                    )
                    if np.linalg.norm(ysub - sub @ np.array(x)) <= beta
                )
                assert count_points_in_region(r, y, beta, level) == brute

    def test_budget_error(self):
        with pytest.raises(EnumerationBudgetError):
            count_points_in_region(0.01 * np.eye(3), np.zeros(3), 5.0, 1, budget=100)
