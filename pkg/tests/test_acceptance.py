"""End-to-end acceptance suite. Each test prints one PASS line on success so
the run log doubles as a checklist."""

import math
import time

import numpy as np
import pytest
from conftest import random_upper_triangular
from test_estimators import brute_force_ils

from latred.analytics import (
    bounds_report,
    chi2_lower_bound,
    complexity_estimate,
    success_probability,
)
from latred.estimators import babai_point_batch, sphere_decode
from latred.experiments import (
    ExperimentConfig,
    generate_model,
    mean_by,
    rng_for_run,
    run_probability_experiment,
)
from latred.linalg import qr_factorize
from latred.reduction import lll_permute_only, lll_reduce

SQRT5 = math.sqrt(5.0)


def _report(num, text):
    print(f"\n[criterion {num:2d}] PASS: {text}")


def test_criterion_01_lower_bound_ratio_example():
    r = np.diag([0.001, 10.0])
    t0 = time.perf_counter()
    pb = success_probability(r, 0.5)
    lo = chi2_lower_bound(r, 0.5)
    elapsed = time.perf_counter() - t0
    ratio = lo / pb
    assert ratio == pytest.approx(1.0 / 1596.0, rel=0.01)
    assert elapsed < 1e-3
    _report(1, f"chi2/P_B ratio {ratio:.6g} vs 1/1596, {elapsed*1e3:.3f} ms")


def test_criterion_02_worked_reduction_example():
    r = np.array([[5.0, 4.0], [0.0, 2.0]])
    full = lll_reduce(r, 1.0)
    perm = lll_permute_only(r, 1.0)
    assert np.allclose(np.abs(np.diag(full.r_bar)), [SQRT5, 2 * SQRT5], atol=1e-12)
    assert np.allclose(np.abs(np.diag(perm.r_bar)), [2 * SQRT5, SQRT5], atol=1e-12)
    p_full = success_probability(full.r_bar, 0.4)
    p_perm = success_probability(perm.r_bar, 0.4)
    assert p_full == pytest.approx(p_perm, abs=1e-12)
    _report(2, f"diagonals (sqrt5, 2*sqrt5)/(2*sqrt5, sqrt5); equal P_B {p_full:.6f}")


def test_criterion_03_case_averages():
    t0 = time.perf_counter()
    targets = {1: [0.839, 0.661, 0.477], 2: [1.85e-2, 1.95e-4, 5.56e-6]}
    sigmas = [0.1, 0.2, 0.3]
    got = {}
    for case in (1, 2):
        cfg = ExperimentConfig(case=case, n=20, sigma_grid=sigmas, runs=200,
                               seed=7, methods=("QR",))
        means = mean_by(run_probability_experiment(cfg), keys=("sigma",))
        got[case] = [means[(s,)] for s in sigmas]
    elapsed = time.perf_counter() - t0
    for m, t in zip(got[1], targets[1]):
        assert abs(m - t) <= 0.02
    for m, t in zip(got[2], targets[2]):
        assert t / 2 <= m <= t * 2
    assert elapsed < 30.0
    _report(3, "case-1 means " + "/".join(f"{v:.3f}" for v in got[1])
            + ", case-2 means " + "/".join(f"{v:.3g}" for v in got[2])
            + f", {elapsed:.1f} s")


def test_criterion_04_bound_averages_sigma_040():
    t0 = time.perf_counter()
    cfg = ExperimentConfig(case=1, n=20, sigma_grid=[0.40], runs=200, seed=11,
                           methods=("QR", "LLL"))
    recs = run_probability_experiment(cfg, with_bounds=True)
    pb = mean_by(recs, keys=("method",))
    qr_recs = [r for r in recs if r.method == "QR"]
    b1 = float(np.mean([r.beta1 for r in qr_recs]))
    b2 = float(np.mean([r.beta2 for r in qr_recs]))
    b3 = float(np.mean([r.beta3 for r in qr_recs]))
    elapsed = time.perf_counter() - t0
    assert pb[("QR",)] == pytest.approx(0.32279, abs=0.05)
    assert pb[("LLL",)] == pytest.approx(0.93432, abs=0.05)
    assert b1 == pytest.approx(0.99997, abs=0.01)
    assert b2 == pytest.approx(0.96319, abs=0.05)
    assert b3 == pytest.approx(0.96319, abs=0.05)
    assert elapsed < 60.0
    _report(4, f"QR {pb[('QR',)]:.5f}, LLL {pb[('LLL',)]:.5f}, "
            f"beta1 {b1:.5f}, beta2 {b2:.5f}, beta3 {b3:.5f}, {elapsed:.1f} s")


def test_criterion_05_reduction_improves_pb_and_complexity():
    sizes = (5, 10, 20)
    checked = 0
    for case in (1, 2, 3):
        for i in range(1000):
            n = sizes[i % len(sizes)]
            rng = rng_for_run(1000 * case, i)
            r = qr_factorize(generate_model(case, n, rng)).r
            red = lll_reduce(r, 1.0)
            sigma = float(rng.uniform(0.05, 0.5))
            assert (success_probability(red.r_bar, sigma)
                    >= success_probability(r, sigma) - 1e-12)
            assert (complexity_estimate(red.r_bar, 1.0).zeta_hat
                    <= complexity_estimate(r, 1.0).zeta_hat * (1 + 1e-12))
            checked += 1
    _report(5, f"P_B never decreased and zeta_hat never increased on {checked} "
            "instances (cases 1-3, n in {5,10,20})")


def test_criterion_06_bound_ordering():
    rng = np.random.default_rng(606)
    for _ in range(1000):
        n = int(rng.integers(2, 9))
        r = random_upper_triangular(n, rng)
        sigma = float(rng.uniform(0.05, 1.0))
        rep = bounds_report(r, sigma)
        assert rep.chi2_lower <= rep.p_b + 1e-12
        assert rep.p_b <= min(rep.beta1, rep.beta2) + 1e-12
        assert rep.beta2 <= rep.beta3 + 1e-12
    _report(6, "chi2 <= P_B <= min(beta1, beta2) and beta2 <= beta3 on "
            "1000 random (R, sigma)")


def test_criterion_07_sphere_matches_brute_force():
    rng = np.random.default_rng(707)
    t0 = time.perf_counter()
    done = 0
    while done < 200:
        n = int(rng.integers(2, 6))
        r = random_upper_triangular(n, rng)
        y = rng.normal(scale=2.0, size=n)
        best, best_d = brute_force_ils(r, y)
        if best is None:
            continue  # enumeration box too large for the oracle
        res = sphere_decode(r, y)
        assert res.residual_norm == pytest.approx(best_d, abs=1e-9)
        assert np.linalg.norm(y - r @ res.solution) == pytest.approx(best_d, abs=1e-9)
        from latred.estimators import babai_point
        assert np.array_equal(res.first_leaf, babai_point(r, y))
        done += 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 10.0
    _report(7, f"sphere = brute force and first leaf = Babai on {done} "
            f"instances (n <= 5), {elapsed:.1f} s")


def test_criterion_08_monte_carlo_vs_formula():
    rng = np.random.default_rng(808)
    t0 = time.perf_counter()
    n, trials = 8, 10_000
    inside = total = 0
    for _ in range(20):
        r = random_upper_triangular(n, rng)
        for sigma in (0.1, 0.2, 0.3):
            p = success_probability(r, sigma)
            noise = sigma * rng.standard_normal((trials, n))
            freq = float(np.mean(np.all(babai_point_batch(r, noise) == 0, axis=1)))
            half = 2.576 * math.sqrt(max(p * (1 - p), 1e-12) / trials)
            inside += abs(freq - p) <= half + 1e-12
            total += 1
    elapsed = time.perf_counter() - t0
    assert total == 60
    assert inside >= 57
    assert elapsed < 60.0
    _report(8, f"{inside}/60 cells inside the 99% binomial CI, {elapsed:.1f} s")


def test_criterion_09_smaller_delta_can_win():
    d1, d2, eta, theta = 0.9, 1.0, 0.95, 0.1
    assert d2 < d1**2 + 0.25
    assert d1 < eta < d2
    assert theta < 0.5 * math.sqrt(d1 * (eta - d1))
    r = np.array([[1.0, 0.0, 0.5],
                  [0.0, math.sqrt(eta), theta],
                  [0.0, 0.0, d1]])
    sigma = 0.4
    p1 = success_probability(lll_reduce(r, d1).r_bar, sigma)
    p2 = success_probability(lll_reduce(r, d2).r_bar, sigma)
    assert p1 > p2
    _report(9, f"P_B(delta=0.9) = {p1:.5f} > P_B(delta=1.0) = {p2:.5f}")


def test_criterion_10_delta_monotone_n2():
    rng = np.random.default_rng(1010)
    for _ in range(1000):
        r = random_upper_triangular(2, rng)
        d1 = float(rng.uniform(0.3, 0.99))
        d2 = float(rng.uniform(d1, 1.0))
        sigma = float(rng.uniform(0.1, 1.0))
        p1 = success_probability(lll_reduce(r, d1).r_bar, sigma)
        p2 = success_probability(lll_reduce(r, d2).r_bar, sigma)
        assert p1 <= p2 + 1e-12
    _report(10, "P_B monotone in delta on 1000 random 2x2 pairs")
