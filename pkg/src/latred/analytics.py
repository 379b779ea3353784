"""Closed-form success probability of the Babai point, its chi-square lower
bound, the upper bounds beta1/beta2/beta3 (with the O(n) block-index scan),
and the volume-based sphere-decoding complexity estimate."""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammainc

from .linalg import check_upper_triangular

# probabilities with log below this are reported as 0.0 with the underflow flag
LOG_UNDERFLOW = -700.0


@dataclass
class BoundsReport:
    n: int
    sigma: float
    p_b: float
    chi2_lower: float
    beta1: float
    beta2: float
    beta3: float
    block_indices: list


@dataclass
class ComplexityEstimate:
    zeta_hat: float
    per_level_terms: list
    radius_beta: float
    overflowed: bool = False


def phi(zeta_arg: float, sigma: float) -> float:
    """Pr(|N(0,1)| <= zeta_arg / (2 sigma))."""
    if zeta_arg <= 0:
        raise ValueError("zeta_arg must be positive")
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    return math.erf(zeta_arg / (2.0 * math.sqrt(2.0) * sigma))


def log_phi(zeta_arg: float, sigma: float) -> float:
    p = phi(zeta_arg, sigma)
    if p == 0.0:
        # first-order series: erf(t) ~ 2 t / sqrt(pi)
        t = zeta_arg / (2.0 * math.sqrt(2.0) * sigma)
        return math.log(2.0 / math.sqrt(math.pi)) + math.log(t)
    return math.log(p)


def log_success_probability(r, sigma: float) -> float:
    r = check_upper_triangular(r)
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    return sum(log_phi(d, sigma) for d in np.diag(r))


def success_probability(r, sigma: float) -> float:
    """P_B = prod_i phi(r_ii); accumulated in log domain. Underflows below
    exp(-700) come back as exact 0.0 (see log_success_probability)."""
    lp = log_success_probability(r, sigma)
    return 0.0 if lp < LOG_UNDERFLOW else math.exp(lp)


def chi2_lower_bound(r, sigma: float) -> float:
    """F(r_min^2 / (4 sigma^2), n) with F the chi-square CDF, n = dim."""
    r = check_upper_triangular(r)
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    n = r.shape[0]
    rmin = float(np.min(np.diag(r)))
    q = rmin * rmin / (4.0 * sigma * sigma)
    return float(gammainc(n / 2.0, q / 2.0))


def beta1(r, sigma: float) -> float:
    """prod_i phi(gamma_i) with gamma_i the running maximum of the diagonal."""
    r = check_upper_triangular(r)
    gamma = np.maximum.accumulate(np.diag(r))
    lp = sum(log_phi(g, sigma) for g in gamma)
    return 0.0 if lp < LOG_UNDERFLOW else math.exp(lp)


def find_block_indices(r):
    """All 1-based i in 1..n-1 with max(r_11..r_ii) <= min(r_{i+1,i+1}..r_nn);
    empty list when no split exists. O(n) scan."""
    r = check_upper_triangular(r)
    d = np.diag(r)
    n = d.shape[0]
    u = np.maximum.accumulate(d[:-1])
    v = np.minimum.accumulate(d[1:][::-1])[::-1]
    return [i + 1 for i in range(n - 1) if u[i] <= v[i]]


def beta3(r, sigma: float) -> float:
    """phi^n(nu) with nu the geometric mean of the diagonal (mean of logs)."""
    r = check_upper_triangular(r)
    d = np.diag(r)
    nu = math.exp(float(np.mean(np.log(d))))
    lp = d.shape[0] * log_phi(nu, sigma)
    return 0.0 if lp < LOG_UNDERFLOW else math.exp(lp)


def beta2(r, sigma: float):
    """Block upper bound: partition the diagonal at find_block_indices and take
    phi^(block size) of each block's geometric mean. Returns (value, indices);
    with no valid split this equals beta3."""
    r = check_upper_triangular(r)
    d = np.diag(r)
    n = d.shape[0]
    idx = find_block_indices(r)
    bounds = [0] + idx + [n]
    lp = 0.0
    for a, b in zip(bounds[:-1], bounds[1:]):
        nu = math.exp(float(np.mean(np.log(d[a:b]))))
        lp += (b - a) * log_phi(nu, sigma)
    value = 0.0 if lp < LOG_UNDERFLOW else math.exp(lp)
    return value, idx


def bounds_report(r, sigma: float) -> BoundsReport:
    r = check_upper_triangular(r)
    b2, idx = beta2(r, sigma)
    return BoundsReport(
        n=r.shape[0],
        sigma=sigma,
        p_b=success_probability(r, sigma),
        chi2_lower=chi2_lower_bound(r, sigma),
        beta1=beta1(r, sigma),
        beta2=b2,
        beta3=beta3(r, sigma),
        block_indices=idx,
    )


def unit_ball_volume_log(k: int) -> float:
    """log of the k-dimensional unit Euclidean ball volume."""
    return 0.5 * k * math.log(math.pi) - math.lgamma(0.5 * k + 1.0)


def complexity_estimate(r, beta_radius: float) -> ComplexityEstimate:
    """zeta_hat = sum_i V_{n-i+1} beta^{n-i+1} / (r_ii ... r_nn), accumulated in
    log domain. Terms past the float range saturate to +inf with a flag."""
    r = check_upper_triangular(r)
    if beta_radius <= 0:
        raise ValueError("beta_radius must be positive")
    d = np.diag(r)
    n = d.shape[0]
    log_tail = np.cumsum(np.log(d)[::-1])[::-1]  # log(r_ii ... r_nn)
    terms = []
    overflowed = False
    for i in range(n):
        k = n - i
        lt = unit_ball_volume_log(k) + k * math.log(beta_radius) - log_tail[i]
        if lt > 709.0:
            terms.append(math.inf)
            overflowed = True
        else:
            terms.append(math.exp(lt))
    total = math.inf if overflowed else float(sum(terms))
    return ComplexityEstimate(
        zeta_hat=total,
        per_level_terms=terms,
        radius_beta=float(beta_radius),
        overflowed=overflowed,
    )
