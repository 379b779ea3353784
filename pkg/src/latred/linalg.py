"""Dense matrix kernels: QR with positive diagonal and the 2x2 Givens
permute-and-triangularize step used by every reduction strategy."""

import math

import numpy as np

ABS_FLOOR = 1e-12


class RankDeficiencyError(ValueError):
    """Raised when a matrix is numerically rank deficient."""


def round_to_nearest(x: float) -> int:
    """Nearest integer; an exact .5 tie goes to the smaller magnitude."""
    t = abs(x)
    f = math.floor(t)
    n = f if t - f == 0.5 else math.floor(t + 0.5)
    return -n if x < 0 else n


def round_to_nearest_vec(x):
    """Vectorized round_to_nearest."""
    x = np.asarray(x, dtype=float)
    t = np.abs(x)
    f = np.floor(t)
    n = np.where(t - f == 0.5, f, np.floor(t + 0.5))
    return np.where(x < 0, -n, n)


def check_upper_triangular(r):
    r = np.asarray(r, dtype=float)
    if r.ndim != 2 or r.shape[0] != r.shape[1]:
        raise ValueError("R must be square")
    if not np.all(np.isfinite(r)):
        raise ValueError("R has non-finite entries")
    if np.any(np.tril(r, -1) != 0):
        raise ValueError("R must be upper triangular")
    if np.any(np.diag(r) <= 0):
        raise ValueError("R must have a positive diagonal")
    return r


class QrFactors:
    """Thin QR factorization A = q1 @ r with positive diag(r)."""

    def __init__(self, q1, r):
        self.q1 = q1
        self.r = r

    def __iter__(self):
        return iter((self.q1, self.r))


def qr_factorize(a) -> QrFactors:
    """Householder QR with column sign flips absorbed into q1 so that
    diag(r) > 0. Raises RankDeficiencyError on (numerically) deficient input."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2:
        raise ValueError("A must be a matrix")
    m, n = a.shape
    if m < n:
        raise ValueError("A must have at least as many rows as columns")
    if not np.all(np.isfinite(a)):
        raise ValueError("A has non-finite entries")
    s = np.linalg.svd(a, compute_uv=False)
    if s[-1] <= 1e-10 * s[0]:
        raise RankDeficiencyError("smallest singular value below 1e-10 of largest")
    q, r = np.linalg.qr(a)
    amax = np.max(np.abs(a))
    if np.any(np.abs(np.diag(r)) < ABS_FLOOR * amax):
        raise RankDeficiencyError("pivot magnitude below 1e-12 of max entry")
    signs = np.where(np.diag(r) < 0, -1.0, 1.0)
    q = q * signs
    r = signs[:, None] * r
    return QrFactors(q, r)


def givens_permute_triangularize(r, k):
    """Swap columns k-1 and k (1-based, 2 <= k <= n) of upper-triangular r and
    re-triangularize with one Givens rotation on rows k-1, k.

    Returns (r_bar, g) where g is the 2x2 rotation block such that
    r_bar = G^T r P with G = I except G[k-1:k+1, k-1:k+1] = g. Applying g.T to
    rows k-1, k of a right-hand side keeps it consistent with r_bar."""
    r = check_upper_triangular(r)
    n = r.shape[0]
    if not 2 <= k <= n:
        raise ValueError("k must satisfy 2 <= k <= n")
    i = k - 2  # 0-based upper row of the pair
    out = r.copy()
    out[:, [i, i + 1]] = out[:, [i + 1, i]]
    # zero out[i+1, i] by rotating rows i, i+1
    x, y = out[i, i], out[i + 1, i]
    h = math.hypot(x, y)
    c, s = x / h, y / h
    g = np.array([[c, -s], [s, c]])
    out[[i, i + 1], :] = g.T @ out[[i, i + 1], :]
    out[i + 1, i] = 0.0
    # out[i, i] = h > 0 already; only the second row may need a sign flip
    if out[i + 1, i + 1] < 0:
        out[i + 1, :] *= -1.0
        g[:, 1] *= -1.0
    return out, g
