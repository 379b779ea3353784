"""LLL reduction (with exact integer unimodular tracking), the permutation-only
variant, and the SQRD / V-BLAST column orderings used as baselines."""

from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    QrFactors,
    RankDeficiencyError,
    check_upper_triangular,
    givens_permute_triangularize,
    qr_factorize,
    round_to_nearest,
)


def identity_unimodular(n):
    """n x n identity with exact Python-int entries (object dtype, so column
    operations never overflow)."""
    z = np.zeros((n, n), dtype=object)
    for i in range(n):
        z[i, i] = 1
    return z


def unimodular_det(z) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [[int(v) for v in row] for row in np.asarray(z)]
    n = len(a)
    sign = 1
    prev = 1
    for i in range(n - 1):
        if a[i][i] == 0:
            for j in range(i + 1, n):
                if a[j][i] != 0:
                    a[i], a[j] = a[j], a[i]
                    sign = -sign
                    break
            else:
                return 0
        for j in range(i + 1, n):
            for k in range(i + 1, n):
                a[j][k] = (a[j][k] * a[i][i] - a[j][i] * a[i][k]) // prev
            a[j][i] = 0
        prev = a[i][i]
    return sign * a[n - 1][n - 1]


@dataclass
class ReductionTrace:
    permutation_count: int = 0
    size_reduction_count: int = 0
    superdiag_size_reductions_before_permutation: int = 0
    per_step_diag_snapshots: list | None = None


@dataclass
class ReducedBasis:
    r_bar: np.ndarray
    z: np.ndarray
    trace: ReductionTrace
    delta: float


def _igt(r, z, i, k):
    """In-place integer Gauss transform on 0-based column pair (i, k), i < k.
    Returns the integer multiplier used."""
    zeta = round_to_nearest(r[i, k] / r[i, i])
    if zeta != 0:
        r[: i + 1, k] -= zeta * r[: i + 1, i]
        z[:, k] -= zeta * z[:, i]
    return zeta


def integer_gauss_transform(r, i, k, z=None):
    """One size reduction of r_ik (1-based indices, i < k). Returns the updated
    (r, z) as new arrays."""
    r = check_upper_triangular(r).copy()
    if not 1 <= i < k <= r.shape[0]:
        raise ValueError("indices must satisfy 1 <= i < k <= n")
    z = identity_unimodular(r.shape[0]) if z is None else z.copy()
    _igt(r, z, i - 1, k - 1)
    return r, z


def _lll_loop(r, delta, trace_diag, size_reduce):
    if not 0.25 < delta <= 1.0:
        raise ValueError("delta must lie in (1/4, 1]")
    r = check_upper_triangular(r).copy()
    n = r.shape[0]
    z = identity_unimodular(n)
    trace = ReductionTrace()
    if trace_diag:
        trace.per_step_diag_snapshots = [np.diag(r).copy()]
    k = 1  # 0-based column index of the right column of the active pair
    while k < n:
        zeta = _igt(r, z, k - 1, k) if size_reduce else 0
        if zeta != 0:
            trace.size_reduction_count += 1
        if delta * r[k - 1, k - 1] ** 2 > r[k - 1, k] ** 2 + r[k, k] ** 2:
            if zeta != 0:
                trace.superdiag_size_reductions_before_permutation += 1
            r, _ = givens_permute_triangularize(r, k + 1)
            z[:, [k - 1, k]] = z[:, [k, k - 1]]
            trace.permutation_count += 1
            if trace_diag:
                trace.per_step_diag_snapshots.append(np.diag(r).copy())
            if k > 1:
                k -= 1
        else:
            if size_reduce:
                for i in range(k - 2, -1, -1):
                    if _igt(r, z, i, k) != 0:
                        trace.size_reduction_count += 1
            k += 1
    return ReducedBasis(r_bar=r, z=z, trace=trace, delta=delta)


def lll_reduce(r, delta=1.0, trace_diag=False) -> ReducedBasis:
    """delta-LLL reduction of an upper-triangular r with positive diagonal.

    Follows the classic sweep: size-reduce the superdiagonal entry, test the
    Lovasz condition, permute-and-triangularize on failure (stepping back),
    otherwise size-reduce the rest of the column and advance."""
    return _lll_loop(r, delta, trace_diag, size_reduce=True)


def lll_permute_only(r, delta=1.0, trace_diag=False) -> ReducedBasis:
    """Same sweep as lll_reduce with every size reduction skipped, so z is a
    product of permutations only."""
    return _lll_loop(r, delta, trace_diag, size_reduce=False)


def check_reduced(r, delta, tol=1e-12):
    """True iff r is size-reduced and satisfies the Lovasz condition for delta
    (within relative tolerance)."""
    r = check_upper_triangular(r)
    n = r.shape[0]
    for k in range(1, n):
        for i in range(k):
            if abs(r[i, k]) > 0.5 * r[i, i] + tol * r[i, i]:
                return False
        lhs = delta * r[k - 1, k - 1] ** 2
        rhs = r[k - 1, k] ** 2 + r[k, k] ** 2
        if lhs > rhs * (1 + tol):
            return False
    return True


def sqrd_order(a):
    """Sorted QR: at each elimination step pick the remaining column with the
    smallest projected residual norm (ties: lowest original index).

    Returns (QrFactors of a[:, perm], perm)."""
    a = np.asarray(a, dtype=float)
    m, n = a.shape
    work = a.copy()
    q = np.zeros((m, n))
    r = np.zeros((n, n))
    perm = list(range(n))
    for j in range(n):
        norms = np.linalg.norm(work[:, j:], axis=0)
        tied = np.nonzero(norms <= norms.min() * (1 + 1e-14))[0]
        p = j + min(tied, key=lambda t: perm[j + t])
        work[:, [j, p]] = work[:, [p, j]]
        r[:, [j, p]] = r[:, [p, j]]
        perm[j], perm[p] = perm[p], perm[j]
        r[j, j] = np.linalg.norm(work[:, j])
        if r[j, j] <= 1e-12 * np.max(np.abs(a)):
            raise RankDeficiencyError("SQRD pivot collapsed")
        q[:, j] = work[:, j] / r[j, j]
        r[j, j + 1 :] = q[:, j] @ work[:, j + 1 :]
        work[:, j + 1 :] -= np.outer(q[:, j], r[j, j + 1 :])
    return QrFactors(q, r), np.array(perm)


def vblast_order(a):
    """V-BLAST ordering: assign columns last-to-first, at each position taking
    the unassigned column with the largest component orthogonal to the span of
    the other unassigned columns (the max-min diagonal ordering).

    Returns (QrFactors of a[:, perm], perm)."""
    a = np.asarray(a, dtype=float)
    n = a.shape[1]
    remaining = list(range(n))
    perm = [0] * n
    for pos in range(n - 1, -1, -1):
        best_j, best_d = None, -1.0
        for j in remaining:
            others = [c for c in remaining if c != j]
            if others:
                coef, *_ = np.linalg.lstsq(a[:, others], a[:, j], rcond=None)
                resid = a[:, j] - a[:, others] @ coef
            else:
                resid = a[:, j]
            d = np.linalg.norm(resid)
            # ties keep the highest index so orthogonal inputs stay in order
            if d >= best_d * (1 - 1e-14):
                best_j, best_d = j, max(d, best_d)
        perm[pos] = best_j
        remaining.remove(best_j)
    perm = np.array(perm)
    return qr_factorize(a[:, perm]), perm
