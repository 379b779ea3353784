"""Babai nearest-plane estimator and a Schnorr-Euchner sphere decoder with
radius shrinking and exact node accounting."""

import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import check_upper_triangular, round_to_nearest, round_to_nearest_vec

INITIAL_RADIUS_SLACK = 1e-9


class EnumerationBudgetError(RuntimeError):
    """Raised when a fixed-radius enumeration exceeds its node budget."""


@dataclass
class SphereResult:
    solution: np.ndarray | None
    residual_norm: float
    nodes_total: int
    nodes_per_level: list
    radius_history: list
    first_leaf: np.ndarray | None = None


def _check_instance(r, y):
    r = check_upper_triangular(r)
    y = np.asarray(y, dtype=float).ravel()
    if y.shape[0] != r.shape[0]:
        raise ValueError("y length must match R dimension")
    return r, y


def babai_point(r, y):
    """Nearest-plane point: solve components last to first, rounding each
    (ties toward the smaller magnitude)."""
    r, y = _check_instance(r, y)
    n = r.shape[0]
    x = np.zeros(n, dtype=np.int64)
    for i in range(n - 1, -1, -1):
        c = (y[i] - r[i, i + 1 :] @ x[i + 1 :]) / r[i, i]
        x[i] = round_to_nearest(c)
    return x


def babai_point_batch(r, ys):
    """babai_point applied to each row of ys (trials x n), vectorized across
    trials for Monte-Carlo use."""
    r = check_upper_triangular(r)
    ys = np.asarray(ys, dtype=float)
    n = r.shape[0]
    x = np.zeros_like(ys)
    for i in range(n - 1, -1, -1):
        c = (ys[:, i] - x[:, i + 1 :] @ r[i, i + 1 :]) / r[i, i]
        x[:, i] = round_to_nearest_vec(c)
    return x.astype(np.int64)


def _next_candidate(x, step):
    # zig-zag around the real center: nearest first, then alternate outward
    return x + step, -step - (1 if step > 0 else -1)


def _initial_candidate(c):
    x = round_to_nearest(c)
    d = c - x
    if d > 0:
        step = 1
    elif d < 0:
        step = -1
    else:
        # exact center: next candidates x+-1 are equidistant; prefer the
        # smaller magnitude, then the positive side
        step = -1 if x > 0 else 1
    return x, step


def sphere_decode(r, y, initial_radius=None) -> SphereResult:
    """Exact ILS minimizer by Schnorr-Euchner depth-first search.

    The first full-length point visited is the Babai point. Without an explicit
    initial radius the search starts at the Babai residual (with a hair of
    slack so that point itself is inside). A node is any partial assignment
    (x_i..x_n) whose partial residual does not exceed the current radius."""
    r, y = _check_instance(r, y)
    n = r.shape[0]
    if initial_radius is None:
        xb = babai_point(r, y)
        radius = float(np.linalg.norm(y - r @ xb)) * (1.0 + INITIAL_RADIUS_SLACK)
        if radius == 0.0:
            radius = INITIAL_RADIUS_SLACK
    else:
        if initial_radius <= 0:
            raise ValueError("initial_radius must be positive")
        radius = float(initial_radius)

    radius_sq = radius * radius
    best = None
    first_leaf = None
    best_sq = math.inf
    nodes_per_level = [0] * n
    radius_history = [radius]

    x = np.zeros(n, dtype=np.int64)
    steps = [0] * n
    dist = [0.0] * (n + 1)  # dist[i] = partial squared residual of levels > i
    lvl = n - 1
    c = y[lvl] / r[lvl, lvl]
    x[lvl], steps[lvl] = _initial_candidate(c)
    while True:
        t = y[lvl] - r[lvl, lvl + 1 :] @ x[lvl + 1 :]
        d = dist[lvl + 1] + (t - r[lvl, lvl] * x[lvl]) ** 2
        if d <= radius_sq:
            nodes_per_level[lvl] += 1
            if lvl == 0:
                if first_leaf is None:
                    first_leaf = x.copy()
                if d < best_sq:
                    best = x.copy()
                    best_sq = d
                    radius = math.sqrt(d)
                    radius_sq = d
                    radius_history.append(radius)
                x[lvl], steps[lvl] = _next_candidate(x[lvl], steps[lvl])
            else:
                lvl -= 1
                dist[lvl + 1] = d
                c = (y[lvl] - r[lvl, lvl + 1 :] @ x[lvl + 1 :]) / r[lvl, lvl]
                x[lvl], steps[lvl] = _initial_candidate(c)
        else:
            # candidates at this level only get farther: back up
            lvl += 1
            if lvl >= n:
                break
            x[lvl], steps[lvl] = _next_candidate(x[lvl], steps[lvl])

    residual = math.sqrt(best_sq) if best is not None else math.inf
    return SphereResult(
        solution=best,
        residual_norm=residual,
        nodes_total=sum(nodes_per_level),
        nodes_per_level=nodes_per_level,
        radius_history=radius_history,
        first_leaf=first_leaf,
    )


def count_points_in_region(r, y, beta, level, budget=10_000_000):
    """Exact count of integer subvectors (x_level..x_n), 1-based level, with
    ||y_{level:n} - R_{level:n,level:n} x|| <= beta. No radius shrinking.

    Raises EnumerationBudgetError when more than `budget` partial vectors pass
    the radius test during the enumeration."""
    r, y = _check_instance(r, y)
    n = r.shape[0]
    if not 1 <= level <= n:
        raise ValueError("level must be in 1..n")
    if beta <= 0:
        raise ValueError("beta must be positive")
    lo = level - 1
    beta_sq = beta * beta
    count = 0
    visited = 0

    x = np.zeros(n, dtype=np.int64)
    steps = [0] * n
    dist = [0.0] * (n + 1)
    lvl = n - 1
    c = y[lvl] / r[lvl, lvl]
    x[lvl], steps[lvl] = _initial_candidate(c)
    while True:
        t = y[lvl] - r[lvl, lvl + 1 :] @ x[lvl + 1 :]
        d = dist[lvl + 1] + (t - r[lvl, lvl] * x[lvl]) ** 2
        if d <= beta_sq:
            visited += 1
            if visited > budget:
                raise EnumerationBudgetError(f"enumeration exceeded {budget} nodes")
            if lvl == lo:
                count += 1
                x[lvl], steps[lvl] = _next_candidate(x[lvl], steps[lvl])
            else:
                lvl -= 1
                dist[lvl + 1] = d
                c = (y[lvl] - r[lvl, lvl + 1 :] @ x[lvl + 1 :]) / r[lvl, lvl]
                x[lvl], steps[lvl] = _initial_candidate(c)
        else:
            lvl += 1
            if lvl >= n:
                break
            x[lvl], steps[lvl] = _next_candidate(x[lvl], steps[lvl])
    return count
