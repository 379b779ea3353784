"""Seeded random model generators (Cases 1-3), the Monte-Carlo harness behind
the probability / complexity tables, and CSV emission.

Gaussian draws come from numpy's PCG64 generator (ziggurat normals). Each run
gets its own substream seeded by (seed, run_index), so results do not depend
on execution order."""

import csv
import io
import math
from dataclasses import dataclass, field, fields

import numpy as np

from . import analytics
from .estimators import babai_point_batch
from .linalg import qr_factorize
from .reduction import lll_permute_only, lll_reduce, sqrd_order, vblast_order

RNG_ALGORITHM = "numpy PCG64 (ziggurat standard normals)"

METHODS = ("QR", "SQRD", "VBLAST", "LLL-permute", "LLL")


def rng_for_run(seed: int, run_index: int):
    """Independent substream for one run; order-independent by construction."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(run_index)]))


@dataclass
class ExperimentConfig:
    case: int = 1
    n: int = 20
    sigma_grid: list = field(default_factory=lambda: [0.1, 0.2, 0.3])
    delta_grid: list = field(default_factory=lambda: [1.0])
    runs: int = 200
    trials_per_run: int = 10_000
    methods: tuple = ("QR", "LLL")
    seed: int = 0

    def validate(self):
        if self.case not in (1, 2, 3):
            raise ValueError("case must be 1, 2 or 3")
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if not self.sigma_grid or not self.delta_grid:
            raise ValueError("sigma/delta grids must be non-empty")
        for m in self.methods:
            if m not in METHODS:
                raise ValueError(f"unknown method {m!r}")
        return self


@dataclass
class ExperimentRecord:
    case: int
    n: int
    sigma: float
    delta: float
    method: str
    run_index: int
    p_b: float
    chi2_lower: float | None = None
    beta1: float | None = None
    beta2: float | None = None
    beta3: float | None = None
    zeta_hat: float | None = None
    empirical_success: float | None = None
    permutation_count: int | None = None


def generate_case1(n, rng):
    """n x n matrix of independent N(0,1) entries."""
    return rng.standard_normal((n, n))


def random_orthogonal(n, rng):
    return qr_factorize(rng.standard_normal((n, n))).q1


def generate_case2(n, rng):
    """A = U D V^T with random orthogonal U, V and d_ii = 10^(3(n/2-i)/(n-1))."""
    if n < 2:
        raise ValueError("case 2 needs n >= 2")
    u = random_orthogonal(n, rng)
    v = random_orthogonal(n, rng)
    i = np.arange(1, n + 1)
    d = 10.0 ** (3.0 * (n / 2.0 - i) / (n - 1.0))
    return u @ np.diag(d) @ v.T


def generate_case3(n, rng):
    """Upper triangular R with r_ii = sqrt(chi2(i) draw) (as a sum of squared
    normals) and r_ij ~ N(0,1) above the diagonal."""
    r = np.triu(rng.standard_normal((n, n)), 1)
    for i in range(n):
        draws = rng.standard_normal(i + 1)
        r[i, i] = math.sqrt(float(draws @ draws))
    return r


def generate_model(case, n, rng):
    """Full model matrix A for the given case (case 3 wraps its R with a
    random orthogonal Q)."""
    if case == 1:
        return generate_case1(n, rng)
    if case == 2:
        return generate_case2(n, rng)
    if case == 3:
        return random_orthogonal(n, rng) @ generate_case3(n, rng)
    raise ValueError("case must be 1, 2 or 3")


def r_factor_for_method(a, method, delta=1.0):
    """R factor produced by one preprocessing strategy. Returns
    (r, permutation_count); the count is None for non-LLL strategies."""
    if method == "QR":
        return qr_factorize(a).r, None
    if method == "SQRD":
        return sqrd_order(a)[0].r, None
    if method == "VBLAST":
        return vblast_order(a)[0].r, None
    if method == "LLL-permute":
        red = lll_permute_only(qr_factorize(a).r, delta)
        return red.r_bar, red.trace.permutation_count
    if method == "LLL":
        red = lll_reduce(qr_factorize(a).r, delta)
        return red.r_bar, red.trace.permutation_count
    raise ValueError(f"unknown method {method!r}")


def run_probability_experiment(cfg: ExperimentConfig, with_bounds=False):
    """One record per (run, method, delta, sigma) holding the analytic P_B
    (and the bounds when requested)."""
    cfg.validate()
    records = []
    for run in range(cfg.runs):
        rng = rng_for_run(cfg.seed, run)
        a = generate_model(cfg.case, cfg.n, rng)
        for method in cfg.methods:
            deltas = cfg.delta_grid if method in ("LLL", "LLL-permute") else [cfg.delta_grid[0]]
            for delta in deltas:
                try:
                    r, perms = r_factor_for_method(a, method, delta)
                except Exception as exc:
                    raise RuntimeError(f"run {run}, method {method}: {exc}") from exc
                for sigma in cfg.sigma_grid:
                    rec = ExperimentRecord(
                        case=cfg.case, n=cfg.n, sigma=sigma, delta=delta,
                        method=method, run_index=run,
                        p_b=analytics.success_probability(r, sigma),
                        permutation_count=perms,
                    )
                    if with_bounds:
                        rep = analytics.bounds_report(r, sigma)
                        rec.chi2_lower = rep.chi2_lower
                        rec.beta1 = rep.beta1
                        rec.beta2 = rep.beta2
                        rec.beta3 = rep.beta3
                    records.append(rec)
    return sort_records(records)


def run_empirical_success(cfg: ExperimentConfig):
    """For each run: fix A, take the true parameter vector as 0, draw
    trials_per_run noise vectors, and record the Babai hit frequency next to
    the analytic P_B."""
    cfg.validate()
    records = []
    for run in range(cfg.runs):
        rng = rng_for_run(cfg.seed, run)
        a = generate_model(cfg.case, cfg.n, rng)
        for method in cfg.methods:
            r, perms = r_factor_for_method(a, method, cfg.delta_grid[0])
            for sigma in cfg.sigma_grid:
                noise = sigma * rng.standard_normal((cfg.trials_per_run, cfg.n))
                hits = babai_point_batch(r, noise)
                freq = float(np.mean(np.all(hits == 0, axis=1)))
                records.append(ExperimentRecord(
                    case=cfg.case, n=cfg.n, sigma=sigma, delta=cfg.delta_grid[0],
                    method=method, run_index=run,
                    p_b=analytics.success_probability(r, sigma),
                    empirical_success=freq, permutation_count=perms,
                ))
    return sort_records(records)


def run_complexity_experiment(cfg: ExperimentConfig, beta_rule=1.0):
    """zeta_hat per (run, method). beta_rule is either a fixed radius or the
    string "babai" to use the per-run Babai residual of a unit noise draw."""
    cfg.validate()
    records = []
    for run in range(cfg.runs):
        rng = rng_for_run(cfg.seed, run)
        a = generate_model(cfg.case, cfg.n, rng)
        if beta_rule == "babai":
            # Babai residual of one noise draw around the zero lattice point
            r0 = qr_factorize(a).r
            y = cfg.sigma_grid[0] * rng.standard_normal(cfg.n)
            xb = babai_point_batch(r0, y[None, :])[0]
            beta = float(np.linalg.norm(y - r0 @ xb)) or 1.0
        else:
            beta = float(beta_rule)
        for method in cfg.methods:
            r, perms = r_factor_for_method(a, method, cfg.delta_grid[0])
            est = analytics.complexity_estimate(r, beta)
            records.append(ExperimentRecord(
                case=cfg.case, n=cfg.n, sigma=cfg.sigma_grid[0],
                delta=cfg.delta_grid[0], method=method, run_index=run,
                p_b=analytics.success_probability(r, cfg.sigma_grid[0]),
                zeta_hat=est.zeta_hat, permutation_count=perms,
            ))
    return sort_records(records)


_FIELDS = [f.name for f in fields(ExperimentRecord)]


def sort_records(records):
    return sorted(records, key=lambda r: (r.case, r.n, r.sigma, r.delta, r.method, r.run_index))


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def records_to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(_FIELDS)
    for rec in sort_records(records):
        w.writerow([_fmt(getattr(rec, name)) for name in _FIELDS])
    return buf.getvalue()


def emit_csv(records, destination) -> None:
    text = records_to_csv(records)
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        with open(destination, "w") as fh:
            fh.write(text)


def parse_csv(text: str):
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != _FIELDS:
        raise ValueError("unexpected CSV header")
    records = []
    for row in rows[1:]:
        kw = {}
        for name, raw in zip(_FIELDS, row):
            if raw == "":
                kw[name] = None
            elif name in ("case", "n", "run_index", "permutation_count"):
                kw[name] = int(raw)
            elif name == "method":
                kw[name] = raw
            else:
                kw[name] = float(raw)
        records.append(ExperimentRecord(**kw))
    return records


def mean_by(records, keys=("method", "sigma"), value="p_b"):
    """Group records by the given attributes and average one value field."""
    groups = {}
    for rec in records:
        k = tuple(getattr(rec, a) for a in keys)
        groups.setdefault(k, []).append(getattr(rec, value))
    return {k: float(np.mean(v)) for k, v in groups.items()}
