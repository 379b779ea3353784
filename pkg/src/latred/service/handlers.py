"""Request -> response functions shared by the FastAPI app and the CLI, so
both fronts compute through the exact same path."""

import math

import numpy as np

from .. import analytics, estimators, experiments, reduction
from . import schemas


def handle_reduce(req: schemas.ReduceRequest) -> schemas.ReduceResponse:
    fn = reduction.lll_permute_only if req.permute_only else reduction.lll_reduce
    red = fn(np.array(req.r), req.delta, trace_diag=req.trace_diag)
    tr = red.trace
    snaps = None
    if tr.per_step_diag_snapshots is not None:
        snaps = [list(map(float, d)) for d in tr.per_step_diag_snapshots]
    return schemas.ReduceResponse(
        r_bar=red.r_bar.tolist(),
        z=[[int(v) for v in row] for row in red.z],
        delta=red.delta,
        trace=schemas.TraceOut(
            permutations=tr.permutation_count,
            size_reductions=tr.size_reduction_count,
            superdiag_size_reductions_before_permutation=(
                tr.superdiag_size_reductions_before_permutation
            ),
            diag_snapshots=snaps,
        ),
    )


def handle_babai(req: schemas.InstanceRequest) -> schemas.BabaiResponse:
    x = estimators.babai_point(np.array(req.r), np.array(req.y))
    return schemas.BabaiResponse(solution=[int(v) for v in x])


def handle_sphere(req: schemas.SphereRequest) -> schemas.SphereResponse:
    res = estimators.sphere_decode(np.array(req.r), np.array(req.y), req.initial_radius)
    return schemas.SphereResponse(
        solution=None if res.solution is None else [int(v) for v in res.solution],
        residual_norm=None if math.isinf(res.residual_norm) else res.residual_norm,
        nodes_total=res.nodes_total,
        nodes_per_level=res.nodes_per_level,
        radius_history=res.radius_history,
    )


def handle_prob(req: schemas.ProbRequest) -> schemas.ProbResponse:
    return schemas.ProbResponse(
        p_b=analytics.success_probability(np.array(req.r), req.sigma)
    )


def handle_bounds(req: schemas.ProbRequest) -> schemas.BoundsResponse:
    rep = analytics.bounds_report(np.array(req.r), req.sigma)
    return schemas.BoundsResponse(**rep.__dict__)


def handle_complexity(req: schemas.ComplexityRequest) -> schemas.ComplexityResponse:
    est = analytics.complexity_estimate(np.array(req.r), req.beta)
    return schemas.ComplexityResponse(
        zeta_hat=est.zeta_hat,
        per_level_terms=est.per_level_terms,
        radius_beta=est.radius_beta,
        overflowed=est.overflowed,
    )


def handle_experiment(req: schemas.ExperimentRequest) -> schemas.ExperimentResponse:
    cfg = experiments.ExperimentConfig(
        case=req.case, n=req.n, sigma_grid=list(req.sigma_grid),
        delta_grid=list(req.delta_grid), runs=req.runs,
        trials_per_run=req.trials_per_run, methods=tuple(req.methods),
        seed=req.seed,
    )
    if req.kind == "prob":
        records = experiments.run_probability_experiment(cfg, with_bounds=req.with_bounds)
    elif req.kind == "empirical":
        records = experiments.run_empirical_success(cfg)
    elif req.kind == "complexity":
        records = experiments.run_complexity_experiment(cfg, beta_rule=req.beta_rule)
    else:
        raise ValueError("kind must be prob, empirical or complexity")
    return schemas.ExperimentResponse(
        csv=experiments.records_to_csv(records), record_count=len(records)
    )
