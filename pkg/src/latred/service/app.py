"""FastAPI front end. Domain errors (bad sigma, rank deficiency, budget
exhaustion) map to 422; everything else bubbles up as 500."""

from fastapi import FastAPI, HTTPException

from ..estimators import EnumerationBudgetError
from ..linalg import RankDeficiencyError
from . import handlers, schemas

app = FastAPI(title="latred", version="0.1.0")


def _run(handler, req):
    try:
        return handler(req)
    except (ValueError, ArithmeticError, RankDeficiencyError, EnumerationBudgetError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/reduce", response_model=schemas.ReduceResponse)
def reduce(req: schemas.ReduceRequest):
    return _run(handlers.handle_reduce, req)


@app.post("/babai", response_model=schemas.BabaiResponse)
def babai(req: schemas.InstanceRequest):
    return _run(handlers.handle_babai, req)


@app.post("/sphere", response_model=schemas.SphereResponse)
def sphere(req: schemas.SphereRequest):
    return _run(handlers.handle_sphere, req)


@app.post("/prob", response_model=schemas.ProbResponse)
def prob(req: schemas.ProbRequest):
    return _run(handlers.handle_prob, req)


@app.post("/bounds", response_model=schemas.BoundsResponse)
def bounds(req: schemas.ProbRequest):
    return _run(handlers.handle_bounds, req)


@app.post("/complexity", response_model=schemas.ComplexityResponse)
def complexity(req: schemas.ComplexityRequest):
    return _run(handlers.handle_complexity, req)


@app.post("/experiment", response_model=schemas.ExperimentResponse)
def experiment(req: schemas.ExperimentRequest):
    return _run(handlers.handle_experiment, req)
