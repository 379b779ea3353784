"""Pydantic request/response models for the HTTP API. Matrices travel as
nested lists of floats; unimodular Z matrices as nested lists of ints."""

from pydantic import BaseModel, Field

Matrix = list[list[float]]
Vector = list[float]


class ReduceRequest(BaseModel):
    r: Matrix
    delta: float = 1.0
    permute_only: bool = False
    trace_diag: bool = False


class TraceOut(BaseModel):
    permutations: int
    size_reductions: int
    superdiag_size_reductions_before_permutation: int
    diag_snapshots: list[Vector] | None = None


class ReduceResponse(BaseModel):
    r_bar: Matrix
    z: list[list[int]]
    delta: float
    trace: TraceOut


class InstanceRequest(BaseModel):
    r: Matrix
    y: Vector
    sigma: float | None = Field(default=None, gt=0)


class BabaiResponse(BaseModel):
    solution: list[int]


class SphereRequest(InstanceRequest):
    initial_radius: float | None = Field(default=None, gt=0)


class SphereResponse(BaseModel):
    solution: list[int] | None
    residual_norm: float | None
    nodes_total: int
    nodes_per_level: list[int]
    radius_history: Vector


class ProbRequest(BaseModel):
    r: Matrix
    sigma: float = Field(gt=0)


class ProbResponse(BaseModel):
    p_b: float


class BoundsResponse(BaseModel):
    n: int
    sigma: float
    p_b: float
    chi2_lower: float
    beta1: float
    beta2: float
    beta3: float
    block_indices: list[int]


class ComplexityRequest(BaseModel):
    r: Matrix
    beta: float = Field(gt=0)


class ComplexityResponse(BaseModel):
    zeta_hat: float
    per_level_terms: Vector
    radius_beta: float
    overflowed: bool


class ExperimentRequest(BaseModel):
    case: int = 1
    n: int = 20
    sigma_grid: Vector = [0.1, 0.2, 0.3]
    delta_grid: Vector = [1.0]
    runs: int = 200
    trials_per_run: int = 10_000
    methods: list[str] = ["QR", "LLL"]
    seed: int = 0
    kind: str = "prob"  # prob | empirical | complexity
    with_bounds: bool = False
    beta_rule: float | str = 1.0


class ExperimentResponse(BaseModel):
    csv: str
    record_count: int
