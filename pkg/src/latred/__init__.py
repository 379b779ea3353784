"""Lattice-reduction and integer-least-squares toolkit: LLL reduction, the
Babai nearest-plane estimator, Schnorr-Euchner sphere decoding, and analytic
success-probability / complexity machinery, with a seeded experiment harness."""

from .analytics import (
    BoundsReport,
    ComplexityEstimate,
    beta1,
    beta2,
    beta3,
    bounds_report,
    chi2_lower_bound,
    complexity_estimate,
    find_block_indices,
    phi,
    success_probability,
)
from .estimators import (
    EnumerationBudgetError,
    SphereResult,
    babai_point,
    babai_point_batch,
    count_points_in_region,
    sphere_decode,
)
from .linalg import (
    QrFactors,
    RankDeficiencyError,
    givens_permute_triangularize,
    qr_factorize,
    round_to_nearest,
)
from .reduction import (
    ReducedBasis,
    ReductionTrace,
    integer_gauss_transform,
    lll_permute_only,
    lll_reduce,
    sqrd_order,
    unimodular_det,
    vblast_order,
)

__version__ = "0.1.0"
