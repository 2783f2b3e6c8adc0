"""Rank-k numerical ranges of complex matrices.

The rank-k numerical range of an n-by-n matrix ``a`` is the set of complex
``mu`` for which some n-by-k isometry ``x`` satisfies ``x* a x = mu I``.  The
package computes the region bounded by sampled support half-planes, decides
membership, certifies emptiness with at most three half-planes, certifies
nonemptiness with verified compression isometries, and builds the exact region
for normal matrices and empty-range examples above the size threshold.
"""

from .counterexample import build_counterexample, perturb_nonnormal
from .engine import (
    Approximate,
    EmptyCertificate,
    Membership,
    MembershipResult,
    NonEmptyWitness,
    NonemptinessThreshold,
    ProvablyEmpty,
    ProvablyNonEmpty,
    RankRangeQuery,
    RankRangeResult,
    Undecided,
    boundary_region,
    emptiness_check,
    membership,
    nonemptiness_threshold,
    support_value,
    support_values,
)
from .errors import (
    CombinatorialLimitError,
    DimensionMismatchError,
    EmptinessLostError,
    EmptyIntersectionError,
    EmptyRegionError,
    NoConvergenceError,
    NonFiniteError,
    NotHermitianError,
    RankRangeError,
    SynthesisError,
    ThresholdViolatedError,
    UnboundedRegionError,
)
from .estimator import NumericalRange
from .geometry import (
    ChebyshevResult,
    ConvexRegion,
    HalfPlane,
    RegionKind,
    chebyshev_center,
    halfplane_with_normal,
    hausdorff_distance,
    intersect_halfplanes,
)
from .io import (
    RegionExport,
    read_matrix,
    read_region_csv,
    read_region_json,
    write_matrix_csv,
    write_matrix_json,
    write_region_csv,
    write_region_json,
    write_region_svg,
)
from .linalg import hermitian_eig, hermitian_part_at, subspace_intersection, Subspace
from .normal import convex_hull, is_normal, normal_exact_region
from .settings import DEFAULT, Tolerances, geometric_tolerance
from .witness import (
    HellyWitness,
    Isometry,
    RiccatiProblem,
    canonical_block,
    canonical_zero_witness,
    compression_objective,
    compression_residual,
    helly_witness,
    riccati_equivalence_check,
    riccati_fixed_point_residual,
    riccati_residual,
    riccati_solve,
    synthesize_isometry,
    verify_compression,
)

__version__ = "0.1.0"

__all__ = [
    "Approximate",
    "ChebyshevResult",
    "CombinatorialLimitError",
    "ConvexRegion",
    "DEFAULT",
    "DimensionMismatchError",
    "EmptinessLostError",
    "EmptyCertificate",
    "EmptyIntersectionError",
    "EmptyRegionError",
    "HalfPlane",
    "HellyWitness",
    "Isometry",
    "Membership",
    "MembershipResult",
    "NoConvergenceError",
    "NonEmptyWitness",
    "NonFiniteError",
    "NonemptinessThreshold",
    "NotHermitianError",
    "NumericalRange",
    "ProvablyEmpty",
    "ProvablyNonEmpty",
    "RankRangeError",
    "RankRangeQuery",
    "RankRangeResult",
    "RegionExport",
    "RegionKind",
    "RiccatiProblem",
    "Subspace",
    "SynthesisError",
    "ThresholdViolatedError",
    "Tolerances",
    "UnboundedRegionError",
    "Undecided",
    "boundary_region",
    "build_counterexample",
    "canonical_block",
    "canonical_zero_witness",
    "chebyshev_center",
    "compression_objective",
    "compression_residual",
    "convex_hull",
    "emptiness_check",
    "geometric_tolerance",
    "halfplane_with_normal",
    "hausdorff_distance",
    "helly_witness",
    "hermitian_eig",
    "hermitian_part_at",
    "intersect_halfplanes",
    "is_normal",
    "membership",
    "nonemptiness_threshold",
    "normal_exact_region",
    "perturb_nonnormal",
    "read_matrix",
    "read_region_csv",
    "read_region_json",
    "riccati_equivalence_check",
    "riccati_fixed_point_residual",
    "riccati_residual",
    "riccati_solve",
    "subspace_intersection",
    "support_value",
    "support_values",
    "synthesize_isometry",
    "verify_compression",
    "write_matrix_csv",
    "write_matrix_json",
    "write_region_csv",
    "write_region_json",
    "write_region_svg",
]
