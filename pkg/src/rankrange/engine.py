"""Grid-sampled computation of rank-k numerical ranges.

Every query rotates the matrix through a uniform family of angles, takes the
k-th largest eigenvalue of each rotated Hermitian part as a support value and
works with the resulting outer family of half-planes.  Emptiness verdicts on
that family are certified: an empty intersection is witnessed by at most three
of the sampled half-planes, a nonempty one by a verified compression isometry.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from .errors import RankRangeError, SynthesisError
from .geometry import ConvexRegion, HalfPlane, RegionKind, intersect_halfplanes
from .linalg import max_abs, support_eigenvalues
from .settings import DEFAULT
from .validation import check_points, check_rank, check_square_matrix
from .witness import Isometry, _floating_witness, synthesize_isometry, verify_compression

__all__ = [
    "RankRangeQuery",
    "RankRangeResult",
    "Membership",
    "MembershipResult",
    "EmptyCertificate",
    "NonEmptyWitness",
    "Approximate",
    "ProvablyEmpty",
    "ProvablyNonEmpty",
    "Undecided",
    "NonemptinessThreshold",
    "support_value",
    "support_values",
    "membership",
    "boundary_region",
    "emptiness_check",
    "nonemptiness_threshold",
]

MIN_GRID = 8
REFINEMENT_SPAN = 4
REFINEMENT_BAND = 1e-6


@dataclass(frozen=True)
class RankRangeQuery:
    """A matrix, a rank and the sampling parameters for one computation."""

    matrix: np.ndarray
    k: int
    grid_size: int = 720
    tolerance: float = DEFAULT.geometric

    def __post_init__(self):
        a = check_square_matrix(self.matrix)
        object.__setattr__(self, "matrix", a)
        object.__setattr__(self, "k", check_rank(self.k, a.shape[0]))
        if int(self.grid_size) != self.grid_size or self.grid_size < MIN_GRID:
            raise RankRangeError(f"grid_size must be an integer >= {MIN_GRID}")
        object.__setattr__(self, "grid_size", int(self.grid_size))
        if not (float(self.tolerance) > 0.0):
            raise RankRangeError("tolerance must be positive")
        object.__setattr__(self, "tolerance", float(self.tolerance))

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def support_value(a, k: int, angle: float) -> float:
    """k-th largest eigenvalue of e^{it} a + e^{-it} a* at t = angle."""
    a = check_square_matrix(a)
    k = check_rank(k, a.shape[0])
    return float(support_eigenvalues(a, np.array([float(angle)]))[0, k - 1])


def support_values(a, k: int, angles) -> np.ndarray:
    """Support values at several angles at once."""
    a = check_square_matrix(a)
    k = check_rank(k, a.shape[0])
    angles = np.atleast_1d(np.asarray(angles, dtype=float))
    return support_eigenvalues(a, angles)[:, k - 1]


def _uniform_angles(m: int) -> np.ndarray:
    return 2.0 * np.pi * np.arange(m) / m


def _family(query: RankRangeQuery) -> tuple[np.ndarray, np.ndarray]:
    angles = _uniform_angles(query.grid_size)
    offsets = support_eigenvalues(query.matrix, angles)[:, query.k - 1]
    return angles, offsets


def _slacks(angles: np.ndarray, offsets: np.ndarray, point: complex) -> np.ndarray:
    return offsets - 2.0 * np.real(np.exp(1j * angles) * point)


def _midpoint_angles(query: RankRangeQuery, index: int) -> np.ndarray:
    """Midpoints of the grid cells surrounding one sampled angle.

    Midpoints of the m-point grid are nodes of the 2m-point grid, so a refined
    family stays a subfamily of the next finer uniform family and refinement
    can only shrink the computed region.
    """
    m = query.grid_size
    cells = np.arange(index - REFINEMENT_SPAN, index + REFINEMENT_SPAN)
    return (2.0 * np.pi * (cells % m + 0.5) / m) % (2.0 * np.pi)


def _refined_family(query: RankRangeQuery, angles, offsets, focus: complex):
    """Add midpoint angles around every constraint near the minimal slack.

    The inscribed circle touches several constraints at once, so the minimal
    slack is attained by a whole tied set; refining the full set (anything
    within a small relative band of the minimum) keeps the choice stable when
    the matrix is conjugated by a unitary or mapped by a grid-aligned affine
    change, where breaking the tie by plain argmin would follow rounding
    noise instead.
    """
    slacks = _slacks(angles, offsets, focus)
    band = REFINEMENT_BAND * max(1.0, float(np.abs(offsets).max()))
    tight = np.flatnonzero(slacks <= float(slacks.min()) + band)
    extra_angles = np.unique(
        np.concatenate([_midpoint_angles(query, int(j)) for j in tight])
    )
    extra_offsets = support_eigenvalues(query.matrix, extra_angles)[:, query.k - 1]
    combined_angles = np.concatenate([angles, extra_angles])
    combined_offsets = np.concatenate([offsets, extra_offsets])
    order = np.argsort(combined_angles)
    return combined_angles[order], combined_offsets[order]


class Membership(enum.Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class MembershipResult:
    verdict: Membership
    margin: float
    angle: float | None = None


def membership(query: RankRangeQuery, point: complex) -> MembershipResult:
    """Classify a point against the sampled support family.

    Outside verdicts are sound for the true region (a violated half-plane
    constraint excludes the point); inside and boundary verdicts are relative
    to the sampled family, refined once around the tightest angle.
    """
    point = complex(check_points(point)[0])
    angles, offsets = _family(query)
    angles, offsets = _refined_family(query, angles, offsets, point)
    slacks = _slacks(angles, offsets, point)
    j = int(np.argmin(slacks))
    margin = float(slacks[j])
    if margin < -query.tolerance:
        return MembershipResult(Membership.OUTSIDE, margin, float(angles[j]))
    if margin > query.tolerance:
        return MembershipResult(Membership.INSIDE, margin, float(angles[j]))
    return MembershipResult(Membership.BOUNDARY, margin, float(angles[j]))


@dataclass(frozen=True)
class EmptyCertificate:
    """At most three sampled half-planes with empty common intersection."""

    angles: np.ndarray
    offsets: np.ndarray

    def planes(self) -> list[HalfPlane]:
        return [HalfPlane(t, h) for t, h in zip(self.angles, self.offsets)]


@dataclass(frozen=True)
class NonEmptyWitness:
    """A verified point of the region together with its compression isometry."""

    mu: complex
    isometry: Isometry
    residual: float


@dataclass(frozen=True)
class Approximate:
    """No certificate; the region is reported as sampled."""

    reason: str = ""


@dataclass(frozen=True)
class RankRangeResult:
    region: ConvexRegion
    certificate: EmptyCertificate | NonEmptyWitness | Approximate
    angles: np.ndarray = field(repr=False)
    offsets: np.ndarray = field(repr=False)


def _chebyshev(angles: np.ndarray, offsets: np.ndarray):
    """Largest inscribed-circle LP for the half-plane family.

    Returns (center, radius, marginals); None when the LP is unbounded, which
    cannot happen for families covering more than a half turn.
    """
    cos_t, sin_t = np.cos(angles), np.sin(angles)
    a_ub = np.column_stack([2.0 * cos_t, -2.0 * sin_t, np.ones_like(angles)])
    res = linprog(
        c=[0.0, 0.0, -1.0],
        A_ub=a_ub,
        b_ub=offsets,
        bounds=[(None, None), (None, None), (None, None)],
        method="highs",
    )
    if not res.success:
        return None
    center = complex(res.x[0], res.x[1])
    marginals = np.asarray(res.ineqlin.marginals) if res.ineqlin is not None else np.zeros_like(offsets)
    return center, float(res.x[2]), marginals


def _subset_infeasible(angles: np.ndarray, offsets: np.ndarray, strict: float) -> bool:
    sol = _chebyshev(angles, offsets)
    return sol is not None and sol[1] < -strict


def _minimal_certificate(angles, offsets, marginals, tolerance: float) -> EmptyCertificate:
    """Shrink an infeasible family to at most three generating half-planes.

    The dual weights of the inscribed-circle LP single out the binding
    constraints; an infeasible pair (two near-antiparallel planes) or triple
    among the high-weight constraints is tried first, and a greedy pruning
    pass covers the rare degenerate dual.
    """
    scale = max(1.0, float(np.abs(offsets).max()))
    strict = max(1e-12 * scale, tolerance / 10.0)
    weights = np.abs(marginals)
    candidates = [int(i) for i in np.argsort(-weights) if weights[i] > 1e-11][:12]
    for size in (2, 3):
        for subset in itertools.combinations(candidates, size):
            idx = np.array(subset)
            if _subset_infeasible(angles[idx], offsets[idx], strict):
                return EmptyCertificate(angles[idx], offsets[idx])
    # greedy fallback: drop constraints while infeasibility survives
    keep = [int(i) for i in np.argsort(-weights)[:24]]
    if not _subset_infeasible(angles[keep], offsets[keep], strict):
        keep = list(range(len(angles)))
    changed = True
    while changed and len(keep) > 3:
        changed = False
        for i in list(keep):
            trial = [j for j in keep if j != i]
            if _subset_infeasible(angles[trial], offsets[trial], strict):
                keep = trial
                changed = True
    idx = np.array(keep)
    if not _subset_infeasible(angles[idx], offsets[idx], strict):
        raise RankRangeError("failed to extract an infeasible subfamily")
    return EmptyCertificate(angles[idx], offsets[idx])


def _attempt_witness(
    query: RankRangeQuery, target: complex, escalate: bool, tol: float = DEFAULT.witness
) -> tuple[complex, Isometry, float] | None:
    """Fixed-target synthesis followed by floating-target search."""
    a, k = query.matrix, query.k
    budgets = [(6, 1500)] + ([(20, 5000)] if escalate else [])
    for round_idx, (starts, iters) in enumerate(budgets):
        try:
            iso = synthesize_isometry(
                a, k, target, tol=tol, n_starts=starts, max_iter=iters, seed=2 * round_idx
            )
            return target, iso, _residual(a, iso, target)
        except (SynthesisError, RankRangeError):
            pass
        found = _floating_witness(
            a, k, tol=tol, n_starts=starts, max_iter=iters, seed=2 * round_idx + 1, shift=target
        )
        if found is not None:
            mu, iso = found
            return mu, iso, _residual(a, iso, mu)
    return None


def _residual(a: np.ndarray, iso: Isometry, mu: complex) -> float:
    c = iso.matrix.conj().T @ a @ iso.matrix
    return max_abs(c - mu * np.eye(iso.k))


def boundary_region(query: RankRangeQuery, attempt_witness: bool = True) -> RankRangeResult:
    """Region bounded by the sampled support family, with a certificate.

    The family is refined once with midpoint angles around the constraints of
    near-minimal slack before intersecting.  A nonempty region carries a
    verified compression witness when synthesis succeeds, an empty one
    carries at most three sampled half-planes whose intersection is already
    empty.
    """
    angles, offsets = _family(query)
    sol = _chebyshev(angles, offsets)
    if sol is None:
        raise RankRangeError("support family left the intersection unbounded")
    center, radius, marginals = sol
    if radius < -query.tolerance:
        certificate = _minimal_certificate(angles, offsets, marginals, query.tolerance)
        region = ConvexRegion(RegionKind.EMPTY, np.empty(0, dtype=np.complex128))
        return RankRangeResult(region, certificate, angles, offsets)

    # The refinement focus must be canonical for the region, not for the LP:
    # slab-like families leave the largest inscribed disk free to slide, and
    # the solver's arbitrary pick would make the refined cells (and hence the
    # computed vertices) depend on the matrix representation.  The vertex
    # mean of the unrefined intersection transforms exactly with the region.
    coarse = intersect_halfplanes(
        [HalfPlane(t, h) for t, h in zip(angles, offsets)], tolerance=query.tolerance
    )
    focus = complex(np.mean(coarse.vertices)) if not coarse.is_empty else center
    angles, offsets = _refined_family(query, angles, offsets, focus)
    planes = [HalfPlane(t, h) for t, h in zip(angles, offsets)]
    region = intersect_halfplanes(planes, tolerance=query.tolerance)
    if region.is_empty:
        refined = _chebyshev(angles, offsets)
        marginals = refined[2] if refined is not None else marginals
        certificate = _minimal_certificate(angles, offsets, marginals, query.tolerance)
        return RankRangeResult(region, certificate, angles, offsets)

    certificate: EmptyCertificate | NonEmptyWitness | Approximate = Approximate()
    if attempt_witness:
        if region.kind is RegionKind.POLYGON:
            target, tol = center, DEFAULT.witness
        else:
            # degenerate regions put the target on the boundary, where the
            # synthesis tolerance is relaxed before giving up
            target, tol = complex(np.mean(region.vertices)), DEFAULT.witness_boundary
        found = _attempt_witness(query, target, escalate=False, tol=tol)
        if found is not None:
            mu, iso, res = found
            certificate = NonEmptyWitness(mu, iso, res)
        else:
            certificate = Approximate("witness synthesis did not converge")
    return RankRangeResult(region, certificate, angles, offsets)


@dataclass(frozen=True)
class ProvablyEmpty:
    certificate: EmptyCertificate


@dataclass(frozen=True)
class ProvablyNonEmpty:
    witness: NonEmptyWitness


@dataclass(frozen=True)
class Undecided:
    reason: str
    margin: float


class NonemptinessThreshold(enum.Enum):
    GUARANTEED_NONEMPTY = "guaranteed nonempty"
    POSSIBLY_EMPTY = "possibly empty"


def nonemptiness_threshold(n: int, k: int) -> NonemptinessThreshold:
    """Whether rank and size alone already force a nonempty region.

    Guaranteed whenever 3(k - 1) < n: any three support half-planes then share
    a point by the eigenspace-intersection argument, and pairwise intersections
    are never empty, so the whole family has a common point.
    """
    check_rank(k, max(n, 1))
    if n < 1:
        raise RankRangeError(f"matrix size must be positive, got n={n}")
    if 3 * (k - 1) < n:
        return NonemptinessThreshold.GUARANTEED_NONEMPTY
    return NonemptinessThreshold.POSSIBLY_EMPTY


def emptiness_check(query: RankRangeQuery) -> ProvablyEmpty | ProvablyNonEmpty | Undecided:
    """Certified emptiness decision for the sampled region.

    ProvablyEmpty returns at most three sampled half-planes with empty
    intersection (sound for the true region, which the family contains).
    ProvablyNonEmpty requires a verified compression witness; when synthesis
    fails, the verdict is Undecided no matter how healthy the sampled region
    looks.
    """
    angles, offsets = _family(query)
    sol = _chebyshev(angles, offsets)
    if sol is None:
        raise RankRangeError("support family left the intersection unbounded")
    center, radius, marginals = sol
    if radius < -query.tolerance:
        return ProvablyEmpty(_minimal_certificate(angles, offsets, marginals, query.tolerance))
    guaranteed = nonemptiness_threshold(query.n, query.k) is NonemptinessThreshold.GUARANTEED_NONEMPTY
    found = _attempt_witness(query, center, escalate=guaranteed)
    if found is not None:
        mu, iso, res = found
        if verify_compression(query.matrix, iso, mu, DEFAULT.witness):
            return ProvablyNonEmpty(NonEmptyWitness(mu, iso, res))
    reason = (
        "inscribed radius within tolerance of zero"
        if radius <= query.tolerance
        else "witness synthesis did not converge"
    )
    return Undecided(reason, float(radius))
