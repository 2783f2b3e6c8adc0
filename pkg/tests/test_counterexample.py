"""Matrices with provably empty rank-k range, and their non-normal perturbations."""

import numpy as np
import pytest

from rankrange.counterexample import build_counterexample, perturb_nonnormal
from rankrange.engine import (
    ProvablyEmpty,
    RankRangeQuery,
    emptiness_check,
    support_value,
)
from rankrange.errors import EmptinessLostError, RankRangeError, ThresholdViolatedError
from rankrange.geometry import HalfPlane, chebyshev_center
from rankrange.normal import is_normal, normal_exact_region

W = np.exp(2j * np.pi / 3)

ALL_PAIRS = [(n, k) for n in range(3, 16) for k in range(1, n + 1) if 3 * k >= n + 3]
BOUNDARY_PAIRS = [(n, k) for n, k in ALL_PAIRS if 3 * k == n + 3]


def test_build_three_by_three():
    assert np.array_equal(build_counterexample(3, 2), np.diag([1.0 + 0.0j, W, W**2]))


def test_build_six_by_six_direct_sum():
    expected = np.diag([1.0 + 0.0j, 1.0 + 0.0j, W, W, W**2, W**2])
    assert np.array_equal(build_counterexample(6, 3), expected)


def test_build_five_by_five_principal_submatrix():
    expected = np.diag([1.0 + 0.0j, 1.0 + 0.0j, W, W, W**2])
    assert np.array_equal(build_counterexample(5, 3), expected)
    assert np.array_equal(build_counterexample(5, 3), build_counterexample(6, 3)[:5, :5])


def test_build_rejects_below_threshold():
    with pytest.raises(ThresholdViolatedError):
        build_counterexample(4, 2)  # 3k = 6 < n + 3 = 7
    with pytest.raises(RankRangeError):
        build_counterexample(3, 4)


def test_every_construction_is_provably_empty():
    for n, k in ALL_PAIRS:
        a = build_counterexample(n, k)
        verdict = emptiness_check(RankRangeQuery(a, k))
        assert isinstance(verdict, ProvablyEmpty), (n, k)


def test_every_construction_is_normal_with_empty_exact_region():
    for n, k in ALL_PAIRS:
        a = build_counterexample(n, k)
        assert is_normal(a)
        assert normal_exact_region(np.diag(a), k).is_empty, (n, k)


def test_three_rotated_angles_alone_certify_boundary_cases():
    """At 3k = n + 3 the supports at 0, 2pi/3, 4pi/3 are all -1 and the three
    half-planes pairwise lean away from each other."""
    angles = (0.0, 2 * np.pi / 3, 4 * np.pi / 3)
    for n, k in BOUNDARY_PAIRS:
        a = build_counterexample(n, k)
        planes = [HalfPlane(t, support_value(a, k, t)) for t in angles]
        assert all(p.offset == pytest.approx(-1.0, abs=1e-12) for p in planes)
        assert chebyshev_center(planes).radius < 0.0


def test_perturb_zero_epsilon_is_identity():
    a = build_counterexample(3, 2)
    assert np.array_equal(perturb_nonnormal(a, 0.0, seed=5), a)


def test_perturb_direction_is_strictly_upper_with_unit_peak():
    a = build_counterexample(6, 3)
    eps = 0.25
    delta = perturb_nonnormal(a, eps, seed=3) - a
    assert np.abs(delta).max() == pytest.approx(eps, rel=1e-12)
    assert np.abs(np.tril(delta)).max() == 0.0


def test_perturb_deterministic_in_seed():
    a = build_counterexample(3, 2)
    assert np.array_equal(
        perturb_nonnormal(a, 0.5, seed=9), perturb_nonnormal(a, 0.5, seed=9)
    )
    assert not np.array_equal(
        perturb_nonnormal(a, 0.5, seed=9), perturb_nonnormal(a, 0.5, seed=10)
    )


def test_perturb_small_epsilon_keeps_emptiness():
    a = build_counterexample(3, 2)
    b = perturb_nonnormal(a, 1e-3, seed=0, k=2)
    assert not is_normal(b)
    assert isinstance(emptiness_check(RankRangeQuery(b, 2)), ProvablyEmpty)


def test_perturb_three_by_three_robust_even_at_large_epsilon():
    """For this 3x3 instance emptiness survives eps = 10 for every direction
    tried: the strictly upper triangular direction alone already has an empty
    rank-2 range, so no scaling of it restores nonemptiness."""
    a = build_counterexample(3, 2)
    for seed in (0, 1, 2):
        b = perturb_nonnormal(a, 10.0, seed=seed, k=2)
        assert isinstance(emptiness_check(RankRangeQuery(b, 2)), ProvablyEmpty)


def test_perturb_reports_lost_emptiness_with_bisection():
    a = build_counterexample(6, 3)
    with pytest.raises(EmptinessLostError) as info:
        perturb_nonnormal(a, 10.0, seed=0, k=3)
    safe = info.value.largest_safe_epsilon
    assert 0.0 < safe < 10.0
    c = perturb_nonnormal(a, safe, seed=0, k=3)
    assert isinstance(emptiness_check(RankRangeQuery(c, 3)), ProvablyEmpty)


def test_perturb_rejects_negative_epsilon():
    with pytest.raises(RankRangeError):
        perturb_nonnormal(build_counterexample(3, 2), -1.0, seed=0)
