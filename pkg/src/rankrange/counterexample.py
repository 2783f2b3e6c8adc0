"""Matrices whose rank-k numerical range is empty.

For 3k >= n + 3 the diagonal matrix repeating the three cube roots of unity
k - 1 times each (truncated to size n) has empty rank-k range: the three
support constraints at angles 0, 2*pi/3 and 4*pi/3 each have offset 2cos(2*pi/3)
relative value, and their intersection is empty.  Below that threshold no
matrix works, which is what ``nonemptiness_threshold`` encodes.
"""

from __future__ import annotations

import numpy as np

from .engine import ProvablyEmpty, RankRangeQuery, emptiness_check
from .errors import EmptinessLostError, RankRangeError, ThresholdViolatedError
from .settings import DEFAULT
from .validation import check_square_matrix

__all__ = ["build_counterexample", "perturb_nonnormal"]


def build_counterexample(n: int, k: int) -> np.ndarray:
    """Diagonal n-by-n matrix with empty rank-k numerical range.

    Requires 3k >= n + 3; the diagonal repeats each cube root of unity k - 1
    times, truncated to the first n entries.
    """
    if not (1 <= k <= n):
        raise RankRangeError(f"need 1 <= k <= n, got k={k}, n={n}")
    if 3 * k < n + 3:
        raise ThresholdViolatedError(
            f"empty rank-{k} ranges require 3k >= n + 3; k={k}, n={n} is below the threshold"
        )
    root = np.exp(2j * np.pi / 3.0)
    entries = np.repeat([1.0 + 0.0j, root, root**2], k - 1)
    return np.diag(entries[:n])


def perturb_nonnormal(
    a,
    epsilon: float,
    seed: int,
    k: int | None = None,
    grid_size: int = 720,
    tolerance: float = DEFAULT.geometric,
) -> np.ndarray:
    """Add a strictly upper-triangular perturbation of max-entry size epsilon.

    The perturbation direction is seeded complex Gaussian noise above the
    diagonal, rescaled to unit max entry, so the result is nonnormal for any
    positive epsilon while the eigenvalues stay put.  When ``k`` is given the
    perturbed matrix must keep a provably empty rank-k range; otherwise
    ``EmptinessLostError`` reports the largest epsilon along the ray that still
    certifies empty (found by bisection).
    """
    a = check_square_matrix(a)
    epsilon = float(epsilon)
    if epsilon < 0.0:
        raise RankRangeError("epsilon must be nonnegative")
    n = a.shape[0]
    rng = np.random.default_rng(seed)
    noise = np.triu(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)), 1)
    peak = np.abs(noise).max()
    if peak > 0.0:
        noise = noise / peak

    def certified_empty(eps: float) -> bool:
        query = RankRangeQuery(a + eps * noise, k, grid_size=grid_size, tolerance=tolerance)
        return isinstance(emptiness_check(query), ProvablyEmpty)

    perturbed = a + epsilon * noise
    if k is not None and epsilon > 0.0:
        if not certified_empty(epsilon):
            lo, hi = 0.0, epsilon
            if certified_empty(0.0):
                for _ in range(12):
                    mid = (lo + hi) / 2.0
                    if certified_empty(mid):
                        lo = mid
                    else:
                        hi = mid
            raise EmptinessLostError(
                f"perturbation of size {epsilon:g} lost the empty-range certificate; "
                f"largest safe size found {lo:g}",
                largest_safe_epsilon=lo,
            )
    return perturbed
