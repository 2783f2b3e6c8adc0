"""Input validation helpers shared by the library, estimator and CLI."""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatchError, NonFiniteError

__all__ = ["check_square_matrix", "check_points", "check_rank"]


def check_square_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce ``a`` to a square complex128 array and reject bad input."""
    arr = np.asarray(a)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatchError(f"{name} must be square, got shape {arr.shape}")
    if arr.shape[0] == 0:
        raise DimensionMismatchError(f"{name} must be nonempty")
    arr = arr.astype(np.complex128, copy=False)
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise NonFiniteError(f"{name} contains non-finite entries")
    return arr


def check_points(points) -> np.ndarray:
    """Coerce query points to a 1-D complex array.

    Accepts a scalar, a 1-D array of complex numbers, or an (m, 2) real array
    of (x, y) pairs.
    """
    arr = np.asarray(points)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim == 2 and arr.shape[1] == 2 and not np.iscomplexobj(arr):
        arr = arr[:, 0] + 1j * arr[:, 1]
    if arr.ndim != 1:
        raise DimensionMismatchError(
            f"points must be a 1-D complex array or an (m, 2) real array, got shape {arr.shape}"
        )
    arr = arr.astype(np.complex128, copy=False)
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise NonFiniteError("points contain non-finite entries")
    return arr


def check_rank(k: int, n: int) -> int:
    """Validate a compression rank 1 <= k <= n."""
    k = int(k)
    if not 1 <= k <= n:
        raise DimensionMismatchError(f"rank k={k} out of range for matrix size n={n}")
    return k
