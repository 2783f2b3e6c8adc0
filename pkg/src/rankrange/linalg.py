"""Core linear algebra: Hermitian eigensystems, rotated Hermitian parts,
subspace intersections.

Conventions used across the package:

* matrices are dense ``numpy.complex128`` arrays, row-major;
* eigenvalues of Hermitian matrices are reported in descending order, so
  ``values[k - 1]`` is the k-th largest;
* subspaces are stored as matrices with orthonormal columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatchError, EmptyIntersectionError, NonFiniteError, NotHermitianError
from .settings import DEFAULT, Tolerances

__all__ = [
    "HermitianEig",
    "Subspace",
    "max_abs",
    "hermitian_eig",
    "hermitian_part_at",
    "support_eigenvalues",
    "subspace_intersection",
]


def max_abs(a) -> float:
    """Largest entry magnitude; zero for empty arrays."""
    arr = np.asarray(a)
    return float(np.max(np.abs(arr))) if arr.size else 0.0


@dataclass(frozen=True)
class HermitianEig:
    """Eigendecomposition of a Hermitian matrix.

    ``values`` are real and sorted in descending order; ``vectors[:, i]`` is a
    unit eigenvector for ``values[i]`` and the columns are orthonormal.
    """

    values: np.ndarray
    vectors: np.ndarray

    def __post_init__(self):
        if self.values.ndim != 1 or self.vectors.shape != (len(self.values),) * 2:
            raise DimensionMismatchError("eigenvalue/eigenvector shapes are inconsistent")


def _require_hermitian(h: np.ndarray, tol: float) -> np.ndarray:
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {h.shape}")
    h = h.astype(np.complex128, copy=False)
    if not np.all(np.isfinite(h.real)) or not np.all(np.isfinite(h.imag)):
        raise NonFiniteError("matrix contains non-finite entries")
    scale = max_abs(h)
    defect = max_abs(h - h.conj().T)
    if defect > tol * max(scale, 1.0):
        raise NotHermitianError(f"matrix deviates from Hermitian by {defect:.3e}")
    return h


def hermitian_eig(h, tolerances: Tolerances = DEFAULT) -> HermitianEig:
    """Full eigendecomposition of a Hermitian matrix, eigenvalues descending.

    Diagonal input is handled exactly: the diagonal entries are returned as
    eigenvalues and permuted identity columns as eigenvectors.
    """
    h = _require_hermitian(np.asarray(h), tolerances.hermitian_check)
    n = h.shape[0]
    off = h - np.diag(np.diag(h))
    if max_abs(off) == 0.0:
        values = np.real(np.diag(h)).copy()
        order = np.argsort(-values, kind="stable")
        vectors = np.eye(n, dtype=np.complex128)[:, order]
        return HermitianEig(values[order], vectors)
    # exact Hermitian symmetrization so the solver sees its contract
    values, vectors = np.linalg.eigh((h + h.conj().T) / 2.0)
    order = np.argsort(-values, kind="stable")
    return HermitianEig(np.real(values[order]), vectors[:, order])


def hermitian_part_at(a, t: float) -> np.ndarray:
    """Rotated Hermitian part ``exp(it) a + exp(-it) a*``.

    The result is exactly Hermitian: the rotated matrix is added to its own
    conjugate transpose, which symmetrizes entry by entry.
    """
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {a.shape}")
    rotated = np.exp(1j * float(t)) * a
    return rotated + rotated.conj().T


def support_eigenvalues(a, angles) -> np.ndarray:
    """Descending eigenvalues of the rotated Hermitian part, one row per angle.

    Batched over ``angles`` so a full sampling grid costs one LAPACK call.
    """
    a = np.asarray(a, dtype=np.complex128)
    phases = np.exp(1j * np.asarray(angles, dtype=np.float64))
    rotated = phases[:, None, None] * a[None, :, :]
    stack = rotated + rotated.conj().transpose(0, 2, 1)
    values = np.linalg.eigvalsh(stack)
    return values[:, ::-1]


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of C^n given by an orthonormal column basis.

    ``basis`` has shape (ambient_dim, dim); a zero-column basis encodes the
    trivial subspace.
    """

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        if self.basis.ndim != 2 or self.basis.shape[0] != self.ambient_dim:
            raise DimensionMismatchError(
                f"basis shape {self.basis.shape} does not match ambient dimension {self.ambient_dim}"
            )
        gram = self.basis.conj().T @ self.basis
        defect = max_abs(gram - np.eye(self.dim))
        if defect > DEFAULT.orthonormality * 10:
            raise DimensionMismatchError(f"basis columns deviate from orthonormal by {defect:.3e}")

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @staticmethod
    def from_columns(columns, ambient_dim: int | None = None, tol: float = 1e-12) -> "Subspace":
        """Build a subspace from (possibly dependent) spanning columns."""
        cols = np.asarray(columns, dtype=np.complex128)
        if cols.ndim != 2:
            raise DimensionMismatchError("spanning columns must form a 2-D array")
        n = cols.shape[0] if ambient_dim is None else int(ambient_dim)
        if cols.shape[0] != n:
            raise DimensionMismatchError("column length does not match ambient dimension")
        if cols.shape[1] == 0:
            return Subspace(n, np.zeros((n, 0), dtype=np.complex128))
        u, s, _ = np.linalg.svd(cols, full_matrices=False)
        rank = int(np.sum(s > tol * max(s[0], 1.0)))
        return Subspace(n, u[:, :rank])


def subspace_intersection(subspaces: Sequence[Subspace], tol: float | None = None) -> Subspace:
    """Intersection of subspaces of a common ambient space.

    Stacks the orthogonal-complement projectors of all operands and returns
    the null space of the stack, computed with a rank-revealing SVD.  The
    result dimension is at least ``sum(dims) - (m - 1) * n`` for ``m``
    operands in C^n.
    """
    if tol is None:
        tol = DEFAULT.subspace
    spaces = list(subspaces)
    if not spaces:
        raise DimensionMismatchError("need at least one subspace")
    n = spaces[0].ambient_dim
    if any(s.ambient_dim != n for s in spaces):
        raise DimensionMismatchError("subspaces live in different ambient dimensions")
    if len(spaces) == 1:
        return spaces[0]
    eye = np.eye(n, dtype=np.complex128)
    constraints = np.vstack([eye - s.basis @ s.basis.conj().T for s in spaces])
    _, sigma, vh = np.linalg.svd(constraints)
    sigma = np.concatenate([sigma, np.zeros(max(0, n - len(sigma)))])
    null_mask = sigma <= tol
    basis = vh.conj().T[:, null_mask]
    guaranteed = sum(s.dim for s in spaces) - (len(spaces) - 1) * n
    if basis.shape[1] < guaranteed:
        raise EmptyIntersectionError(
            f"numerical intersection dimension {basis.shape[1]} fell below the guaranteed {guaranteed}"
        )
    if basis.shape[1]:
        # re-orthonormalize to push roundoff below the Subspace gate
        basis, _ = np.linalg.qr(basis)
    return Subspace(n, basis)
