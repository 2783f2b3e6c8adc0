"""Numerical tolerances, collected in one place.

Every advertised tolerance lives in the frozen ``Tolerances`` record below so a
caller can thread a customized copy through the public entry points instead of
hunting for magic numbers.  ``RANKRANGE_TOL`` in the environment overrides the
default geometric tolerance for the command line tool.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

__all__ = ["Tolerances", "DEFAULT", "geometric_tolerance", "default_tolerances"]


@dataclass(frozen=True)
class Tolerances:
    # relative residual accepted from the Hermitian eigensolver
    eig_residual: float = 1e-10
    # entrywise orthonormality defect accepted in eigenvector/subspace bases
    orthonormality: float = 1e-12
    # max-entry deviation accepted when checking a matrix is Hermitian
    hermitian_check: float = 1e-10
    # rank cutoff for subspace intersections
    subspace: float = 1e-8
    # geometric tolerance: half-plane slack, region collapse, LP margins
    geometric: float = 1e-9
    # max-entry residual for verified compression witnesses
    witness: float = 1e-8
    # relaxed witness residual accepted for targets on the region boundary
    witness_boundary: float = 1e-6
    # residual target for the quadratic matrix-equation solver
    riccati: float = 1e-8
    # relative commutator size below which a matrix counts as normal
    normal: float = 1e-10


DEFAULT = Tolerances()


def default_tolerances() -> Tolerances:
    return DEFAULT


def geometric_tolerance() -> float:
    """Default geometric tolerance, honoring the RANKRANGE_TOL override."""
    raw = os.environ.get("RANKRANGE_TOL")
    if raw is None:
        return DEFAULT.geometric
    value = float(raw)
    if not value > 0.0:
        raise ValueError("RANKRANGE_TOL must be a positive number")
    return value


def with_geometric(tol: float) -> Tolerances:
    return replace(DEFAULT, geometric=tol)
