"""Exact rank-k numerical ranges of normal matrices.

For a normal matrix the rank-k numerical range is the intersection of the
convex hulls of all (n - k + 1)-element eigenvalue subsets.  Each hull is a
finite intersection of half-planes, so the whole region is one big half-plane
intersection; this module builds that family and delegates to the geometry
layer.  The construction is independent of the sampling engine and serves as
its test oracle.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

import numpy as np

from .errors import CombinatorialLimitError, DimensionMismatchError
from .geometry import ConvexRegion, HalfPlane, RegionKind, halfplane_with_normal, intersect_halfplanes
from .settings import DEFAULT
from .validation import check_rank, check_square_matrix

__all__ = ["is_normal", "normal_exact_region", "convex_hull"]

MAX_SUBSETS = 10**6

# outward normals used to box in zero- and one-dimensional hulls
_POINT_NORMALS = (1.0 + 0.0j, np.exp(2j * np.pi / 3), np.exp(4j * np.pi / 3))


def is_normal(a, tol: float = DEFAULT.normal) -> bool:
    """Whether ``a a* - a* a`` vanishes relative to the squared entry scale."""
    a = check_square_matrix(a)
    scale = float(np.max(np.abs(a)))
    if scale == 0.0:
        return True
    commutator = a @ a.conj().T - a.conj().T @ a
    return float(np.max(np.abs(commutator))) <= tol * scale**2


def convex_hull(points) -> tuple[RegionKind, np.ndarray]:
    """Convex hull of complex points: kind plus CCW extreme points.

    Degenerate inputs collapse to a point or a segment.  Uses the monotone
    chain construction with a relative collinearity cutoff, so hull vertices
    are in strictly convex position.
    """
    pts = np.unique(np.asarray(points, dtype=np.complex128).ravel())
    scale = max(1.0, float(np.max(np.abs(pts))))
    tol = 1e-12 * scale * scale
    if pts.size == 0:
        raise DimensionMismatchError("hull of no points")
    if pts.size == 1:
        return RegionKind.POINT, pts
    order = np.lexsort((pts.imag, pts.real))
    pts = pts[order]

    def cross(o, a, b):
        return (a - o).real * (b - o).imag - (a - o).imag * (b - o).real

    def half(seq):
        out: list[complex] = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= tol:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(pts[::-1])
    hull = np.array(lower[:-1] + upper[:-1], dtype=np.complex128)
    if hull.size <= 2:
        # collinear input: extremes along the common line
        u = pts[-1] - pts[0]
        if abs(u) <= 1e-15 * scale:
            return RegionKind.POINT, pts[:1]
        return RegionKind.SEGMENT, np.array([pts[0], pts[-1]])
    return RegionKind.POLYGON, hull


def _hull_halfplanes(points) -> list[HalfPlane]:
    """Half-planes whose intersection is exactly the convex hull of the points."""
    kind, verts = convex_hull(points)
    if kind is RegionKind.POINT:
        p = verts[0]
        return [halfplane_with_normal(nu, p) for nu in _POINT_NORMALS]
    if kind is RegionKind.SEGMENT:
        a, b = verts
        u = (b - a) / abs(b - a)
        side = 1j * u
        return [
            halfplane_with_normal(side, a),
            halfplane_with_normal(-side, a),
            halfplane_with_normal(u, b),
            halfplane_with_normal(-u, a),
        ]
    nxt = np.roll(verts, -1)
    planes = []
    for a, b in zip(verts, nxt):
        u = (b - a) / abs(b - a)
        planes.append(halfplane_with_normal(-1j * u, a))  # outward normal right of a CCW edge
    return planes


def normal_exact_region(eigenvalues, k: int, tolerance: float = DEFAULT.geometric) -> ConvexRegion:
    """Rank-k numerical range of a normal matrix with the given eigenvalues.

    Enumerates every eigenvalue subset of size ``n - k + 1``, collects the
    half-planes of each subset hull and intersects them all.  Raises
    ``CombinatorialLimitError`` when the subset count exceeds ``10**6``.
    """
    eig = np.asarray(eigenvalues, dtype=np.complex128).ravel()
    n = eig.size
    k = check_rank(k, n)
    size = n - k + 1
    if comb(n, size) > MAX_SUBSETS:
        raise CombinatorialLimitError(
            f"{comb(n, size)} eigenvalue subsets exceed the enumeration budget of {MAX_SUBSETS}"
        )
    planes: list[HalfPlane] = []
    for subset in combinations(range(n), size):
        planes.extend(_hull_halfplanes(eig[list(subset)]))
    return intersect_halfplanes(planes, tolerance=tolerance)
