"""Planar convex geometry for half-plane families.

A half-plane is stored as ``(angle, offset)`` and means the closed set

    {mu in C : 2 * Re(exp(i * angle) * mu) <= offset}

whose outward unit normal is ``exp(-i * angle)``.  Regions are represented by
their kind (empty / point / segment / polygon) plus complex vertices; polygon
vertices are listed counterclockwise with no repeated or collinear points.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from .errors import EmptyRegionError, RankRangeError, UnboundedRegionError
from .settings import DEFAULT

__all__ = [
    "HalfPlane",
    "RegionKind",
    "ConvexRegion",
    "ChebyshevResult",
    "halfplane_with_normal",
    "chebyshev_center",
    "intersect_halfplanes",
    "hausdorff_distance",
]

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class HalfPlane:
    """Closed half-plane ``2 Re(exp(i angle) mu) <= offset``, angle in [0, 2pi)."""

    angle: float
    offset: float

    def __post_init__(self):
        if not np.isfinite(self.angle) or not np.isfinite(self.offset):
            raise RankRangeError("half-plane parameters must be finite")
        object.__setattr__(self, "angle", float(np.mod(self.angle, TWO_PI)))
        object.__setattr__(self, "offset", float(self.offset))

    def slack(self, point: complex) -> float:
        """Offset minus the constraint value; nonnegative inside."""
        return self.offset - 2.0 * float(np.real(np.exp(1j * self.angle) * point))


def halfplane_with_normal(normal: complex, boundary_point: complex) -> HalfPlane:
    """Half-plane with the given outward normal whose boundary passes through a point."""
    nu = complex(normal)
    r = abs(nu)
    if r == 0.0 or not np.isfinite(r):
        raise RankRangeError("outward normal must be a nonzero finite complex number")
    angle = -np.angle(nu)
    offset = 2.0 * float(np.real(np.exp(1j * angle) * boundary_point))
    return HalfPlane(angle, offset)


class RegionKind(enum.Enum):
    EMPTY = "empty"
    POINT = "point"
    SEGMENT = "segment"
    POLYGON = "polygon"


@dataclass(frozen=True)
class ConvexRegion:
    """A closed bounded convex subset of the plane.

    ``vertices`` holds 0 points (empty), 1 (point), 2 (segment endpoints) or
    >= 3 counterclockwise polygon corners.
    """

    kind: RegionKind
    vertices: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.complex128))

    def __post_init__(self):
        verts = np.asarray(self.vertices, dtype=np.complex128).ravel()
        object.__setattr__(self, "vertices", verts)
        expected = {
            RegionKind.EMPTY: verts.size == 0,
            RegionKind.POINT: verts.size == 1,
            RegionKind.SEGMENT: verts.size == 2,
            RegionKind.POLYGON: verts.size >= 3,
        }[self.kind]
        if not expected:
            raise RankRangeError(f"{self.kind.value} region cannot have {verts.size} vertices")

    @property
    def is_empty(self) -> bool:
        return self.kind is RegionKind.EMPTY

    def diameter(self) -> float:
        if self.kind is RegionKind.EMPTY:
            raise EmptyRegionError("empty region has no diameter")
        return _diameter(self.vertices)

    def area(self) -> float:
        if self.kind is not RegionKind.POLYGON:
            return 0.0
        v = self.vertices
        return 0.5 * float(np.sum(np.imag(np.conj(v) * np.roll(v, -1))))

    def distance_to(self, point: complex) -> float:
        """Euclidean distance from a point to the region (0 inside)."""
        if self.kind is RegionKind.EMPTY:
            raise EmptyRegionError("empty region has no distance")
        p = complex(point)
        v = self.vertices
        if self.kind is RegionKind.POINT:
            return abs(p - v[0])
        if self.kind is RegionKind.SEGMENT:
            return _segment_distance(p, v[0], v[1])
        nxt = np.roll(v, -1)
        if np.all(_cross(nxt - v, p - v) >= -1e-12 * np.abs(nxt - v) * max(1.0, abs(p))):
            return 0.0
        return float(min(_segment_distance(p, a, b) for a, b in zip(v, nxt)))

    def contains(self, point: complex, tol: float = DEFAULT.geometric) -> bool:
        return self.distance_to(point) <= tol


@dataclass(frozen=True)
class ChebyshevResult:
    """Optimum of the inscribed-disk linear program.

    ``radius`` is negative when the family is infeasible; its magnitude is then
    the smallest uniform outward shift of all boundary lines that would make
    the family feasible.  ``active_constraints`` are the indices tight at the
    optimum.
    """

    center: complex
    radius: float
    active_constraints: np.ndarray


def _plane_arrays(planes: Sequence[HalfPlane]) -> tuple[np.ndarray, np.ndarray]:
    angles = np.array([p.angle for p in planes], dtype=np.float64)
    offsets = np.array([p.offset for p in planes], dtype=np.float64)
    return angles, offsets


def _max_angle_gap(angles: np.ndarray) -> float:
    s = np.sort(np.mod(angles, TWO_PI))
    gaps = np.diff(s, append=s[0] + TWO_PI)
    return float(np.max(gaps))


def _validate_family(planes: Sequence[HalfPlane]) -> tuple[np.ndarray, np.ndarray, float]:
    if len(planes) < 3:
        raise UnboundedRegionError("need at least three half-planes to bound a region")
    angles, offsets = _plane_arrays(planes)
    gap = _max_angle_gap(angles)
    if gap >= np.pi - 1e-12:
        raise UnboundedRegionError(
            f"half-plane angles leave a gap of {gap:.6f} rad; the intersection is unbounded"
        )
    return angles, offsets, gap


def _chebyshev_lp(angles: np.ndarray, offsets: np.ndarray):
    """Maximize r over (x, y, r) with 2(x cos t - y sin t) + 2r <= h per plane.

    Returns (center, radius, marginals) or None when the program is unbounded.
    """
    rows = np.column_stack([2.0 * np.cos(angles), -2.0 * np.sin(angles), np.full(len(angles), 2.0)])
    res = linprog(
        c=[0.0, 0.0, -1.0],
        A_ub=rows,
        b_ub=offsets,
        bounds=[(None, None)] * 3,
        method="highs",
    )
    if res.status == 3:
        return None
    if res.status != 0:
        raise RankRangeError(f"inscribed-disk LP failed with status {res.status}: {res.message}")
    x, y, r = res.x
    marginals = np.asarray(res.ineqlin.marginals)
    return complex(x, y), float(r), marginals


def chebyshev_center(planes: Sequence[HalfPlane], tol: float = DEFAULT.geometric) -> ChebyshevResult:
    """Center and radius of the largest disk inscribed in the intersection.

    A negative radius certifies that the intersection is empty.  Unlike
    :func:`intersect_halfplanes` this accepts families that do not bound a
    polygon, as long as the inscribed radius itself stays finite; two opposing
    planes forming a negative-width strip are a valid emptiness certificate.
    """
    if len(planes) == 0:
        raise UnboundedRegionError("need at least one half-plane")
    angles, offsets = _plane_arrays(planes)
    solved = _chebyshev_lp(angles, offsets)
    if solved is None:
        raise UnboundedRegionError("inscribed-disk LP is unbounded")
    center, radius, _ = solved
    slacks = offsets - 2.0 * (np.cos(angles) * center.real - np.sin(angles) * center.imag) - 2.0 * radius
    scale = max(1.0, float(np.max(np.abs(offsets))))
    active = np.nonzero(slacks <= max(1e-7, 10.0 * tol) * scale)[0]
    return ChebyshevResult(center, radius, active)


def _cross(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.real(u) * np.imag(v) - np.imag(u) * np.real(v)


def _segment_distance(p: complex, a: complex, b: complex) -> float:
    u = b - a
    denom = abs(u) ** 2
    if denom == 0.0:
        return abs(p - a)
    s = min(1.0, max(0.0, (np.conj(u) * (p - a)).real / denom))
    return abs(p - (a + s * u))


def _diameter(vertices: np.ndarray) -> float:
    v = np.asarray(vertices).ravel()
    if v.size <= 1:
        return 0.0
    best = 0.0
    step = 256  # blocked pairwise scan keeps memory flat for large polygons
    for start in range(0, v.size, step):
        block = v[start : start + step]
        best = max(best, float(np.max(np.abs(block[:, None] - v[None, :]))))
    return best


def _dedup_sorted(angles: np.ndarray, offsets: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Sort planes by angle; equal angles keep only the smallest offset."""
    order = np.lexsort((offsets, angles))
    a, h = angles[order], offsets[order]
    keep_a, keep_h = [a[0]], [h[0]]
    for ai, hi in zip(a[1:], h[1:]):
        if abs(ai - keep_a[-1]) <= 1e-12:
            keep_h[-1] = min(keep_h[-1], hi)
        else:
            keep_a.append(ai)
            keep_h.append(hi)
    # wrap-around duplicate (angle 0 vs 2pi - eps)
    if len(keep_a) > 1 and abs((keep_a[0] + TWO_PI) - keep_a[-1]) <= 1e-12:
        keep_h[0] = min(keep_h[0], keep_h[-1])
        keep_a.pop()
        keep_h.pop()
    return np.array(keep_a), np.array(keep_h)


def _clip(vertices: np.ndarray, angle: float, offset: float) -> np.ndarray:
    """One Sutherland-Hodgman pass keeping the feasible side of a half-plane."""
    if vertices.size == 0:
        return vertices
    g = offset - 2.0 * np.real(np.exp(1j * angle) * vertices)
    inside = g >= 0.0
    if inside.all():
        return vertices
    if not inside.any():
        return np.zeros(0, dtype=np.complex128)
    g_next = np.roll(g, -1)
    v_next = np.roll(vertices, -1)
    crossing = (g > 0.0) & (g_next < 0.0) | (g < 0.0) & (g_next > 0.0)
    denom = np.where(crossing, g - g_next, 1.0)
    s = g / denom
    cuts = vertices + s * (v_next - vertices)
    m = vertices.size
    slots = np.empty(2 * m, dtype=np.complex128)
    keep = np.zeros(2 * m, dtype=bool)
    slots[0::2] = vertices
    keep[0::2] = inside
    slots[1::2] = cuts
    keep[1::2] = crossing
    return slots[keep]


def _prune_polygon(vertices: np.ndarray, scale: float) -> np.ndarray:
    v = vertices
    tol = 1e-12 * max(scale, 1.0)
    for _ in range(3):
        if v.size < 3:
            return v
        changed = False
        keep = np.abs(v - np.roll(v, 1)) > tol
        if not keep.all():
            v = v[keep]
            changed = True
        if v.size < 3:
            return v
        prev_v, next_v = np.roll(v, 1), np.roll(v, -1)
        straight = np.abs(_cross(v - prev_v, next_v - v)) <= tol * np.maximum(
            np.abs(v - prev_v) * np.abs(next_v - v), tol
        )
        if straight.any():
            v = v[~straight]
            changed = True
        if not changed:
            break
    return v


def _clip_family(angles: np.ndarray, offsets: np.ndarray, box_halfwidth: float) -> np.ndarray:
    L = box_halfwidth
    poly = np.array([-L - 1j * L, L - 1j * L, L + 1j * L, -L + 1j * L], dtype=np.complex128)
    for t, h in zip(angles, offsets):
        poly = _clip(poly, t, h)
        if poly.size == 0:
            break
    return poly


def intersect_halfplanes(planes: Sequence[HalfPlane], tolerance: float = DEFAULT.geometric) -> ConvexRegion:
    """Intersection of a bounding half-plane family, classified by kind.

    The family must contain at least three planes whose angles leave no gap of
    a half-circle or more, otherwise the intersection is unbounded and an
    ``UnboundedRegionError`` is raised.  Kind classification collapses regions
    thinner than ``tolerance``: inscribed radius below ``-tolerance`` gives
    ``EMPTY``; near-zero radius gives ``POINT`` or ``SEGMENT``.
    """
    raw_angles, raw_offsets, gap = _validate_family(planes)
    angles, offsets = _dedup_sorted(raw_angles, raw_offsets)
    solved = _chebyshev_lp(angles, offsets)
    if solved is None:
        raise UnboundedRegionError("half-plane family does not bound a region")
    center, radius, _ = solved

    if radius < -tolerance:
        return ConvexRegion(RegionKind.EMPTY)

    cos_half_gap = np.cos(gap / 2.0)
    box = max(1.0, float(np.max(offsets)), abs(center)) / max(cos_half_gap, 1e-6) + 1.0

    if radius > tolerance:
        poly = _clip_family(angles, offsets, box)
        poly = _prune_polygon(poly, scale=box)
        if poly.size >= 3:
            if ConvexRegion(RegionKind.POLYGON, poly).area() < 0.0:
                poly = poly[::-1]
            return ConvexRegion(RegionKind.POLYGON, poly)
        # fp-degenerate despite positive radius: fall through to the thin path

    # thin or collapsed region: inflate so the sliver is safely full-dimensional;
    # no pruning here, the inflated polygon can be smaller than any box-scaled
    # threshold and the measurements below cope with duplicate vertices
    inflate = 2.0 * tolerance + max(0.0, -radius)
    poly = _clip_family(angles, offsets + 2.0 * inflate, box)
    if poly.size == 0:
        return ConvexRegion(RegionKind.EMPTY)
    if poly.size == 1:
        return ConvexRegion(RegionKind.POINT, poly)
    diam = _diameter(poly)
    if diam <= 6.0 * inflate / max(cos_half_gap, 1e-6) + tolerance:
        return ConvexRegion(RegionKind.POINT, np.array([np.mean(poly)]))
    # project the sliver onto its long axis and report the midline extremes
    i, j = _diameter_pair(poly)
    u = (poly[j] - poly[i]) / abs(poly[j] - poly[i])
    along = np.real(np.conj(u) * poly)
    across = np.imag(np.conj(u) * poly)
    mid = (across.min() + across.max()) / 2.0
    lo, hi = along.min(), along.max()
    ends = np.array([u * lo + 1j * u * mid, u * hi + 1j * u * mid])
    return ConvexRegion(RegionKind.SEGMENT, ends)


def _diameter_pair(vertices: np.ndarray) -> tuple[int, int]:
    diff = np.abs(vertices[:, None] - vertices[None, :])
    return np.unravel_index(int(np.argmax(diff)), diff.shape)


def hausdorff_distance(a: ConvexRegion, b: ConvexRegion) -> float:
    """Hausdorff distance between two nonempty convex regions.

    For convex sets the supremum of the distance-to-the-other-set is attained
    at a vertex, so scanning vertices is exact.
    """
    if a.is_empty or b.is_empty:
        raise EmptyRegionError("Hausdorff distance needs two nonempty regions")
    forward = max(b.distance_to(p) for p in a.vertices)
    backward = max(a.distance_to(p) for p in b.vertices)
    return float(max(forward, backward))
