"""Acceptance checks, one per shipped guarantee.

Each test prints a single PASS/FAIL line (run with ``pytest -s`` to see the
lines for passing tests too).  Tolerances and instance counts here are the
advertised ones; loosening them is not an option, a red test means the
package does not deliver what it promises.
"""

import time

import numpy as np

from rankrange.counterexample import build_counterexample
from rankrange.engine import (
    ProvablyEmpty,
    ProvablyNonEmpty,
    RankRangeQuery,
    boundary_region,
    emptiness_check,
    support_values,
)
from rankrange.geometry import (
    ConvexRegion,
    HalfPlane,
    RegionKind,
    chebyshev_center,
    hausdorff_distance,
    intersect_halfplanes,
)
from rankrange.normal import normal_exact_region
from rankrange.witness import (
    RiccatiProblem,
    riccati_fixed_point_residual,
    riccati_residual,
    riccati_solve,
    helly_witness,
)

THIRD = 2.0 * np.pi / 3.0


def report(tag: str, ok: bool, detail: str = "") -> None:
    line = f"[acceptance] {tag}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


def allowed_ranks(n: int) -> list[int]:
    """Ranks whose range is guaranteed nonempty at size n."""
    return [k for k in range(1, n + 1) if 3 * (k - 1) < n]


def test_acceptance_empty_range_constructions():
    pairs = [(3, 2), (5, 3), (6, 3), (9, 4), (12, 5)]
    start = time.perf_counter()
    failures = []
    for n, k in pairs:
        a = build_counterexample(n, k)
        verdict = emptiness_check(RankRangeQuery(a, k))
        if not isinstance(verdict, ProvablyEmpty):
            failures.append(f"({n},{k}) verdict {type(verdict).__name__}")
        if 3 * k == n + 3:
            planes = [
                HalfPlane(t, support_values(a, k, t)[0]) for t in (0.0, THIRD, 2.0 * THIRD)
            ]
            radius = chebyshev_center(planes).radius
            if not radius < -0.1:
                failures.append(f"({n},{k}) three-angle radius {radius:.3g}")
    elapsed = time.perf_counter() - start
    if elapsed >= 5.0:
        failures.append(f"took {elapsed:.1f}s")
    report(
        "empty-range constructions certified",
        not failures,
        "; ".join(failures) or f"{len(pairs)} pairs in {elapsed:.2f}s",
    )


def test_acceptance_guaranteed_nonempty_below_threshold(complex_gaussian):
    start = time.perf_counter()
    checked = 0
    failures = 0
    for n in range(4, 11):
        ks = allowed_ranks(n)
        for _ in range(200):
            a = complex_gaussian(n)
            for k in ks:
                verdict = emptiness_check(RankRangeQuery(a, k, grid_size=360))
                checked += 1
                good = isinstance(verdict, ProvablyNonEmpty) and verdict.witness.residual <= 1e-8
                failures += 0 if good else 1
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 300.0
    report(
        "nonemptiness below the rank threshold",
        ok,
        f"{checked} checks, {failures} failures, {elapsed:.1f}s",
    )


def test_acceptance_three_plane_witness_dimension(rng, complex_gaussian):
    worst_dim, worst_slack = 10**9, np.inf
    for _ in range(100):
        a = complex_gaussian(7)
        t1, t2, t3 = np.sort(rng.uniform(0.0, 2.0 * np.pi, size=3))
        found = helly_witness(a, 2, t1, t2, t3)
        worst_dim = min(worst_dim, found.dimension)
        worst_slack = min(worst_slack, float(np.min(found.slacks)))
    ok = worst_dim >= 4 and worst_slack >= -1e-8
    report(
        "three-plane witness dimension",
        ok,
        f"min dimension {worst_dim}, min slack {worst_slack:.2e}",
    )


def test_acceptance_normal_oracle_agreement(rng, random_normal_matrix):
    start = time.perf_counter()
    failures = []
    worst_ratio = 0.0
    for i in range(50):
        n = int(rng.integers(3, 9))
        a = random_normal_matrix(n)
        eigenvalues = np.linalg.eigvals(a)
        budget = 5e-3 * (1.0 + float(np.abs(eigenvalues).max()))
        for k in range(1, n + 1):
            sampled = boundary_region(
                RankRangeQuery(a, k, grid_size=1440), attempt_witness=False
            ).region
            exact = normal_exact_region(eigenvalues, k)
            if sampled.is_empty and exact.is_empty:
                continue
            if sampled.is_empty != exact.is_empty:
                failures.append(f"instance {i} k={k}: emptiness disagrees")
                continue
            dist = hausdorff_distance(sampled, exact)
            worst_ratio = max(worst_ratio, dist / budget)
            if dist > budget:
                failures.append(f"instance {i} k={k}: distance {dist:.2e} > {budget:.2e}")
    elapsed = time.perf_counter() - start
    if elapsed >= 120.0:
        failures.append(f"took {elapsed:.1f}s")
    report(
        "normal oracle agreement",
        not failures,
        "; ".join(failures[:3]) or f"worst distance at {worst_ratio:.1%} of budget, {elapsed:.1f}s",
    )


def test_acceptance_quadratic_matrix_equation(rng, complex_gaussian):
    worst_residual = 0.0
    worst_identity = 0.0
    worst_scalar = 0.0
    for k in (1, 2, 3, 5):
        for _ in range(100):
            m = complex_gaussian(k)
            z = complex_gaussian(k)
            problem = RiccatiProblem(m, z @ z.conj().T + 0.3 * np.eye(k))
            tol = 1e-13 if k == 1 else 1e-10
            h = riccati_solve(problem, tol=tol)
            quad = riccati_residual(h, problem)
            fixed = riccati_fixed_point_residual(h, problem)
            worst_residual = max(worst_residual, float(np.abs(quad).max()))
            worst_identity = max(worst_identity, float(np.abs(quad + fixed).max()))
            if k == 1:
                mm, pp = complex(problem.m[0, 0]), float(problem.p[0, 0].real)
                b = 2.0 * mm.real - 1.0
                roots = np.roots([pp, -b, -1.0])
                worst_scalar = max(worst_scalar, float(np.abs(roots - h[0, 0]).min()))
    ok = worst_residual <= 1e-8 and worst_identity <= 1e-10 and worst_scalar <= 1e-12
    report(
        "quadratic matrix equation solver",
        ok,
        f"residual {worst_residual:.1e}, identity gap {worst_identity:.1e}, "
        f"scalar gap {worst_scalar:.1e}",
    )


def _region_family_slack(region: ConvexRegion, angles, offsets) -> float:
    """Worst constraint violation of the region's vertices against a family."""
    if region.is_empty:
        return 0.0
    worst = np.inf
    for v in region.vertices:
        slacks = offsets - 2.0 * np.real(np.exp(1j * angles) * complex(v))
        worst = min(worst, float(np.min(slacks)))
    return worst


def _scale(a: np.ndarray) -> float:
    return max(1.0, float(np.abs(a).max()))


def test_acceptance_invariance_suite(rng, complex_gaussian, random_unitary):
    m = 240
    failures = []

    for i in range(50):
        n = int(rng.integers(3, 8))
        a = complex_gaussian(n)
        k = int(rng.choice(allowed_ranks(n)))
        base = boundary_region(RankRangeQuery(a, k, grid_size=m), attempt_witness=False).region

        u = random_unitary(n)
        rotated = boundary_region(
            RankRangeQuery(u @ a @ u.conj().T, k, grid_size=m), attempt_witness=False
        ).region
        if hausdorff_distance(base, rotated) > 1e-7:
            failures.append(f"unitary {i}")

        alpha = float(rng.uniform(0.5, 2.0)) * np.exp(2j * np.pi * int(rng.integers(m)) / m)
        beta = complex(rng.standard_normal() + 1j * rng.standard_normal())
        mapped = boundary_region(
            RankRangeQuery(alpha * a + beta * np.eye(n), k, grid_size=m), attempt_witness=False
        ).region
        expected = ConvexRegion(base.kind, alpha * base.vertices + beta)
        if hausdorff_distance(mapped, expected) > 1e-7:
            failures.append(f"affine {i}")

    for i in range(50):
        n = int(rng.integers(4, 10))
        a = complex_gaussian(n)
        k = int(rng.choice([k for k in allowed_ranks(n) if k + 1 in allowed_ranks(n)]))
        angles = 2.0 * np.pi * np.arange(m) / m
        outer = support_values(a, k, angles)
        inner_region = intersect_halfplanes(
            [HalfPlane(t, h) for t, h in zip(angles, support_values(a, k + 1, angles))]
        )
        if _region_family_slack(inner_region, angles, outer) < -1e-9 * _scale(a):
            failures.append(f"nesting {i}")

    for i in range(50):
        n = int(rng.integers(3, 8))
        a = complex_gaussian(n)
        angles = rng.uniform(0.0, 2.0 * np.pi, size=16)
        for k in range(1, n + 1):
            gap = support_values(a, k, angles + np.pi) + support_values(a, n - k + 1, angles)
            if float(np.abs(gap).max()) > 1e-9:
                failures.append(f"periodicity {i} k={k}")

    for i in range(50):
        n = int(rng.integers(3, 8))
        a = complex_gaussian(n)
        k = int(rng.choice(allowed_ranks(n)))
        coarse = boundary_region(RankRangeQuery(a, k, grid_size=m), attempt_witness=False)
        fine = boundary_region(RankRangeQuery(a, k, grid_size=2 * m), attempt_witness=False)
        if _region_family_slack(fine.region, coarse.angles, coarse.offsets) < -1e-9 * _scale(a):
            failures.append(f"monotonicity {i}")

    report(
        "invariance suite",
        not failures,
        "; ".join(failures[:5]) or "unitary, affine, nesting, periodicity, refinement",
    )


def test_acceptance_known_points(rng, random_hermitian, diamond):
    failures = []

    sampled = boundary_region(RankRangeQuery(diamond, k=2), attempt_witness=False).region
    exact = normal_exact_region(np.diag(diamond), 2)
    if sampled.kind is not RegionKind.POINT or exact.kind is not RegionKind.POINT:
        failures.append("fourth-roots region is not a point")
    elif abs(complex(sampled.vertices[0]) - complex(exact.vertices[0])) > 1e-3:
        failures.append("fourth-roots point misses the oracle")

    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(3, 9))
        h = random_hermitian(n)
        k = int(rng.integers(1, (n + 1) // 2 + 1))
        spectrum = np.linalg.eigvalsh(h)[::-1]
        region = boundary_region(RankRangeQuery(h, k), attempt_witness=False).region
        if region.is_empty:
            failures.append(f"interval came back empty (n={n}, k={k})")
            continue
        reals = np.real(region.vertices)
        err = max(
            abs(float(reals.min()) - float(spectrum[n - k])),
            abs(float(reals.max()) - float(spectrum[k - 1])),
            float(np.abs(np.imag(region.vertices)).max()),
        )
        worst = max(worst, err)
        if err > 1e-6:
            failures.append(f"interval endpoints off by {err:.2e} (n={n}, k={k})")
    report(
        "known points",
        not failures,
        "; ".join(failures[:3]) or f"worst interval endpoint error {worst:.1e}",
    )
