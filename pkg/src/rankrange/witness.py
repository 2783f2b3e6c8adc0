"""Compression witnesses: verified isometries, quadratic matrix equations,
eigenspace-intersection witnesses and numerical isometry synthesis.

A witness for ``mu`` being in the rank-k numerical range of ``a`` is an n-by-k
isometry ``x`` with ``x* a x = mu I``.  Everything in this module either
produces such witnesses or verifies them; verification is the only acceptance
path, so a returned witness is trustworthy independent of how it was found.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_sylvester

from .errors import (
    DimensionMismatchError,
    NoConvergenceError,
    NotHermitianError,
    RankRangeError,
    SynthesisError,
    ThresholdViolatedError,
)
from .linalg import Subspace, hermitian_eig, hermitian_part_at, max_abs, subspace_intersection
from .settings import DEFAULT
from .validation import check_rank, check_square_matrix

__all__ = [
    "Isometry",
    "RiccatiProblem",
    "HellyWitness",
    "verify_compression",
    "compression_residual",
    "compression_objective",
    "riccati_residual",
    "riccati_fixed_point_residual",
    "riccati_equivalence_check",
    "riccati_solve",
    "canonical_block",
    "canonical_zero_witness",
    "helly_witness",
    "synthesize_isometry",
]


@dataclass(frozen=True)
class Isometry:
    """An n-by-k matrix with orthonormal columns (x* x = I within 1e-10)."""

    matrix: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.matrix, dtype=np.complex128)
        object.__setattr__(self, "matrix", x)
        if x.ndim != 2 or x.shape[0] < x.shape[1] or x.shape[1] == 0:
            raise DimensionMismatchError(f"isometry must be tall n >= k >= 1, got shape {x.shape}")
        defect = max_abs(x.conj().T @ x - np.eye(x.shape[1]))
        if defect > 1e-10:
            raise DimensionMismatchError(f"columns deviate from orthonormal by {defect:.3e}")

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def k(self) -> int:
        return self.matrix.shape[1]


def _as_columns(x) -> np.ndarray:
    if isinstance(x, Isometry):
        return x.matrix
    return np.asarray(x, dtype=np.complex128)


def compression_residual(a, x, mu: complex) -> float:
    """Max-entry size of ``x* a x - mu I``."""
    a = np.asarray(a, dtype=np.complex128)
    cols = _as_columns(x)
    c = cols.conj().T @ a @ cols
    return max_abs(c - complex(mu) * np.eye(cols.shape[1]))


def verify_compression(a, x, mu: complex, tol: float = DEFAULT.witness) -> bool:
    """Ground-truth acceptance test for a compression witness.

    True iff the columns are orthonormal within 1e-10 and the compression of
    ``a`` equals ``mu I`` within ``tol``, both in the max-entry norm.
    """
    cols = _as_columns(x)
    a = np.asarray(a, dtype=np.complex128)
    if cols.ndim != 2 or cols.shape[1] == 0 or a.shape != (cols.shape[0],) * 2:
        raise DimensionMismatchError(
            f"need a square matrix acting on the isometry rows, got {a.shape} and {cols.shape}"
        )
    if max_abs(cols.conj().T @ cols - np.eye(cols.shape[1])) > 1e-10:
        return False
    return compression_residual(a, cols, mu) <= tol


@dataclass(frozen=True)
class RiccatiProblem:
    """Data (m, p) of the quadratic matrix equation

        h p h - h (m* - I/2) - (m - I/2) h - I = 0

    in a Hermitian unknown ``h``; ``p`` must be Hermitian positive definite,
    ``m`` is arbitrary.  The equation is the standard rewriting of the
    fixed-point form ``I + m h + h m* - h p h = h``.
    """

    m: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        m = check_square_matrix(self.m, "m")
        p = check_square_matrix(self.p, "p")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "p", p)
        if m.shape != p.shape:
            raise DimensionMismatchError("m and p must have the same shape")
        if max_abs(p - p.conj().T) > 1e-12 * max(1.0, max_abs(p)):
            raise NotHermitianError("p must be Hermitian")
        smallest = float(np.linalg.eigvalsh((p + p.conj().T) / 2.0)[0])
        if smallest <= 0.0:
            raise RankRangeError(f"p must be positive definite, smallest eigenvalue {smallest:.3e}")

    @property
    def k(self) -> int:
        return self.m.shape[0]


def riccati_residual(h, problem: RiccatiProblem) -> np.ndarray:
    """Residual matrix of the quadratic form h p h - h(m*-I/2) - (m-I/2)h - I."""
    h = np.asarray(h, dtype=np.complex128)
    eye = np.eye(problem.k)
    shifted = problem.m - eye / 2.0
    return h @ problem.p @ h - h @ shifted.conj().T - shifted @ h - eye


def riccati_fixed_point_residual(h, problem: RiccatiProblem) -> np.ndarray:
    """Residual matrix of the fixed-point form I + m h + h m* - h p h - h."""
    h = np.asarray(h, dtype=np.complex128)
    eye = np.eye(problem.k)
    return eye + problem.m @ h + h @ problem.m.conj().T - h @ problem.p @ h - h


def riccati_equivalence_check(h, problem: RiccatiProblem, tol: float = 1e-8) -> bool:
    """True iff ``h`` satisfies the fixed-point form within ``tol``.

    The fixed-point and quadratic residuals are entrywise negatives of each
    other (an algebraic identity, exercised in the test suite), so any ``h``
    accepted here solves the quadratic form to the same accuracy.
    """
    return max_abs(riccati_fixed_point_residual(h, problem)) <= tol


def _hermitize(h: np.ndarray) -> np.ndarray:
    return (h + h.conj().T) / 2.0


def _riccati_newton(problem: RiccatiProblem, tol: float, max_iter: int):
    """Damped Newton iteration started at the identity."""
    k = problem.k
    eye = np.eye(k)
    shifted = problem.m - eye / 2.0
    h = eye.astype(np.complex128)
    res = riccati_residual(h, problem)
    best_h, best_r = h, max_abs(res)
    for _ in range(max_iter):
        r_norm = max_abs(res)
        if r_norm < best_r:
            best_h, best_r = h, r_norm
        if r_norm <= tol:
            return h, r_norm
        jac = h @ problem.p - shifted
        try:
            step = solve_sylvester(jac, jac.conj().T, -res)
        except Exception:
            break
        if not np.all(np.isfinite(step)):
            break
        step = _hermitize(step)
        for damping in (1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125):
            trial = _hermitize(h + damping * step)
            trial_res = riccati_residual(trial, problem)
            if max_abs(trial_res) < r_norm:
                h, res = trial, trial_res
                break
        else:
            break
    return best_h, best_r


def _riccati_invariant_subspace(problem: RiccatiProblem, stable: bool) -> np.ndarray | None:
    """Solution from the eigenvectors of the 2k-by-2k Hamiltonian-type matrix."""
    k = problem.k
    eye = np.eye(k)
    a = problem.m.conj().T - eye / 2.0
    ham = np.block([[a, -problem.p], [-eye, -a.conj().T]])
    values, vectors = np.linalg.eig(ham)
    order = np.argsort(values.real if stable else -values.real)
    basis = vectors[:, order[:k]]
    top, bottom = basis[:k], basis[k:]
    if np.linalg.cond(top) > 1e12:
        return None
    return _hermitize(np.linalg.solve(top.conj().T, bottom.conj().T).conj().T)


def riccati_solve(problem: RiccatiProblem, tol: float = DEFAULT.riccati, max_iter: int = 60) -> np.ndarray:
    """Hermitian solution of the quadratic matrix equation.

    Newton iteration from the identity with Hermitian-projected, damped steps;
    when Newton stalls, falls back to the invariant-subspace construction from
    the associated 2k-by-2k Hamiltonian-type matrix.  The returned solution is
    the one reached from the identity whenever Newton converges, which makes
    the solver deterministic.
    """
    h, r_norm = _riccati_newton(problem, tol, max_iter)
    best_h, best_r = h, r_norm
    if best_r <= tol:
        return _hermitize(best_h)
    for stable in (True, False):
        candidate = _riccati_invariant_subspace(problem, stable)
        if candidate is None:
            continue
        r = max_abs(riccati_residual(candidate, problem))
        if r < best_r:
            best_h, best_r = candidate, r
        if best_r <= tol:
            return _hermitize(best_h)
    raise NoConvergenceError(
        f"quadratic matrix equation solver stalled at residual {best_r:.3e}", best_residual=best_r
    )


def canonical_block(xblk, yblk) -> np.ndarray:
    """The 2k-by-2k block matrix [[I, x], [y, -I]]."""
    x = check_square_matrix(xblk, "xblk")
    y = check_square_matrix(yblk, "yblk")
    if x.shape != y.shape:
        raise DimensionMismatchError("xblk and yblk must have the same shape")
    eye = np.eye(x.shape[0])
    return np.block([[eye, x], [y, -eye]])


def canonical_zero_witness(xblk, yblk, tol: float = DEFAULT.witness) -> Isometry:
    """A 2k-by-k isometry compressing [[I, x], [y, -I]] to the zero matrix.

    Looks for the invariant graph subspace spanned by [[I], [s]]: the zero
    compression condition reads ``s*s - x s - s* y = I`` and forces
    ``(y* - x) s`` to be Hermitian.  Writing ``s = b h`` with ``b`` the inverse
    of ``y* - x`` and ``h`` Hermitian turns the condition into the quadratic
    equation solved by ``riccati_solve`` with ``p = b* b`` and ``m = x b + I``.
    The graph columns are orthonormalized and the result verified before it is
    returned; degenerate ``y* - x`` falls back to direct synthesis.
    """
    x = check_square_matrix(xblk, "xblk")
    y = check_square_matrix(yblk, "yblk")
    if x.shape != y.shape:
        raise DimensionMismatchError("xblk and yblk must have the same shape")
    k = x.shape[0]
    block = canonical_block(x, y)
    eye = np.eye(k)

    if max_abs(x) == 0.0 and max_abs(y) == 0.0:
        w = np.vstack([eye, eye]) / np.sqrt(2.0)
        return Isometry(w)

    d = y.conj().T - x
    singulars = np.linalg.svd(d, compute_uv=False)
    if singulars[-1] > 1e-6 * max(singulars[0], 1.0):
        b = np.linalg.inv(d)
        problem = RiccatiProblem(m=x @ b + eye, p=b.conj().T @ b)
        h = riccati_solve(problem)
        graph = np.vstack([eye, b @ h])
        w, _ = np.linalg.qr(graph)
        if verify_compression(block, w, 0.0, tol):
            return Isometry(w)
    # singular coupling or verification failure: search directly
    return synthesize_isometry(block, k, 0.0, tol=tol)


@dataclass(frozen=True)
class HellyWitness:
    """A point in the classical numerical range satisfying three sampled
    support constraints at once, with the certifying unit vector."""

    mu: complex
    vector: np.ndarray
    dimension: int
    angles: np.ndarray
    slacks: np.ndarray


def helly_witness(a, k: int, t1: float, t2: float, t3: float, tol: float | None = None) -> HellyWitness:
    """Witness from intersecting three lower eigenspaces.

    For each angle the span of the eigenvectors belonging to the k-th largest
    through smallest eigenvalues of the rotated Hermitian part has dimension
    n - k + 1; three such spans intersect in dimension at least n - 3k + 3,
    which is positive exactly when 3(k - 1) < n.  Any unit vector ``v`` of the
    intersection yields ``mu = v* a v`` obeying all three support constraints.
    """
    a = check_square_matrix(a)
    n = a.shape[0]
    k = check_rank(k, n)
    angles = np.array([float(t1), float(t2), float(t3)])
    if not (0.0 <= angles[0] < angles[1] < angles[2] < 2.0 * np.pi):
        raise RankRangeError("angles must satisfy 0 <= t1 < t2 < t3 < 2*pi")
    if 3 * (k - 1) >= n:
        raise ThresholdViolatedError(
            f"three eigenspace intersections need 3(k-1) < n, got k={k}, n={n}"
        )
    spaces = []
    supports = np.empty(3)
    for i, t in enumerate(angles):
        eig = hermitian_eig(hermitian_part_at(a, t))
        supports[i] = eig.values[k - 1]
        spaces.append(Subspace(n, eig.vectors[:, k - 1 :]))
    meet = subspace_intersection(spaces, tol=tol if tol is not None else DEFAULT.subspace)
    guaranteed = n - 3 * k + 3
    if meet.dim < guaranteed:
        raise RankRangeError(
            f"intersection dimension {meet.dim} below the guaranteed {guaranteed}"
        )
    v = meet.basis[:, 0]
    mu = complex(v.conj() @ a @ v)
    slacks = supports - 2.0 * np.real(np.exp(1j * angles) * mu)
    if float(slacks.min()) < -1e-8 * max(1.0, max_abs(a)):
        raise RankRangeError(
            f"support constraint violated by {-float(slacks.min()):.3e}; eigenspaces inaccurate"
        )
    return HellyWitness(mu, v, meet.dim, angles, slacks)


def compression_objective(a, x, mu: complex):
    """Value, Euclidean gradient and compression for f(X) = ||X*aX - mu I||_F^2.

    The gradient is with respect to the real inner product Re tr(U*V) on the
    ambient n x k matrix space; the descent in :func:`synthesize_isometry`
    projects it onto the tangent space of the isometry manifold.
    """
    a = np.asarray(a, dtype=np.complex128)
    x = np.asarray(x, dtype=np.complex128)
    c = x.conj().T @ a @ x - complex(mu) * np.eye(x.shape[1])
    value = float(np.vdot(c, c).real)
    grad = 2.0 * (a @ (x @ c.conj().T) + a.conj().T @ (x @ c))
    return value, grad, c


def _polar_orthonormalize(y: np.ndarray) -> np.ndarray:
    u, _, vh = np.linalg.svd(y, full_matrices=False)
    return u @ vh


def _paired_neutral_start(b: np.ndarray, k: int) -> np.ndarray:
    """Start with zero compression of the Hermitian part of ``b``.

    Pairs the i-th largest eigenvector (value ``alpha >= 0``) with the i-th
    smallest (value ``-beta <= 0``); the combination with weights
    ``sqrt(beta), sqrt(alpha)`` is neutral for the Hermitian part.  When the
    signs do not cooperate the plain eigenvectors are used instead.
    """
    n = b.shape[0]
    eig = hermitian_eig((b + b.conj().T) / 2.0)
    primary: list[np.ndarray] = []
    secondary: list[np.ndarray] = []
    lo, hi = 0, n - 1
    while lo < hi:
        alpha = max(float(eig.values[lo]), 0.0)
        beta = max(-float(eig.values[hi]), 0.0)
        u, v = eig.vectors[:, lo], eig.vectors[:, hi]
        if alpha + beta <= 1e-14 * max(1.0, max_abs(b)):
            primary.append(u)
            secondary.append(v)
        else:
            norm = np.sqrt(alpha + beta)
            primary.append((np.sqrt(beta) * u + np.sqrt(alpha) * v) / norm)
            secondary.append((np.sqrt(alpha) * u - np.sqrt(beta) * v) / norm)
        lo += 1
        hi -= 1
    singles = [eig.vectors[:, lo]] if lo == hi else []
    ordered = primary + singles + secondary
    return np.column_stack(ordered[:k])


def _compression_descent(a: np.ndarray, x0: np.ndarray, max_iter: int, frob_target: float, float_target: bool):
    """Projected gradient descent on the Stiefel manifold.

    Minimizes the squared Frobenius norm of ``x* a x - mu I`` where ``mu`` is
    fixed at zero (``float_target`` False, with the shift already inside ``a``)
    or kept at the trace mean of the compression (``float_target`` True).
    Nonmonotone backtracking with a Barzilai-Borwein step and polar retraction.
    """
    k = x0.shape[1]
    eye = np.eye(k)
    ah = a.conj().T

    def value_and_grad(x):
        if not float_target:
            return compression_objective(a, x, 0.0)
        c = x.conj().T @ a @ x
        c = c - (np.trace(c) / k) * eye
        f = float(np.vdot(c, c).real)
        g = 2.0 * (a @ (x @ c.conj().T) + ah @ (x @ c))
        return f, g, c

    x = x0
    f, g, c = value_and_grad(x)
    alpha = 1.0 / max(1.0, max_abs(a)) ** 2
    history = [f]
    target = frob_target * frob_target
    for _ in range(max_iter):
        if f <= target:
            break
        xg = x.conj().T @ g
        tangent = g - x @ ((xg + xg.conj().T) / 2.0)
        t_norm2 = float(np.vdot(tangent, tangent).real)
        if t_norm2 <= 1e-24 * (1.0 + f):
            break
        reference = max(history[-8:])
        for _ in range(40):
            trial = _polar_orthonormalize(x - alpha * tangent)
            f_trial, g_trial, c_trial = value_and_grad(trial)
            if f_trial <= reference - 1e-4 * alpha * t_norm2:
                break
            alpha *= 0.3
            if alpha < 1e-20:
                break
        else:
            break
        if f_trial > reference:
            break
        s = trial - x
        y = g_trial - g
        sy = abs(float(np.vdot(s, y).real))
        ss = float(np.vdot(s, s).real)
        alpha = min(max(ss / max(sy, 1e-30), 1e-12), 1e8)
        x, f, g, c = trial, f_trial, g_trial, c_trial
        history.append(f)
    mu = complex(np.trace(x.conj().T @ a @ x) / k) if float_target else 0.0j
    return x, f, mu


def _start_points(a: np.ndarray, k: int, n_starts: int, seed: int) -> list[np.ndarray]:
    rng = np.random.default_rng(seed)
    n = a.shape[0]
    starts = [_paired_neutral_start(a, k)]
    for _ in range(n_starts):
        raw = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
        starts.append(_polar_orthonormalize(raw))
    return starts


def synthesize_isometry(
    a,
    k: int,
    mu: complex,
    tol: float = DEFAULT.witness,
    n_starts: int = 20,
    max_iter: int = 5000,
    seed: int = 0,
) -> Isometry:
    """Search for an isometry compressing ``a`` to ``mu I``.

    Minimizes the squared Frobenius residual over n-by-k isometries with
    projected descent and retraction back to the manifold, trying the paired
    eigenvector start and ``n_starts`` seeded random starts in order and
    returning the first verified witness.  Raises ``SynthesisError`` carrying
    the best residual when every start fails.
    """
    a = check_square_matrix(a)
    k = check_rank(k, a.shape[0])
    shifted = a - complex(mu) * np.eye(a.shape[0])
    best = np.inf
    for x0 in _start_points(shifted, k, n_starts, seed):
        x, f, _ = _compression_descent(shifted, x0, max_iter, frob_target=0.5 * tol, float_target=False)
        if verify_compression(a, x, mu, tol):
            return Isometry(x)
        best = min(best, np.sqrt(max(f, 0.0)))
    raise SynthesisError(
        f"no isometry found compressing to {mu:.6g} within {tol:.1e}; best residual {best:.3e}",
        best_residual=float(best),
    )


def _floating_witness(
    a: np.ndarray,
    k: int,
    tol: float,
    n_starts: int,
    max_iter: int,
    seed: int,
    shift: complex = 0.0j,
) -> tuple[complex, Isometry] | None:
    """Witness search that lets the target float to the compression's trace mean."""
    centered = a - complex(shift) * np.eye(a.shape[0])
    for x0 in _start_points(centered, k, n_starts, seed):
        x, _, mu = _compression_descent(centered, x0, max_iter, frob_target=0.5 * tol, float_target=True)
        total = complex(mu) + complex(shift)
        if verify_compression(a, x, total, tol):
            return total, Isometry(x)
    return None
