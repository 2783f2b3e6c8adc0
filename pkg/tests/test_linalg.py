"""Hermitian eigenstructure, rotated Hermitian parts, subspace intersection."""

import numpy as np
import pytest

from rankrange.errors import NonFiniteError, NotHermitianError
from rankrange.linalg import (
    Subspace,
    hermitian_eig,
    hermitian_part_at,
    max_abs,
    subspace_intersection,
    support_eigenvalues,
)

W = np.exp(2j * np.pi / 3)


def charpoly_eigenvalues(h):
    """Independent eigenvalue oracle: Faddeev-LeVerrier coefficients + np.roots.

    Slow and less accurate than a dedicated symmetric solver, which is the
    point: it shares no code path with the implementation under test.
    """
    n = h.shape[0]
    coeffs = np.empty(n + 1, dtype=complex)
    coeffs[0] = 1.0
    m = np.zeros_like(h, dtype=complex)
    c = 1.0 + 0.0j
    for i in range(1, n + 1):
        m = h @ m + c * np.eye(n)
        c = -np.trace(h @ m) / i
        coeffs[i] = c
    roots = np.roots(coeffs)
    return np.sort(roots.real)[::-1]


def test_max_abs():
    assert max_abs(np.array([[1.0, -3.0], [2.0, 0.5]])) == 3.0
    assert max_abs(np.array([3.0 + 4.0j])) == 5.0


def test_hermitian_eig_diagonal():
    eig = hermitian_eig(np.diag([3.0, 1.0, 2.0]))
    assert np.allclose(eig.values, [3.0, 2.0, 1.0])
    for val, vec in zip(eig.values, eig.vectors.T):
        assert max_abs(np.diag([3.0, 1.0, 2.0]) @ vec - val * vec) <= 1e-12


def test_hermitian_eig_identity():
    eig = hermitian_eig(np.eye(4))
    assert np.allclose(eig.values, np.ones(4))


def test_hermitian_eig_matches_charpoly_oracle(random_hermitian):
    h = random_hermitian(5)
    eig = hermitian_eig(h)
    assert np.all(np.diff(eig.values) <= 1e-12)  # descending
    assert np.allclose(eig.values, charpoly_eigenvalues(h), atol=1e-8)
    # residual and orthonormality of the returned pairs
    scale = max(1.0, max_abs(h))
    for val, vec in zip(eig.values, eig.vectors.T):
        assert max_abs(h @ vec - val * vec) <= 1e-10 * scale
    gram = eig.vectors.conj().T @ eig.vectors
    assert max_abs(gram - np.eye(5)) <= 1e-12


def test_hermitian_eig_rejects_bad_input():
    with pytest.raises(NotHermitianError):
        hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(NonFiniteError):
        hermitian_eig(np.array([[np.nan, 0.0], [0.0, 1.0]]))


def test_eigenvalues_unitarily_invariant(random_hermitian, random_unitary):
    for n in (3, 5, 7):
        h = random_hermitian(n)
        u = random_unitary(n)
        base = hermitian_eig(h).values
        conj = hermitian_eig(u.conj().T @ h @ u).values
        assert max_abs(base - conj) <= 1e-9 * max(1.0, max_abs(base))


def test_hermitian_part_at_cube_roots():
    a = np.diag([1.0 + 0.0j, W, W**2])
    part = hermitian_part_at(a, 0.0)
    assert np.allclose(part, np.diag([2.0, -1.0, -1.0]), atol=1e-15)


def test_hermitian_part_at_formula(complex_gaussian):
    a = complex_gaussian(4)
    for t in (0.0, 0.7, np.pi, 5.1):
        part = hermitian_part_at(a, t)
        direct = np.exp(1j * t) * a + np.exp(-1j * t) * a.conj().T
        assert max_abs(part - direct) <= 1e-14
        assert max_abs(part - part.conj().T) <= 1e-14


def test_support_eigenvalues_matches_loop(complex_gaussian):
    a = complex_gaussian(5)
    angles = np.linspace(0.0, 2.0 * np.pi, 16, endpoint=False)
    batched = support_eigenvalues(a, angles)
    assert batched.shape == (16, 5)
    for row, t in zip(batched, angles):
        assert max_abs(row - hermitian_eig(hermitian_part_at(a, t)).values) <= 1e-12


def test_subspace_from_columns_orthonormalizes():
    s = Subspace.from_columns(np.array([[2.0, 0.0], [0.0, 0.0], [0.0, 3.0]]))
    assert s.ambient_dim == 3
    assert s.dim == 2
    assert max_abs(s.basis.conj().T @ s.basis - np.eye(2)) <= 1e-12


def test_subspace_intersection_coordinate_planes():
    e = np.eye(4, dtype=complex)
    s12 = Subspace.from_columns(e[:, [0, 1]])
    s23 = Subspace.from_columns(e[:, [1, 2]])
    meet = subspace_intersection([s12, s23])
    assert meet.dim == 1
    # basis spans e2 up to phase
    assert abs(abs(meet.basis[1, 0]) - 1.0) <= 1e-10


def test_subspace_intersection_idempotent(rng):
    cols = rng.standard_normal((6, 3)) + 1j * rng.standard_normal((6, 3))
    s = Subspace.from_columns(cols)
    meet = subspace_intersection([s, s])
    assert meet.dim == s.dim


def test_subspace_intersection_generic_dimension(rng):
    """Three 5-dim subspaces of C^7 generically meet in 3*5 - 2*7 = 1 dimension."""
    for _ in range(3):
        subs = [
            Subspace.from_columns(
                rng.standard_normal((7, 5)) + 1j * rng.standard_normal((7, 5))
            )
            for _ in range(3)
        ]
        meet = subspace_intersection(subs)
        assert meet.dim >= 1
        for s in subs:
            proj = s.basis @ (s.basis.conj().T @ meet.basis)
            assert max_abs(proj - meet.basis) <= 1e-8
