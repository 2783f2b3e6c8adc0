"""Shared fixtures: seeded generators for the random-matrix test loops."""

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20260814)


@pytest.fixture
def complex_gaussian(rng):
    """Factory for n x n matrices with iid standard complex Gaussian entries."""

    def make(n):
        z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        return z / np.sqrt(2.0)

    return make


@pytest.fixture
def random_hermitian(rng):
    def make(n):
        z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        return (z + z.conj().T) / 2.0

    return make


@pytest.fixture
def random_unitary(rng):
    """Haar-distributed unitary via QR with the phase convention fixed."""

    def make(n):
        z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        q, r = np.linalg.qr(z)
        d = np.diag(r)
        return q * (d / np.abs(d))

    return make


@pytest.fixture
def random_normal_matrix(rng, random_unitary):
    """Random normal matrix: unitary conjugation of a random diagonal."""

    def make(n):
        eig = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        u = random_unitary(n)
        return (u * eig) @ u.conj().T

    return make


@pytest.fixture
def diamond():
    """diag(1, i, -1, -i), the fourth roots of unity on the diagonal."""
    return np.diag([1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j])
