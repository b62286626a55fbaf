"""Shared seeded generators for the test suite."""

import numpy as np

from cpumap import FixedPointSpec


def rng_for(*key):
    return np.random.default_rng(list(key))


def random_hermitian(rng, n):
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (g + g.conj().T) / 2.0


def random_unit(rng, n):
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.linalg.norm(v)


def random_density(rng, n):
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_spec(rng, n):
    """Generic spec with well-separated denominators (not necessarily CP)."""
    while True:
        a = random_hermitian(rng, n)
        v = random_unit(rng, n)
        t = float(np.real(np.trace(a)))
        e = float(np.real(np.conj(v) @ a @ v))
        if abs(t) > 1e-2 and abs(e) > 1e-2 and abs(e - t / n) > 1e-2:
            return FixedPointSpec(a=a, v=v)


def pencil_spec(rng, n, bottom=False):
    """Completely positive spec: A = alpha I + beta |v><v|."""
    while True:
        v = random_unit(rng, n)
        alpha = float(rng.normal())
        beta = abs(float(rng.normal())) + 0.5
        if bottom:
            beta = -beta
        a = alpha * np.eye(n) + beta * np.outer(v, v.conj())
        t = float(np.real(np.trace(a)))
        e = alpha + beta
        if abs(t) > 1e-2 and abs(e) > 1e-2 and abs(e - t / n) > 1e-2:
            return FixedPointSpec(a=a, v=v)


def hermitian_basis(n):
    """Complete operator basis of n^2 Hermitian matrices."""
    basis = []
    for j in range(n):
        m = np.zeros((n, n), dtype=complex)
        m[j, j] = 1.0
        basis.append(m)
    for j in range(n):
        for k in range(j + 1, n):
            m = np.zeros((n, n), dtype=complex)
            m[j, k] = m[k, j] = 1.0 / np.sqrt(2)
            basis.append(m)
            m = np.zeros((n, n), dtype=complex)
            m[j, k] = -1j / np.sqrt(2)
            m[k, j] = 1j / np.sqrt(2)
            basis.append(m)
    return basis
