import numpy as np
import pytest

from cpumap import DimensionError, HermiticityError, eig_hermitian, is_psd, kron, partial_trace_second
from cpumap.linalg import as_matrix, max_abs

from conftest import random_hermitian, rng_for


def kron_loop_oracle(a, b):
    """Four-nested-loop scalar Kronecker product."""
    out = np.zeros((a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]), dtype=complex)
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            for k in range(b.shape[0]):
                for l in range(b.shape[1]):
                    out[i * b.shape[0] + k, j * b.shape[1] + l] = a[i, j] * b[k, l]
    return out


def ptrace_loop_oracle(m, d1, d2):
    """Explicit double-index summation sum_k <i,k|M|j,k>."""
    out = np.zeros((d1, d1), dtype=complex)
    for i in range(d1):
        for j in range(d1):
            out[i, j] = sum(m[i * d2 + k, j * d2 + k] for k in range(d2))
    return out


def test_kron_identity():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_diagonal():
    got = kron(np.diag([1.0, 2.0]), np.diag([3.0, 4.0]))
    assert np.allclose(got, np.diag([3.0, 4.0, 6.0, 8.0]))


def test_kron_against_loop_oracle():
    rng = rng_for(101)
    for _ in range(10):
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        b = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        assert max_abs(kron(a, b) - kron_loop_oracle(a, b)) < 1e-12


def test_kron_associativity():
    rng = rng_for(102)
    for _ in range(10):
        a, b, c = (rng.normal(size=(2, 3)) + 1j * rng.normal(size=(2, 3)) for _ in range(3))
        assert max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))) < 1e-12


def test_partial_trace_factorized():
    rng = rng_for(103)
    for _ in range(10):
        x = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        y = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        got = partial_trace_second(kron(x, y), 3, 4)
        assert max_abs(got - x * np.trace(y)) < 1e-10


def test_partial_trace_identity():
    assert np.allclose(partial_trace_second(np.eye(4), 2, 2), 2.0 * np.eye(2))


def test_partial_trace_against_index_oracle():
    rng = rng_for(104)
    m = random_hermitian(rng, 4)
    assert max_abs(partial_trace_second(m, 2, 2) - ptrace_loop_oracle(m, 2, 2)) < 1e-14


def test_partial_trace_preserves_trace():
    rng = rng_for(105)
    for d1, d2 in [(2, 3), (3, 2), (4, 4)]:
        m = rng.normal(size=(d1 * d2, d1 * d2)) + 1j * rng.normal(size=(d1 * d2, d1 * d2))
        assert abs(np.trace(partial_trace_second(m, d1, d2)) - np.trace(m)) < 1e-10


def test_partial_trace_dimension_mismatch():
    with pytest.raises(DimensionError):
        partial_trace_second(np.eye(6), 2, 2)


def test_eig_diagonal_sorted():
    evals, _ = eig_hermitian(np.diag([3.0, 1.0, 2.0]))
    assert np.allclose(evals, [1.0, 2.0, 3.0])


def test_eig_exchange_matrix():
    evals, _ = eig_hermitian(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert np.allclose(evals, [-1.0, 1.0])


@pytest.mark.parametrize("n", [2, 5, 16, 64])
def test_eig_reconstruction(n):
    h = random_hermitian(rng_for(106, n), n)
    evals, vecs = eig_hermitian(h)
    assert max_abs((vecs * evals) @ vecs.conj().T - h) < 1e-8


def test_eig_phase_convention():
    h = random_hermitian(rng_for(107), 5)
    _, vecs = eig_hermitian(h)
    for k in range(5):
        col = vecs[:, k]
        pivot = col[int(np.argmax(np.abs(col)))]
        assert abs(pivot.imag) < 1e-12 and pivot.real > 0


def test_eig_deterministic():
    h = random_hermitian(rng_for(108), 6)
    e1, v1 = eig_hermitian(h)
    e2, v2 = eig_hermitian(h.copy())
    assert np.array_equal(e1, e2) and np.array_equal(v1, v2)


def test_eig_rejects_non_hermitian():
    with pytest.raises(HermiticityError):
        eig_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_is_psd():
    assert is_psd(np.eye(3), 1e-9)
    assert not is_psd(np.diag([1.0, -0.5]), 1e-9)


def test_as_matrix_rejects_nonfinite():
    with pytest.raises(DimensionError):
        as_matrix(np.array([[np.nan, 0.0], [0.0, 1.0]]))
