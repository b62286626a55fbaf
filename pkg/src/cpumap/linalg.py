"""Dense complex-matrix substrate: Kronecker products, partial traces,
Hermitian eigendecomposition with a deterministic phase convention, and
tolerance-based predicates.

Conventions used throughout the package:
  * tensor index: |i> (x) |k| maps to flat index i*d2 + k (numpy kron order);
  * default Hermiticity / eigenvalue tolerance 1e-9, reconstruction 1e-8;
  * all functions are pure and never mutate their arguments.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, HermiticityError

HERM_TOL = 1e-9
RECON_TOL = 1e-8


def as_matrix(m) -> np.ndarray:
    """Coerce to a finite 2-D complex array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got ndim={a.ndim}")
    if not np.all(np.isfinite(a)):
        raise DimensionError("matrix contains NaN or Inf entries")
    return a


def max_abs(m) -> float:
    """Entrywise max-norm ||M||_max."""
    a = np.asarray(m)
    return float(np.max(np.abs(a))) if a.size else 0.0


def hermiticity_residual(m) -> float:
    """||M - M^dagger||_max."""
    a = as_matrix(m)
    return max_abs(a - a.conj().T)


def ensure_hermitian(m, tol: float = HERM_TOL) -> np.ndarray:
    """Validate Hermiticity within ``tol`` and return the matrix."""
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"Hermitian matrix must be square, got {a.shape}")
    res = max_abs(a - a.conj().T)
    if res > tol:
        raise HermiticityError(f"||M - M^dagger||_max = {res:.3e} exceeds {tol:.1e}")
    return a


def kron(a, b) -> np.ndarray:
    """Kronecker product; dims multiply, first factor owns the slow index."""
    return np.kron(as_matrix(a), as_matrix(b))


def partial_trace_second(m, d1: int, d2: int) -> np.ndarray:
    """Trace out the second tensor factor of a (d1*d2) x (d1*d2) matrix.

    Preserves the total trace: tr(out) == tr(m).
    """
    a = as_matrix(m)
    if a.shape != (d1 * d2, d1 * d2):
        raise DimensionError(
            f"expected shape {(d1 * d2, d1 * d2)} for d1={d1}, d2={d2}, got {a.shape}"
        )
    return np.einsum("ikjk->ij", a.reshape(d1, d2, d1, d2))


def eig_hermitian(h, tol: float = HERM_TOL):
    """Eigendecomposition of a Hermitian matrix with reproducible output.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues ascending and
    eigenvectors as columns.  Each eigenvector is rephased so its first
    component of largest magnitude is real and positive; exact eigenvalue
    ties (within 1e-12) are ordered by lexicographic comparison of the
    phase-fixed vectors.
    """
    a = ensure_hermitian(h, tol)
    evals, vecs = np.linalg.eigh(a)
    vecs = vecs.copy()
    n = a.shape[0]
    for k in range(n):
        col = vecs[:, k]
        idx = int(np.argmax(np.abs(col)))
        pivot = col[idx]
        if abs(pivot) > 0:
            vecs[:, k] = col * (abs(pivot) / pivot)
    # stable ordering inside numerically exact ties
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and abs(evals[stop] - evals[start]) <= 1e-12:
            stop += 1
        if stop - start > 1:
            keys = [
                tuple(np.round(np.concatenate([vecs[:, k].real, vecs[:, k].imag]), 10))
                for k in range(start, stop)
            ]
            order = sorted(range(stop - start), key=lambda i: keys[i])
            vecs[:, start:stop] = vecs[:, [start + i for i in order]]
            evals[start:stop] = evals[[start + i for i in order]]
        start = stop
    return evals.astype(float), vecs


def is_psd(h, tol: float = HERM_TOL) -> bool:
    """True iff the minimum eigenvalue of a Hermitian matrix is >= -tol."""
    a = ensure_hermitian(h, max(tol, HERM_TOL))
    return bool(np.min(np.linalg.eigvalsh(a)) >= -tol)


def ensure_density_matrix(rho, tol: float = HERM_TOL) -> np.ndarray:
    """Validate a density matrix: Hermitian, PSD and unit trace within ``tol``."""
    from .errors import InvalidDensityMatrix

    a = as_matrix(rho)
    if a.shape[0] != a.shape[1]:
        raise InvalidDensityMatrix(f"density matrix must be square, got {a.shape}")
    if max_abs(a - a.conj().T) > tol:
        raise InvalidDensityMatrix("density matrix is not Hermitian")
    tr = complex(np.trace(a))
    if abs(tr - 1.0) > tol:
        raise InvalidDensityMatrix(f"trace {tr} differs from 1 by more than {tol:.1e}")
    if np.min(np.linalg.eigvalsh(a)) < -tol:
        raise InvalidDensityMatrix("density matrix has a negative eigenvalue")
    return a
