"""Heisenberg-picture (dual) maps: action from Choi or Kraus form, Kraus
extraction for the fixed-point family, Choi <-> Kraus round trips, and the
linear-growth evolution of observables.

A :class:`KrausSet` stores the *dual* operators ``D_k`` acting as

    Phi[X] = sum_k D_k X D_k^dagger,        Phi[I] = sum_k D_k D_k^dagger = I.

With the row-major flattening used everywhere in this package, the Choi
matrix of such a map is ``Z = sum_k vec(D_k) vec(D_k)^dagger``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .choi import ChoiMatrix, FixedPointSpec
from .errors import DimensionError, DomainError, NegativeSqrtArgument
from .linalg import as_matrix, eig_hermitian, ensure_density_matrix, max_abs

SQRT_TOL = 1e-12      # coefficient squares below -SQRT_TOL are positivity errors
GS_DROP_TOL = 1e-8    # Gram-Schmidt candidates below this norm are dropped


@dataclass(frozen=True)
class KrausSet:
    """Tagged dual Kraus operators of one map.

    Tags follow the family each operator belongs to: ``B{i}`` for the
    reference-vector rays, ``C{i},{j}`` for the completed-basis rays and
    ``E{i},{j}`` for environment-interaction operators.
    """

    dim: int
    ops: tuple[tuple[str, np.ndarray], ...]

    def __post_init__(self):
        checked = []
        for tag, op in self.ops:
            m = as_matrix(op)
            if m.shape != (self.dim, self.dim):
                raise DimensionError(
                    f"operator {tag!r} has shape {m.shape}, expected "
                    f"{(self.dim, self.dim)}"
                )
            checked.append((str(tag), m))
        object.__setattr__(self, "ops", tuple(checked))

    def matrices(self) -> list[np.ndarray]:
        return [op for _, op in self.ops]


@dataclass(frozen=True)
class EvolutionTrace:
    """Sampled expectation values <A(t)> growing linearly in time."""

    times: np.ndarray
    values: np.ndarray
    phi_fit: float
    rho: np.ndarray = field(compare=False)

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.shape != v.shape or t.ndim != 1:
            raise DimensionError("times and values must be equal-length vectors")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(v))):
            raise DimensionError("trace contains non-finite entries")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)


def apply_dual_choi(z: ChoiMatrix, b) -> np.ndarray:
    """Evaluate tr_2[Z (I (x) B^T)]; Hermitian output for Hermitian input."""
    b = as_matrix(b)
    n = z.dim
    if b.shape != (n, n):
        raise DimensionError(f"observable shape {b.shape} does not match dim {n}")
    return np.einsum("ikjq,kq->ij", z.matrix.reshape(n, n, n, n), b)


def apply_dual_kraus(k: KrausSet, b) -> np.ndarray:
    """Evaluate sum_k D_k B D_k^dagger."""
    b = as_matrix(b)
    if b.shape != (k.dim, k.dim):
        raise DimensionError(f"observable shape {b.shape} does not match dim {k.dim}")
    out = np.zeros_like(b)
    for op in k.matrices():
        out = out + op @ b @ op.conj().T
    return out


def unitality_residual(k: KrausSet) -> float:
    """Residual ||Phi[I] - I||_max = ||sum D D^dagger - I||_max."""
    acc = np.zeros((k.dim, k.dim), dtype=complex)
    for op in k.matrices():
        acc += op @ op.conj().T
    return max_abs(acc - np.eye(k.dim))


def idempotence_residual(z: ChoiMatrix, b) -> float:
    """||Phi[Phi[B]] - Phi[B]||_max; zero for the fixed-point family."""
    once = apply_dual_choi(z, b)
    return max_abs(apply_dual_choi(z, once) - once)


def complete_basis(v: np.ndarray) -> list[np.ndarray]:
    """Deterministic orthonormal completion of ``v`` over canonical vectors.

    Returns ``[v, g_1, ..., g_{N-1}]``; canonical candidates are consumed in
    index order and dropped when their projected residual falls below 1e-8.
    """
    v = np.asarray(v, dtype=complex).reshape(-1)
    n = v.shape[0]
    basis = [v / np.linalg.norm(v)]
    for idx in range(n):
        if len(basis) == n:
            break
        cand = np.zeros(n, dtype=complex)
        cand[idx] = 1.0
        for b in basis:
            cand = cand - b * (np.conj(b) @ cand)
        nrm = float(np.linalg.norm(cand))
        if nrm >= GS_DROP_TOL:
            basis.append(cand / nrm)
    if len(basis) != n:
        raise DimensionError("basis completion failed; candidates degenerate")
    return basis


def kraus_from_fixed_point(spec: FixedPointSpec) -> KrausSet:
    """Extract the tagged dual Kraus family of the fixed-point map.

    Writing A = sum_i a_i |a_i><a_i| and e = <v|A|v>, t = tr A, the family
    consists of one operator per eigenvector on the ``v`` ray,

        B_i = sqrt(z_i) |a_i><v|,
        z_i = a_i/e + (1 - a_i/e)(1/t - 1/e) / (N/t - 1/e),

    and one per eigenvector and completion direction g_j orthogonal to v,

        C_ij = sqrt(w_i) |a_i><g_j|,   w_i = (1 - a_i/e) / ((N/t - 1/e) t).

    Each coefficient square is formed as a full product before the single
    square root.  The squares are exactly the eigenvalues of the Choi
    matrix, so :class:`NegativeSqrtArgument` is raised precisely when the
    spec violates positivity (any square below -1e-12).  For A proportional
    to the identity the C coefficients collapse to zero and z_i = 1.
    """
    n = spec.dim
    e = spec.expectation
    t = spec.trace
    avals, avecs = eig_hermitian(spec.a)
    if spec.is_scalar:
        z = np.ones(n)
        w = np.zeros(n)
    else:
        denom = n / t - 1.0 / e
        z = avals / e + (1.0 - avals / e) * (1.0 / t - 1.0 / e) / denom
        w = (1.0 - avals / e) / (denom * t)
    worst = float(min(np.min(z), np.min(w)))
    if worst < -SQRT_TOL:
        raise NegativeSqrtArgument(
            f"coefficient square {worst:.3e} < -1e-12: the spec is not "
            "completely positive"
        )
    z = np.clip(z, 0.0, None)
    w = np.clip(w, 0.0, None)
    basis = complete_basis(spec.v)
    ops: list[tuple[str, np.ndarray]] = []
    for i in range(n):
        ops.append((f"B{i}", np.sqrt(z[i]) * np.outer(avecs[:, i], basis[0].conj())))
    for i in range(n):
        for j in range(1, n):
            ops.append(
                (f"C{i},{j}", np.sqrt(w[i]) * np.outer(avecs[:, i], basis[j].conj()))
            )
    return KrausSet(dim=n, ops=tuple(ops))


def choi_from_kraus(k: KrausSet) -> ChoiMatrix:
    """Rebuild the Choi matrix Z = sum_k vec(D_k) vec(D_k)^dagger."""
    n = k.dim
    z = np.zeros((n * n, n * n), dtype=complex)
    for op in k.matrices():
        u = op.reshape(-1)
        z += np.outer(u, u.conj())
    return ChoiMatrix(dim=n, matrix=z)


def _validate_times(times) -> np.ndarray:
    t = np.asarray(times, dtype=float).reshape(-1)
    if t.size == 0:
        raise DomainError("times vector is empty")
    if t[0] < 0 or np.any(np.diff(t) < 0):
        raise DomainError("times must be ascending and nonnegative")
    return t


def evolve_linear(z: ChoiMatrix, a0, rho, times, rate: float = 1.0) -> EvolutionTrace:
    """Closed-form linear growth <A(t)> = rate * tr[rho Phi[A0]] * t.

    Repeated application of the map reproduces its first application, so
    the generator is the constant observable Phi[A0] and the expectation
    grows exactly linearly from <A(0)> = 0.
    """
    rho = ensure_density_matrix(rho)
    if rho.shape != (z.dim, z.dim):
        raise DimensionError(f"rho shape {rho.shape} does not match dim {z.dim}")
    t = _validate_times(times)
    generator = apply_dual_choi(z, a0)
    slope = rate * float(np.real(np.trace(rho @ generator)))
    return EvolutionTrace(times=t, values=slope * t, phi_fit=slope, rho=rho)


def evolve_linear_euler(z: ChoiMatrix, a0, rho, times, rate: float = 1.0) -> np.ndarray:
    """Explicit Euler accumulation of dA/dt = rate * Phi[A0] over the grid.

    Independent verification route for :func:`evolve_linear`; grid point k
    is reached by stepping the operator accumulator from grid point k-1.
    """
    rho = ensure_density_matrix(rho)
    t = _validate_times(times)
    generator = rate * apply_dual_choi(z, a0)
    acc = t[0] * generator
    values = [float(np.real(np.trace(rho @ acc)))]
    for k in range(1, t.size):
        acc = acc + (t[k] - t[k - 1]) * generator
        values.append(float(np.real(np.trace(rho @ acc))))
    return np.asarray(values)
