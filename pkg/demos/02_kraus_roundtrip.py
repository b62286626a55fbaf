"""Extract the tagged Kraus family of a fixed-point map and round-trip it.

The dual map acts as Phi[X] = sum_k D_k X D_k^dagger.  Each operator lives
on a single ray |a_i><b| with b either the reference vector v (B family)
or a completion direction orthogonal to v (C family); the coefficient
squares are exactly the eigenvalues of the Choi matrix.
"""

import numpy as np

from cpumap import (
    FixedPointSpec,
    NegativeSqrtArgument,
    apply_dual_choi,
    apply_dual_kraus,
    build_fixed_point_choi,
    choi_from_kraus,
    kraus_from_fixed_point,
    unitality_residual,
)

np.set_printoptions(precision=6, suppress=True)

print("=== Kraus family for A = diag(2, 1), v = (1, 0) ===")
spec = FixedPointSpec(
    a=np.diag([2.0, 1.0]).astype(complex), v=np.array([1.0, 0.0], dtype=complex)
)
kset = kraus_from_fixed_point(spec)
for tag, op in kset.ops:
    norm = np.linalg.norm(op.reshape(-1))
    print(f"  {tag:6s} weight {norm**2:.6f}")
print(f"  unitality residual ||sum D D^dagger - I|| = {unitality_residual(kset):.3e}")

print()
print("=== Choi round-trip ===")
Z = build_fixed_point_choi(spec)
Z2 = choi_from_kraus(kset)
print(f"  ||rebuilt - constructed||_max = {np.max(np.abs(Z2.matrix - Z.matrix)):.3e}")

print()
print("=== both representations act identically ===")
rng = np.random.default_rng(2)
worst = 0.0
for _ in range(20):
    G = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    B = (G + G.conj().T) / 2
    worst = max(worst, np.max(np.abs(apply_dual_kraus(kset, B) - apply_dual_choi(Z, B))))
print(f"  max action difference over 20 random observables: {worst:.3e}")

print()
print("=== a complex reference vector at dimension 4 ===")
rng = np.random.default_rng(3)
v = rng.normal(size=4) + 1j * rng.normal(size=4)
v /= np.linalg.norm(v)
A = 0.5 * np.eye(4) + 1.5 * np.outer(v, v.conj())
spec4 = FixedPointSpec(a=A, v=v)
k4 = kraus_from_fixed_point(spec4)
Z4 = build_fixed_point_choi(spec4)
print(f"  {len(k4.ops)} operators, tags B0..B3 and C(i,j)")
print(f"  unitality residual: {unitality_residual(k4):.3e}")
print(f"  round-trip residual: {np.max(np.abs(choi_from_kraus(k4).matrix - Z4.matrix)):.3e}")

print()
print("=== extraction refuses non-positive specs ===")
bad = FixedPointSpec(
    a=np.diag([3.0, 2.0, 1.0]).astype(complex),
    v=np.array([1.0, 0.0, 0.0], dtype=complex),
)
try:
    kraus_from_fixed_point(bad)
except NegativeSqrtArgument as exc:
    print(f"  NegativeSqrtArgument: {exc}")
