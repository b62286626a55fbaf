"""Exception hierarchy shared by all cpumap modules.

Every error carries a short machine-readable ``code`` used by the CLI when
emitting JSON error lines.
"""

from __future__ import annotations


class CpuMapError(ValueError):
    """Base class for all validation failures raised by this package."""

    code = "invalid"


class DimensionError(CpuMapError):
    """Shapes or dimensions are inconsistent with the requested operation."""

    code = "dimension"


class HermiticityError(CpuMapError):
    """Input matrix is not Hermitian within tolerance."""

    code = "hermiticity"


class DegenerateDenominator(CpuMapError):
    """<v|A|v> equals tr(A)/N, making the construction singular."""

    code = "degenerate-denominator"


class ZeroTrace(CpuMapError):
    """tr(A) is numerically zero."""

    code = "zero-trace"


class ZeroExpectation(CpuMapError):
    """<v|A|v> is numerically zero."""

    code = "zero-expectation"


class NegativeSqrtArgument(CpuMapError):
    """A Kraus coefficient square is negative: the spec violates positivity."""

    code = "negative-sqrt"


class InvalidDensityMatrix(CpuMapError):
    """State is not positive semidefinite with unit trace within tolerance."""

    code = "invalid-density-matrix"


class DomainError(CpuMapError):
    """Scalar argument outside its mathematical domain."""

    code = "domain"
