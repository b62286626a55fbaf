"""cpumap: completely positive unital maps with prescribed fixed points,
swap-channel battery charging, and singularity-free dilation profiles."""

from .battery import (
    BatteryConfig,
    EnvState,
    aligned_env,
    alignment_unitary,
    dual_apply_number,
    env_kraus,
    number_operator,
    phi,
    simulate_charging,
    swap_unitary,
)
from .choi import (
    ChoiMatrix,
    FixedPointSpec,
    build_fixed_point_choi,
    check_fixed_point,
    check_unital,
    choi_is_psd,
    positivity_bounds,
)
from .dual_map import (
    EvolutionTrace,
    KrausSet,
    apply_dual_choi,
    apply_dual_kraus,
    choi_from_kraus,
    evolve_linear,
    evolve_linear_euler,
    idempotence_residual,
    kraus_from_fixed_point,
    unitality_residual,
)
from .errors import (
    CpuMapError,
    DegenerateDenominator,
    DimensionError,
    DomainError,
    HermiticityError,
    InvalidDensityMatrix,
    NegativeSqrtArgument,
    ZeroExpectation,
    ZeroTrace,
)
from .linalg import eig_hermitian, is_psd, kron, partial_trace_second
from .metric import (
    MetricParams,
    MetricProfile,
    ProfileRecord,
    build_profile,
    dilation_factor,
    offset_factor,
    synth_env,
)

__version__ = "0.1.0"

__all__ = [
    "BatteryConfig",
    "ChoiMatrix",
    "CpuMapError",
    "DegenerateDenominator",
    "DimensionError",
    "DomainError",
    "EnvState",
    "EvolutionTrace",
    "FixedPointSpec",
    "HermiticityError",
    "InvalidDensityMatrix",
    "KrausSet",
    "MetricParams",
    "MetricProfile",
    "NegativeSqrtArgument",
    "ProfileRecord",
    "ZeroExpectation",
    "ZeroTrace",
    "aligned_env",
    "alignment_unitary",
    "apply_dual_choi",
    "apply_dual_kraus",
    "build_fixed_point_choi",
    "build_profile",
    "check_fixed_point",
    "check_unital",
    "choi_from_kraus",
    "choi_is_psd",
    "dilation_factor",
    "dual_apply_number",
    "eig_hermitian",
    "env_kraus",
    "evolve_linear",
    "evolve_linear_euler",
    "idempotence_residual",
    "is_psd",
    "kraus_from_fixed_point",
    "kron",
    "number_operator",
    "offset_factor",
    "partial_trace_second",
    "phi",
    "positivity_bounds",
    "simulate_charging",
    "swap_unitary",
    "synth_env",
    "unitality_residual",
]
