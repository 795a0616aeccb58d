"""Bell-state bunching and anti-bunching simulator for double-pass and
multi-mode parametric down-conversion sources."""

from .fock import (
    FockVector,
    ModeId,
    OperatorPolynomial,
    PhotonCapError,
    ZeroStateError,
    apply_to_vacuum,
    fock_to_poly,
    inner_product,
    normalize,
    poly_mul,
)
from .transforms import (
    BasisKind,
    ModeTransform,
    OverlapModel,
    apply_transform,
    apply_transforms,
    basis_transform,
    delay_decompose,
    rotation_transform,
)
from .sources import (
    AlphaModel,
    BellKind,
    SourceConfig,
    alpha_min,
    alpha_of_weights,
    bell_ladder,
    double_pass_fourphoton,
    fourphoton_intensity,
    multimode_fourphoton,
    p4_scaling,
    psi_minus_n,
    single_pass_state,
    state_from_alpha,
    weights_from_alpha,
)
from .detection import (
    BunchClass,
    BunchClassKind,
    NoInterferenceError,
    PhaseMode,
    ScanResult,
    bunching_table,
    classify_pair,
    crossover_alpha,
    delay_scan,
    dip_peak_ratio,
    fourfold_probability,
    modes_scaling_point,
    visibility_scan,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaModel",
    "BasisKind",
    "BellKind",
    "BunchClass",
    "BunchClassKind",
    "FockVector",
    "ModeId",
    "ModeTransform",
    "NoInterferenceError",
    "OperatorPolynomial",
    "OverlapModel",
    "PhaseMode",
    "PhotonCapError",
    "ScanResult",
    "SourceConfig",
    "ZeroStateError",
    "alpha_min",
    "alpha_of_weights",
    "apply_to_vacuum",
    "apply_transform",
    "apply_transforms",
    "basis_transform",
    "bell_ladder",
    "bunching_table",
    "classify_pair",
    "crossover_alpha",
    "delay_decompose",
    "delay_scan",
    "dip_peak_ratio",
    "double_pass_fourphoton",
    "fock_to_poly",
    "fourfold_probability",
    "fourphoton_intensity",
    "inner_product",
    "modes_scaling_point",
    "multimode_fourphoton",
    "normalize",
    "p4_scaling",
    "poly_mul",
    "psi_minus_n",
    "rotation_transform",
    "single_pass_state",
    "state_from_alpha",
    "visibility_scan",
    "weights_from_alpha",
]
