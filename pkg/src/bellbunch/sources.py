"""Parametric down-conversion source models.

Bell-pair ladder operators, the single-pass squeezed singlet ladder, the
double-pass four-photon state, the multi-mode generalization, and the
closed-form weight/content relations for two-mode sources.

Rates are ratios of small integers; all constructions are exact sparse
algebra in double precision.  Four-fold coincidence rates are computed
from the *unnormalized* four-photon component (per-pump-pulse amplitude
convention), while the state constructors also expose normalized vectors.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .fock import (
    FockVector,
    ModeId,
    OperatorPolynomial,
    ZeroStateError,
    apply_to_vacuum,
    normalize,
)
from .transforms import OverlapModel, decompose_pass_two

PAIR_CAP = 6


class BellKind(Enum):
    PSI_MINUS = "psi-minus"
    PSI_PLUS = "psi-plus"
    PHI_MINUS = "phi-minus"
    PHI_PLUS = "phi-plus"

    @classmethod
    def parse(cls, text: str) -> "BellKind":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(
                f"unknown Bell state {text!r}; expected psi-minus, psi-plus,"
                " phi-minus or phi-plus"
            )

    @property
    def symbol(self) -> str:
        return {
            BellKind.PSI_MINUS: "psi-",
            BellKind.PSI_PLUS: "psi+",
            BellKind.PHI_MINUS: "phi-",
            BellKind.PHI_PLUS: "phi+",
        }[self]


# (a-channel, b-channel, sign) pairs for each Bell creation operator
_BELL_TERMS = {
    BellKind.PSI_MINUS: ((0, 1, 1.0), (1, 0, -1.0)),
    BellKind.PSI_PLUS: ((0, 1, 1.0), (1, 0, 1.0)),
    BellKind.PHI_MINUS: ((0, 0, 1.0), (1, 1, -1.0)),
    BellKind.PHI_PLUS: ((0, 0, 1.0), (1, 1, 1.0)),
}

_INV_SQ2 = 1.0 / math.sqrt(2.0)


def bell_ladder(kind: BellKind, label: str = "I") -> OperatorPolynomial:
    """Two-mode Bell-pair creation operator carrying ``label``."""
    terms = {}
    for chan_a, chan_b, sign in _BELL_TERMS[kind]:
        key = tuple(sorted((ModeId("a", chan_a, label), ModeId("b", chan_b, label))))
        terms[key] = sign * _INV_SQ2
    return OperatorPolynomial(terms)


def psi_minus_n(n: int, label: str = "I") -> FockVector:
    """Normalized n-pair singlet term, built term by term.

    Equals normalize(L^n |vac>) for the singlet ladder L; the two routes are
    cross-checked in the test suite.
    """
    if not 0 <= n <= PAIR_CAP:
        raise ValueError(f"pair count must lie in [0, {PAIR_CAP}]")
    if n == 0:
        return FockVector.vacuum()
    amp = 1.0 / math.sqrt(n + 1)
    amps = {}
    for m in range(n + 1):
        occ = tuple(sorted(
            (ModeId(port, chan, label), count)
            for port, chan, count in (
                ("a", 0, n - m), ("a", 1, m), ("b", 0, m), ("b", 1, n - m))
            if count
        ))
        amps[occ] = amp * (-1) ** m
    return FockVector(amps)


def single_pass_state(tau: float, n_max: int, label: str = "I") -> FockVector:
    """Truncated single-pass PDC state: sum of weighted n-pair singlet terms."""
    if not 0 <= n_max <= PAIR_CAP:
        raise ValueError(f"truncation order must lie in [0, {PAIR_CAP}]")
    prefactor = 1.0 / math.cosh(tau) ** 2
    state = FockVector()
    for n in range(n_max + 1):
        weight = prefactor * math.sqrt(n + 1) * math.tanh(tau) ** n
        state = state + psi_minus_n(n, label).scale(weight)
    return state


@dataclass(frozen=True)
class SourceConfig:
    """Multi-mode PDC source parameters.

    ``weights`` are the per-mode emission weights c_j (mean 1);
    ``phases`` the per-mode phases theta_j.  ``pass_ratio`` is the relative
    amplitude of pass II against pass I in double-pass constructions.
    """

    n_d: int = 1
    tau: float = 0.1
    kappa: float = 1.0
    weights: tuple[float, ...] = (1.0,)
    phases: tuple[float, ...] = (0.0,)
    pass_ratio: float = 1.0

    def __post_init__(self) -> None:
        if self.n_d < 1:
            raise ValueError("mode count must be at least 1")
        if len(self.weights) != self.n_d or len(self.phases) != self.n_d:
            raise ValueError("weights and phases must have one entry per mode")
        if any(c < 0 for c in self.weights):
            raise ValueError("mode weights must be nonnegative")
        if all(c == 0 for c in self.weights):
            raise ValueError("at least one mode weight must be nonzero")
        if abs(sum(self.weights) / self.n_d - 1.0) > 1e-12:
            raise ValueError("mode weights must average to 1")
        if self.pass_ratio <= 0:
            raise ValueError("pass ratio must be positive")

    @classmethod
    def equal_weights(cls, n_d: int, **kwargs) -> "SourceConfig":
        return cls(n_d=n_d, weights=(1.0,) * n_d, phases=(0.0,) * n_d, **kwargs)


@dataclass(frozen=True)
class AlphaModel:
    """Pure two-pair-singlet content of a four-photon state."""

    alpha: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")


def _mode_label(pass_tag: str, j: int, n_d: int) -> str:
    return pass_tag if n_d == 1 else f"{pass_tag}.{j}"


def pass_hamiltonian(kind: BellKind, pass_tag: str, cfg: SourceConfig) -> OperatorPolynomial:
    """Creation part of one pass: (1/n_d) sum_j c_j exp(i theta_j) G_j."""
    out = OperatorPolynomial.zero()
    for j in range(cfg.n_d):
        coeff = cfg.weights[j] * cmath.exp(1j * cfg.phases[j]) / cfg.n_d
        if coeff:
            out = out + bell_ladder(kind, _mode_label(pass_tag, j + 1, cfg.n_d)).scale(coeff)
    return out


def raw_double_pass_fourphoton(
    first: BellKind,
    second: BellKind,
    gamma: float,
    phase: complex,
    cfg: SourceConfig,
) -> FockVector:
    """Unnormalized four-photon component of the delayed double pass.

    Builds (1/2 (H_I + pass_ratio * phase * H_II))^2 |vac> with the pass-II
    operators decomposed against pass I at overlap ``gamma``.  The absolute
    scale is the per-pump-pulse amplitude convention; only ratios are
    physical.
    """
    h_one = pass_hamiltonian(first, "I", cfg)
    h_two = decompose_pass_two(pass_hamiltonian(second, "II", cfg), gamma)
    h = (h_one + h_two.scale(cfg.pass_ratio * phase)).scale(0.5)
    return apply_to_vacuum(h * h)


def double_pass_fourphoton(
    first: BellKind,
    second: BellKind,
    dt: float,
    model: OverlapModel,
    pass_ratio: float = 1.0,
    cfg: SourceConfig | None = None,
) -> FockVector:
    """Normalized four-photon state of the double-pass source at delay ``dt``."""
    if cfg is None:
        cfg = SourceConfig.equal_weights(1, pass_ratio=pass_ratio)
    raw = raw_double_pass_fourphoton(
        first, second, model.gamma(dt), model.pass_phase(dt), cfg)
    if raw.is_zero():
        raise ZeroStateError("double-pass four-photon component vanished")
    return normalize(raw)


def raw_multimode_fourphoton(cfg: SourceConfig,
                             kind: BellKind = BellKind.PSI_MINUS) -> FockVector:
    """Unnormalized single-pass multi-mode four-photon component."""
    h = pass_hamiltonian(kind, "I", cfg)
    return apply_to_vacuum(h * h)


def multimode_fourphoton(cfg: SourceConfig,
                         kind: BellKind = BellKind.PSI_MINUS) -> tuple[FockVector, float]:
    """Normalized multi-mode four-photon state and its intensity C.

    For equal weights C equals (2 n_d + 1) / n_d^3.
    """
    raw = raw_multimode_fourphoton(cfg, kind)
    if raw.is_zero():
        raise ZeroStateError("multi-mode four-photon component vanished")
    c = raw.norm_sq()
    return raw.scale(1.0 / math.sqrt(c)), c


def fourphoton_intensity(c1: float, c2: float) -> float:
    """Normalization C of the two-mode four-photon component: state norm^2
    of (1/2 (c1 L1 + c2 L2))^2 |vac>, in closed form."""
    return (3 * c1**4 + 4 * c1**2 * c2**2 + 3 * c2**4) / 16.0


def alpha_of_weights(c1: float, c2: float) -> float:
    """Two-pair-singlet content of the two-mode source with weights (c1, c2)."""
    if c1 < 0 or c2 < 0:
        raise ValueError("mode weights must be nonnegative")
    if c1 == 0 and c2 == 0:
        raise ValueError("at least one mode weight must be nonzero")
    return 3.0 * (c1**4 + c2**4) / (16.0 * fourphoton_intensity(c1, c2))


def alpha_min(n_d: int) -> float:
    """Lower bound of the two-pair-singlet content for an n_d-mode source."""
    if n_d < 1:
        raise ValueError("mode count must be at least 1")
    return 3.0 / (2 * n_d + 1)


def p4_scaling(n_d: int) -> float:
    """Equal-weight four-fold probability scaling law (n_d - 1) / (2 n_d^3)."""
    if n_d < 1:
        raise ValueError("mode count must be at least 1")
    return (n_d - 1) / (2.0 * n_d**3)


def weights_from_alpha(alpha: float, tol: float = 1e-10) -> tuple[float, float]:
    """Invert alpha_of_weights on mean-1 two-mode weights by bisection.

    Returns (c1, c2) with c1 >= c2 and (c1 + c2)/2 = 1.
    """
    if not alpha_min(2) <= alpha <= 1.0 + 1e-15:
        raise ValueError(f"two-mode content must lie in [{alpha_min(2)}, 1]")
    lo, hi = 0.0, 1.0  # weight asymmetry s: c = (1 + s, 1 - s)
    if alpha_of_weights(1.0, 1.0) >= alpha:
        return 1.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if alpha_of_weights(1.0 + mid, 1.0 - mid) < alpha:
            lo = mid
        else:
            hi = mid
    s = 0.5 * (lo + hi)
    return 1.0 + s, 1.0 - s


def state_from_alpha(alpha: float) -> FockVector:
    """Normalized Eq.-style two-branch four-photon state for given content.

    Realized as the two-mode weighted source whose singlet content equals
    ``alpha``; the branches carry orthogonal internal labels.
    """
    c1, c2 = weights_from_alpha(alpha)
    cfg = SourceConfig(n_d=2, weights=(c1, c2), phases=(0.0, 0.0))
    state, _ = multimode_fourphoton(cfg)
    return state
