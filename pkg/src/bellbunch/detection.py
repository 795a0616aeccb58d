"""Label-blind four-fold coincidence detection and derived scans.

Detection projects onto exactly one photon in each of the four spatial-
polarization channels, summing incoherently over distinguishability
labels.  Four-photon amplitudes of the double-pass source are quadratic
in the pass phase factor, so coherent values, uniform phase averages and
oscillation envelopes are all evaluated analytically from the three
phase-harmonic components of the state.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .fock import FockVector, apply_to_vacuum, fock_to_poly
from .sources import (
    AlphaModel,
    BellKind,
    SourceConfig,
    alpha_min,
    multimode_fourphoton,
    pass_hamiltonian,
    raw_multimode_fourphoton,
    state_from_alpha,
    weights_from_alpha,
)
from .transforms import (
    BasisKind,
    ModeTransform,
    OverlapModel,
    apply_transforms,
    basis_transform,
    decompose_pass_two,
    rotation_transform,
)

RATIO_TIE_TOL = 1e-6

KIND_ORDER = (BellKind.PSI_MINUS, BellKind.PSI_PLUS, BellKind.PHI_MINUS, BellKind.PHI_PLUS)

_CHANNELS = (("a", 0), ("a", 1), ("b", 0), ("b", 1))


class PhaseMode(Enum):
    COHERENT = "coherent"
    AVERAGED = "averaged"

    @classmethod
    def parse(cls, text: str) -> "PhaseMode":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown phase mode {text!r}; expected coherent or averaged")


class NoInterferenceError(RuntimeError):
    """Four-fold rates at zero and infinite delay coincide; no class assignable."""


class BunchClassKind(Enum):
    BUNCHING = "B"
    ANTI_BUNCHING = "A"


@dataclass(frozen=True)
class BunchClass:
    kind: BunchClassKind
    ratio: float


@dataclass(frozen=True)
class ScanResult:
    """Grid of control values with four-fold probabilities and metadata."""

    control: tuple[float, ...]
    probability: tuple[float, ...]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(self.control) != len(self.probability):
            raise ValueError("control and probability grids must align")
        if any(b <= a for a, b in zip(self.control, self.control[1:])):
            raise ValueError("control grid must be strictly increasing")
        if any(p < -1e-15 for p in self.probability):
            raise ValueError("probabilities must be nonnegative")

    def to_csv(self, control_name: str = "control") -> str:
        lines = [f"{control_name},probability"]
        lines += [f"{c:.12g},{p:.12g}" for c, p in zip(self.control, self.probability)]
        return "\n".join(lines) + "\n"


def _channel_counts(occupation):
    counts = dict.fromkeys(_CHANNELS, 0)
    for mode, n in occupation:
        counts[(mode.spatial, mode.pol)] += n
    return counts


def rotated_state(state: FockVector, *transforms: ModeTransform) -> FockVector:
    return apply_to_vacuum(apply_transforms(fock_to_poly(state), *transforms))


def fourfold_probability(state: FockVector, basis_a: BasisKind, basis_b: BasisKind) -> float:
    """Probability weight of one photon in each detector channel.

    Ports are rotated from hv into (basis_a, basis_b); the sum over
    occupation vectors is incoherent in the distinguishability labels.
    The input need not be normalized; the returned weight is in the same
    units as the squared input amplitudes.
    """
    numbers = state.photon_numbers()
    if numbers - {4}:
        raise ValueError("detection requires a pure four-photon component")
    rotated = rotated_state(
        state,
        basis_transform(BasisKind.HV, basis_a, "a"),
        basis_transform(BasisKind.HV, basis_b, "b"),
    )
    total = 0.0
    for occ, amp in rotated.items():
        if all(c == 1 for c in _channel_counts(occ).values()):
            total += abs(amp) ** 2
    return total


class PhaseProfile:
    """Four-fold weight of the delayed double pass versus the pass phase.

    The raw four-photon component is (1/4)(H_I + r x H_II)^2 |vac> with
    x the pass phase factor, so every four-fold amplitude is
    A0 + A1 x + A2 x^2.  The per-occupation harmonic triples give the
    coherent value, the exact uniform-phase mean, and an envelope bound.
    """

    def __init__(
        self,
        first: BellKind,
        second: BellKind,
        basis_a: BasisKind,
        basis_b: BasisKind,
        gamma: float,
        cfg: SourceConfig,
    ):
        h_one = pass_hamiltonian(first, "I", cfg).scale(0.5)
        h_two = decompose_pass_two(pass_hamiltonian(second, "II", cfg), gamma)
        h_two = h_two.scale(0.5 * cfg.pass_ratio)
        components = (h_one * h_one, (h_one * h_two).scale(2.0), h_two * h_two)
        rotations = (
            basis_transform(BasisKind.HV, basis_a, "a"),
            basis_transform(BasisKind.HV, basis_b, "b"),
        )
        triples: dict[tuple, list[complex]] = {}
        for k, poly in enumerate(components):
            vec = apply_to_vacuum(apply_transforms(poly, *rotations))
            for occ, amp in vec.items():
                if all(c == 1 for c in _channel_counts(occ).values()):
                    triples.setdefault(occ, [0.0, 0.0, 0.0])[k] = amp
        self._triples = tuple(tuple(t) for t in triples.values())

    def coherent(self, phase: complex) -> float:
        return sum(
            abs(a0 + a1 * phase + a2 * phase * phase) ** 2
            for a0, a1, a2 in self._triples
        )

    def averaged(self) -> float:
        """Exact mean over the pass phase uniform on [0, 2pi)."""
        return sum(
            abs(a0) ** 2 + abs(a1) ** 2 + abs(a2) ** 2
            for a0, a1, a2 in self._triples
        )

    def envelope_bound(self) -> float:
        """Upper bound on the coherent value over all pass phases."""
        h1 = sum(a1 * a0.conjugate() + a2 * a1.conjugate()
                 for a0, a1, a2 in self._triples)
        h2 = sum(a2 * a0.conjugate() for a0, a1, a2 in self._triples)
        return self.averaged() + 2.0 * abs(h1) + 2.0 * abs(h2)


def averaged_fourfold(
    first: BellKind,
    second: BellKind,
    basis_a: BasisKind,
    basis_b: BasisKind,
    gamma: float,
    cfg: SourceConfig,
) -> float:
    """Mean four-fold weight over the pass phase (exact)."""
    return PhaseProfile(first, second, basis_a, basis_b, gamma, cfg).averaged()


def delay_scan(
    first: BellKind,
    second: BellKind,
    basis_a: BasisKind,
    basis_b: BasisKind,
    grid: Sequence[float],
    model: OverlapModel,
    phase_mode: PhaseMode = PhaseMode.AVERAGED,
    cfg: SourceConfig | None = None,
) -> ScanResult:
    """Four-fold weight versus inter-pass delay.

    The metadata carries the fully-distinguishable reference computed at
    gamma = 0 exactly (phase independent there), for normalizing to the
    large-delay plateau.
    """
    if not grid:
        raise ValueError("delay grid must be nonempty")
    if cfg is None:
        cfg = SourceConfig.equal_weights(1)

    def point(dt: float) -> float:
        profile = PhaseProfile(first, second, basis_a, basis_b, model.gamma(dt), cfg)
        if phase_mode is PhaseMode.COHERENT:
            return profile.coherent(model.pass_phase(dt))
        return profile.averaged()

    values = tuple(point(dt) for dt in grid)
    reference = averaged_fourfold(first, second, basis_a, basis_b, 0.0, cfg)
    return ScanResult(
        control=tuple(grid),
        probability=values,
        metadata={
            "first": first.value,
            "second": second.value,
            "basis_a": basis_a.value,
            "basis_b": basis_b.value,
            "phase_mode": phase_mode.value,
            "t_c": model.t_c,
            "omega": model.omega,
            "n_d": cfg.n_d,
            "weights": list(cfg.weights),
            "pass_ratio": cfg.pass_ratio,
            "reference": reference,
        },
    )


def classify_pair(
    first: BellKind,
    second: BellKind,
    basis_a: BasisKind,
    basis_b: BasisKind,
) -> BunchClass:
    """Bunching/anti-bunching class from the zero-delay vs plateau ratio.

    Uses the ideal single-mode-per-pass source with balanced passes.
    """
    cfg = SourceConfig.equal_weights(1)
    at_zero = averaged_fourfold(first, second, basis_a, basis_b, 1.0, cfg)
    plateau = averaged_fourfold(first, second, basis_a, basis_b, 0.0, cfg)
    if plateau <= 0.0:
        raise NoInterferenceError(
            f"vanishing plateau rate for {first.value}/{second.value}"
            f" at ({basis_a.value},{basis_b.value})")
    ratio = at_zero / plateau
    if abs(ratio - 1.0) < RATIO_TIE_TOL:
        raise NoInterferenceError(
            f"no interference for {first.value}/{second.value}"
            f" at ({basis_a.value},{basis_b.value}): ratio {ratio}")
    kind = BunchClassKind.ANTI_BUNCHING if ratio > 1.0 else BunchClassKind.BUNCHING
    return BunchClass(kind, ratio)


def bunching_table(basis_a: BasisKind, basis_b: BasisKind) -> list[list[BunchClass]]:
    """4x4 classification grid in the order psi-, psi+, phi-, phi+."""
    return [[classify_pair(row, col, basis_a, basis_b) for col in KIND_ORDER]
            for row in KIND_ORDER]


def visibility_scan(
    source: SourceConfig | AlphaModel,
    angle_grid: Sequence[float],
) -> tuple[ScanResult, float]:
    """Four-fold rate versus rotation of port b between hv and pm.

    Visibility is the endpoint contrast (R(0) - R(pi/4)) / (R(0) + R(pi/4));
    the grid must span [0, pi/4].
    """
    if not angle_grid:
        raise ValueError("angle grid must be nonempty")
    if abs(angle_grid[0]) > 1e-12 or abs(angle_grid[-1] - math.pi / 4) > 1e-12:
        raise ValueError("angle grid must span [0, pi/4]")
    if isinstance(source, AlphaModel):
        state = state_from_alpha(source.alpha)
        meta_source = {"alpha": source.alpha}
    else:
        state, _ = multimode_fourphoton(source)
        meta_source = {"n_d": source.n_d, "weights": list(source.weights)}

    def rate(angle: float) -> float:
        rotated = rotated_state(state, rotation_transform("b", angle))
        return fourfold_probability(rotated, BasisKind.HV, BasisKind.HV)

    values = tuple(rate(t) for t in angle_grid)
    r_same, r_orth = values[0], values[-1]
    visibility = (r_same - r_orth) / (r_same + r_orth)
    result = ScanResult(
        control=tuple(angle_grid),
        probability=values,
        metadata={"visibility": visibility, **meta_source},
    )
    return result, visibility


def modes_scaling_point(n_d: int, basis_a: BasisKind, basis_b: BasisKind) -> float:
    """Equal-weight four-fold weight of the n_d-mode single-pass source.

    In the per-pump-pulse units of the raw state this follows the
    (n_d - 1) / (2 n_d^3) scaling law.
    """
    return fourfold_probability(
        raw_multimode_fourphoton(SourceConfig.equal_weights(n_d)),
        basis_a, basis_b)


def dip_peak_ratio(alpha: float, basis_a: BasisKind, basis_b: BasisKind) -> float:
    """P4(0) / P4(infinity) of the phase-averaged two-mode-per-pass source."""
    c1, c2 = weights_from_alpha(alpha)
    cfg = SourceConfig(n_d=2, weights=(c1, c2), phases=(0.0, 0.0))
    at_zero = averaged_fourfold(
        BellKind.PSI_MINUS, BellKind.PSI_MINUS, basis_a, basis_b, 1.0, cfg)
    plateau = averaged_fourfold(
        BellKind.PSI_MINUS, BellKind.PSI_MINUS, basis_a, basis_b, 0.0, cfg)
    return at_zero / plateau


def crossover_alpha(
    basis_a: BasisKind,
    basis_b: BasisKind,
    tol: float = 1e-4,
) -> float:
    """Singlet content where the phase-averaged delay curve flips dip/peak.

    Bisection on alpha for the root of P4(0) - P4(infinity) of the
    two-mode-per-pass model.
    """
    lo, hi = alpha_min(2), 1.0
    f_lo = dip_peak_ratio(lo, basis_a, basis_b) - 1.0
    f_hi = dip_peak_ratio(hi, basis_a, basis_b) - 1.0
    if abs(f_lo) < RATIO_TIE_TOL or abs(f_hi) < RATIO_TIE_TOL or f_lo * f_hi > 0.0:
        raise NoInterferenceError(
            "no dip/peak sign change on the admissible content range")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if (dip_peak_ratio(mid, basis_a, basis_b) - 1.0) * f_lo > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
