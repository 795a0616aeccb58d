"""Polarization-basis unitaries and temporal-delay mode decomposition.

Basis changes and delay decompositions act on operator polynomials by
linear substitution of creation operators; both are isometries of the
generated Fock vectors.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .fock import ModeId, OperatorPolynomial

_SQ2 = math.sqrt(2.0)

UNITARITY_TOL = 1e-12


class BasisKind(Enum):
    HV = "hv"
    PM = "pm"
    RL = "rl"

    @classmethod
    def parse(cls, text: str) -> "BasisKind":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown polarization basis {text!r}; expected hv, pm or rl")

    @property
    def letters(self) -> str:
        return self.value


# columns express the basis kets in the hv basis; rl uses
# r = (h + iv)/sqrt(2), l = (h - iv)/sqrt(2)
_BASIS_KETS = {
    BasisKind.HV: np.eye(2, dtype=complex),
    BasisKind.PM: np.array([[1, 1], [1, -1]], dtype=complex) / _SQ2,
    BasisKind.RL: np.array([[1, 1], [1j, -1j]], dtype=complex) / _SQ2,
}


@dataclass(frozen=True)
class ModeTransform:
    """Unitary substitution of creation operators on one spatial port.

    ``matrix[c, k]`` is the coefficient of the new channel-k operator in
    the image of the old channel-c operator; labels are untouched.
    """

    port: str
    matrix: np.ndarray

    def __post_init__(self) -> None:
        u = np.asarray(self.matrix, dtype=complex)
        if u.shape != (2, 2):
            raise ValueError("mode transform must be a 2x2 matrix")
        if np.max(np.abs(u.conj().T @ u - np.eye(2))) > 1e-10:
            raise ValueError("mode transform must be unitary")
        object.__setattr__(self, "matrix", u)


def basis_transform(frm: BasisKind, to: BasisKind, port: str) -> ModeTransform:
    """Substitution rewriting ``frm``-basis creation operators in the ``to`` basis."""
    b_from = _BASIS_KETS[frm]
    b_to = _BASIS_KETS[to]
    return ModeTransform(port, b_from.T @ b_to.conj())


def rotation_transform(port: str, angle: float) -> ModeTransform:
    """Linear-polarization rotation by ``angle``; pi/4 maps hv onto pm."""
    c, s = math.cos(angle), math.sin(angle)
    return ModeTransform(port, np.array([[c, -s], [s, c]]))


def apply_transform(p: OperatorPolynomial, t: ModeTransform) -> OperatorPolynomial:
    def image(mode: ModeId):
        if mode.spatial != t.port:
            return None
        row = t.matrix[mode.pol]
        return [(row[k], ModeId(mode.spatial, k, mode.label)) for k in (0, 1)
                if abs(row[k]) > 0.0]

    return p.substitute(image)


def apply_transforms(p: OperatorPolynomial, *transforms: ModeTransform) -> OperatorPolynomial:
    for t in transforms:
        p = apply_transform(p, t)
    return p


@dataclass(frozen=True)
class OverlapModel:
    """Gaussian temporal overlap between the two pump passes.

    gamma(dt) = exp(-dt^2 / (2 t_c^2)); omega is the pump angular frequency
    entering the pass phase exp(i omega dt).
    """

    t_c: float = 1.0
    omega: float = 0.0

    def __post_init__(self) -> None:
        if self.t_c <= 0:
            raise ValueError("coherence time must be positive")

    def gamma(self, dt: float) -> float:
        return math.exp(-(dt * dt) / (2.0 * self.t_c * self.t_c))

    def pass_phase(self, dt: float) -> complex:
        return cmath.exp(1j * self.omega * dt)


def _perp_label(label: str) -> str:
    # "II" -> "perp1", "II.j" -> "perp{j}"; deterministic per original label
    _, _, suffix = label.partition(".")
    return f"perp{suffix or '1'}"


def _same_pass_label(label: str) -> str:
    _, _, suffix = label.partition(".")
    return f"I.{suffix}" if suffix else "I"


def decompose_pass_two(p: OperatorPolynomial, gamma: float) -> OperatorPolynomial:
    """Rewrite pass-II operators as gamma * pass-I + sqrt(1-gamma^2) * orthogonal.

    The substitution is an isometry for any gamma in [0, 1]; operators whose
    labels do not start with "II" are left untouched.
    """
    if not 0.0 <= gamma <= 1.0:
        raise ValueError("overlap gamma must lie in [0, 1]")
    delta = math.sqrt(max(0.0, 1.0 - gamma * gamma))

    def image(mode: ModeId):
        if not mode.label.startswith("II"):
            return None
        parts = []
        if gamma:
            parts.append((gamma, ModeId(mode.spatial, mode.pol, _same_pass_label(mode.label))))
        if delta:
            parts.append((delta, ModeId(mode.spatial, mode.pol, _perp_label(mode.label))))
        return parts

    return p.substitute(image)


def delay_decompose(p: OperatorPolynomial, model: OverlapModel,
                    dt: float) -> tuple[OperatorPolynomial, complex]:
    """Temporal-delay decomposition of pass-II operators.

    Returns the rewritten polynomial together with the pass phase factor
    exp(i omega dt), which the caller applies (or averages over) separately.
    """
    return decompose_pass_two(p, model.gamma(dt)), model.pass_phase(dt)
