"""Sparse exact algebra of commuting bosonic creation operators.

Operators are complex-weighted sums of creation-operator monomials over
labeled modes; states are sparse maps from occupation-number vectors to
complex amplitudes.  All values are immutable after construction and may
be shared freely across threads.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import groupby
from typing import Iterable, Iterator, Mapping, Sequence, Tuple

COEFF_TOL = 1e-12
MAX_DEGREE = 12

SPATIAL_PORTS = ("a", "b")

# channel letters per polarization basis, index = channel
CHANNEL_LETTERS = {"hv": "hv", "pm": "pm", "rl": "rl"}


class PhotonCapError(ValueError):
    """Monomial degree exceeded the supported photon-number cap."""


class ZeroStateError(ValueError):
    """Operation undefined on a (numerically) zero state."""


@dataclass(frozen=True, order=True)
class ModeId:
    """A single bosonic mode: spatial port x polarization channel x tag.

    ``pol`` is a channel index (0 or 1) whose physical meaning is fixed by
    the active polarization basis.  ``label`` is a distinguishability tag
    ("I", "II", "I.2", "perp1", ...); distinct labels are orthogonal modes.
    The dataclass ordering (spatial, pol, label) is the canonical mode order.
    """

    spatial: str
    pol: int
    label: str

    def __post_init__(self) -> None:
        if self.spatial not in SPATIAL_PORTS:
            raise ValueError(f"spatial port must be one of {SPATIAL_PORTS}")
        if self.pol not in (0, 1):
            raise ValueError("polarization channel must be 0 or 1")

    def mode_string(self, letters: str = "hv") -> str:
        return f"{self.spatial}_{letters[self.pol]}:{self.label}"

    @classmethod
    def from_string(cls, text: str, letters: str = "hv") -> "ModeId":
        head, _, label = text.partition(":")
        spatial, _, chan = head.partition("_")
        return cls(spatial, letters.index(chan), label)


Monomial = Tuple[ModeId, ...]          # sorted multiset of modes
Occupation = Tuple[Tuple[ModeId, int], ...]  # sorted (mode, count) pairs


def _as_monomial(modes: Iterable[ModeId]) -> Monomial:
    key = tuple(sorted(modes))
    if len(key) > MAX_DEGREE:
        raise PhotonCapError(f"monomial degree {len(key)} exceeds cap {MAX_DEGREE}")
    return key


class OperatorPolynomial:
    """Canonical complex-weighted sum of commuting creation-operator monomials."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, complex] | None = None):
        pruned = {}
        if terms:
            for key, coeff in terms.items():
                if abs(coeff) >= COEFF_TOL:
                    pruned[key] = complex(coeff)
        self._terms = pruned

    @classmethod
    def zero(cls) -> "OperatorPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "OperatorPolynomial":
        return cls({(): 1.0})

    @classmethod
    def op(cls, mode: ModeId, coeff: complex = 1.0) -> "OperatorPolynomial":
        return cls({(mode,): coeff})

    @classmethod
    def monomial(cls, modes: Iterable[ModeId], coeff: complex = 1.0) -> "OperatorPolynomial":
        return cls({_as_monomial(modes): coeff})

    def terms(self) -> Iterator[Tuple[Monomial, complex]]:
        return iter(sorted(self._terms.items()))

    def coefficient(self, modes: Iterable[ModeId]) -> complex:
        return self._terms.get(tuple(sorted(modes)), 0.0)

    @property
    def degree(self) -> int:
        return max((len(k) for k in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "OperatorPolynomial") -> "OperatorPolynomial":
        merged = dict(self._terms)
        for key, coeff in other._terms.items():
            merged[key] = merged.get(key, 0.0) + coeff
        return OperatorPolynomial(merged)

    def __sub__(self, other: "OperatorPolynomial") -> "OperatorPolynomial":
        return self + other.scale(-1.0)

    def scale(self, factor: complex) -> "OperatorPolynomial":
        return OperatorPolynomial({k: c * factor for k, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, OperatorPolynomial):
            return poly_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def substitute(self, mapping) -> "OperatorPolynomial":
        """Replace single creation operators by linear combinations.

        ``mapping(mode)`` returns either None (keep the operator) or a list
        of (coefficient, mode) pairs.  The substitution distributes over
        products, which is exact for commuting operators.
        """
        out = OperatorPolynomial.zero()
        for key, coeff in self._terms.items():
            factor = OperatorPolynomial({(): coeff})
            for mode in key:
                image = mapping(mode)
                if image is None:
                    factor = factor * OperatorPolynomial.op(mode)
                else:
                    replacement = OperatorPolynomial(
                        {(m,): c for c, m in _merge_images(image)}
                    )
                    factor = factor * replacement
            out = out + factor
        return out

    def __repr__(self) -> str:
        parts = [f"{c:+.4g}*{'*'.join(m.mode_string() for m in k) or '1'}"
                 for k, c in self.terms()]
        return f"OperatorPolynomial({' '.join(parts) or '0'})"


def _merge_images(image):
    acc: dict[ModeId, complex] = {}
    for coeff, mode in image:
        acc[mode] = acc.get(mode, 0.0) + coeff
    return [(c, m) for m, c in acc.items()]


def poly_mul(p: OperatorPolynomial, q: OperatorPolynomial) -> OperatorPolynomial:
    """Distributive product of creation-operator polynomials (commutative)."""
    out: dict[Monomial, complex] = {}
    for kp, cp in p._terms.items():
        for kq, cq in q._terms.items():
            key = _as_monomial(kp + kq)
            out[key] = out.get(key, 0.0) + cp * cq
    return OperatorPolynomial(out)


class FockVector:
    """Sparse map from occupation-number vectors to complex amplitudes."""

    __slots__ = ("_amps",)

    def __init__(self, amplitudes: Mapping[Occupation, complex] | None = None):
        pruned = {}
        if amplitudes:
            for occ, amp in amplitudes.items():
                if abs(amp) >= COEFF_TOL:
                    pruned[occ] = complex(amp)
        self._amps = pruned

    @classmethod
    def vacuum(cls) -> "FockVector":
        return cls({(): 1.0})

    def items(self) -> Iterator[Tuple[Occupation, complex]]:
        return iter(sorted(self._amps.items()))

    def amplitude(self, occupation: Occupation) -> complex:
        return self._amps.get(tuple(sorted(occupation)), 0.0)

    def is_zero(self) -> bool:
        return not self._amps

    def photon_numbers(self) -> set[int]:
        return {sum(n for _, n in occ) for occ in self._amps}

    def __add__(self, other: "FockVector") -> "FockVector":
        merged = dict(self._amps)
        for occ, amp in other._amps.items():
            merged[occ] = merged.get(occ, 0.0) + amp
        return FockVector(merged)

    def scale(self, factor: complex) -> "FockVector":
        return FockVector({k: a * factor for k, a in self._amps.items()})

    def norm_sq(self) -> float:
        return sum(abs(a) ** 2 for a in self._amps.values())

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    def to_records(self, letters_a: str = "hv", letters_b: str = "hv") -> list[dict]:
        records = []
        for occ, amp in self.items():
            modes = [
                [m.mode_string(letters_a if m.spatial == "a" else letters_b), n]
                for m, n in occ
            ]
            records.append({"occupation": modes, "re": amp.real, "im": amp.imag})
        return records

    def to_json(self, letters_a: str = "hv", letters_b: str = "hv") -> str:
        return json.dumps(self.to_records(letters_a, letters_b))

    @classmethod
    def from_records(cls, records: Sequence[dict],
                     letters_a: str = "hv", letters_b: str = "hv") -> "FockVector":
        amps: dict[Occupation, complex] = {}
        for rec in records:
            occ = tuple(sorted(
                (ModeId.from_string(s, letters_a if s.startswith("a") else letters_b), n)
                for s, n in rec["occupation"]
            ))
            amps[occ] = complex(rec["re"], rec["im"])
        return cls(amps)

    def __repr__(self) -> str:
        parts = [f"{a:+.4g}*|{','.join(f'{m.mode_string()}^{n}' for m, n in occ)}>"
                 for occ, a in self.items()]
        return f"FockVector({' '.join(parts) or '0'})"


def apply_to_vacuum(p: OperatorPolynomial) -> FockVector:
    """Apply a creation-operator polynomial to the vacuum.

    A monomial with occupation counts {n_i} contributes coeff * prod sqrt(n_i!)
    on that occupation vector.  The result is not normalized.
    """
    amps: dict[Occupation, complex] = {}
    for key, coeff in p._terms.items():
        occ = tuple((mode, len(list(grp))) for mode, grp in groupby(key))
        weight = math.prod(math.sqrt(math.factorial(n)) for _, n in occ)
        amps[occ] = amps.get(occ, 0.0) + coeff * weight
    return FockVector(amps)


def fock_to_poly(v: FockVector) -> OperatorPolynomial:
    """Inverse of :func:`apply_to_vacuum` on its image."""
    terms: dict[Monomial, complex] = {}
    for occ, amp in v._amps.items():
        modes: list[ModeId] = []
        weight = 1.0
        for mode, n in occ:
            modes.extend([mode] * n)
            weight *= math.sqrt(math.factorial(n))
        terms[_as_monomial(modes)] = amp / weight
    return OperatorPolynomial(terms)


def inner_product(u: FockVector, v: FockVector) -> complex:
    """<u|v> over the orthonormal occupation basis, conjugate-linear in u."""
    if len(u._amps) > len(v._amps):
        return inner_product(v, u).conjugate()
    return sum(a.conjugate() * v._amps.get(occ, 0.0) for occ, a in u._amps.items())


def normalize(v: FockVector) -> FockVector:
    nrm = v.norm()
    if nrm < COEFF_TOL:
        raise ZeroStateError("cannot normalize a zero state")
    return v.scale(1.0 / nrm)
