"""Brute-force reference implementations for cross-checking.

Everything here works on dense integer-indexed occupations and explicit
exponential expansion — deliberately sharing no algebra code with the
package. Slow but transparent.
"""
from __future__ import annotations

import itertools
import math

SQ2 = math.sqrt(2.0)

# substitution rows expressing hv creation operators in the target basis:
# row c gives the coefficients of the target-channel operators in the image
# of the old channel-c operator (h = (p+m)/sqrt2, h = (r+l)/sqrt2, ...)
BASIS_ROWS = {
    "hv": [[1.0, 0.0], [0.0, 1.0]],
    "pm": [[1 / SQ2, 1 / SQ2], [1 / SQ2, -1 / SQ2]],
    "rl": [[1 / SQ2, 1 / SQ2], [-1j / SQ2, 1j / SQ2]],
}


def poly_mul(p: dict, q: dict) -> dict:
    """Convolution product of {sorted-index-tuple: coeff} operator dicts."""
    out: dict = {}
    for mp, cp in p.items():
        for mq, cq in q.items():
            key = tuple(sorted(mp + mq))
            out[key] = out.get(key, 0.0) + cp * cq
    return out


def to_vacuum(p: dict) -> dict:
    """Occupation amplitudes of p|vac>: coeff times prod sqrt(n_i!)."""
    out: dict = {}
    for modes, coeff in p.items():
        counts: dict = {}
        for m in modes:
            counts[m] = counts.get(m, 0) + 1
        occ = tuple(sorted(counts.items()))
        weight = 1.0
        for _, n in counts.items():
            weight *= math.sqrt(math.factorial(n))
        out[occ] = out.get(occ, 0.0) + coeff * weight
    return {k: v for k, v in out.items() if abs(v) > 1e-14}


def apply_unitary(dense: dict, v_rows: dict) -> dict:
    """Rewrite each photon via its substitution row and recollect.

    ``dense`` maps occupations (tuples of (mode, count) with opaque
    hashable modes) to amplitudes; ``v_rows`` maps a mode to a list of
    (image_mode, coefficient) pairs (identity for missing modes).
    """
    out: dict = {}
    for occ, amp in dense.items():
        photons = [m for m, n in occ for _ in range(n)]
        norm_in = 1.0
        for _, n in occ:
            norm_in *= math.sqrt(math.factorial(n))
        rows = [v_rows.get(m, [(m, 1.0)]) for m in photons]
        for choice in itertools.product(*rows):
            coeff = amp / norm_in
            counts: dict = {}
            for mode, c in choice:
                coeff *= c
                counts[mode] = counts.get(mode, 0) + 1
            if abs(coeff) < 1e-16:
                continue
            new_occ = tuple(sorted(counts.items()))
            weight = 1.0
            for _, n in counts.items():
                weight *= math.sqrt(math.factorial(n))
            out[new_occ] = out.get(new_occ, 0.0) + coeff * weight
    return {k: v for k, v in out.items() if abs(v) > 1e-14}


def fourfold(dense: dict, channel_of) -> float:
    """Sum of |amp|^2 over occupations with one photon per channel."""
    total = 0.0
    for occ, amp in dense.items():
        counts: dict = {}
        for mode, n in occ:
            ch = channel_of(mode)
            counts[ch] = counts.get(ch, 0) + n
        if len(counts) == 4 and all(n == 1 for n in counts.values()):
            total += abs(amp) ** 2
    return total


# ---------------------------------------------------------------------------
# reference physics: delayed double-pass singlet source, one mode per pass
# ---------------------------------------------------------------------------

def singlet_pair(label: str) -> dict:
    """(a_h b_v - a_v b_h)/sqrt2 over ("port", channel, label) modes."""
    ah = ("a", 0, label)
    av = ("a", 1, label)
    bh = ("b", 0, label)
    bv = ("b", 1, label)
    return {
        tuple(sorted((ah, bv))): 1 / SQ2,
        tuple(sorted((av, bh))): -1 / SQ2,
    }


def scale(p: dict, c: complex) -> dict:
    return {k: v * c for k, v in p.items()}


def add(p: dict, q: dict) -> dict:
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0.0) + v
    return out


def delayed_pass_two(gamma: float) -> dict:
    """Pass-II singlet decomposed photon-by-photon against pass I."""
    out: dict = {}
    for modes, coeff in singlet_pair("II").items():
        expanded = {(): coeff}
        for port, ch, _ in modes:
            split = {
                (port, ch, "I"): gamma,
                (port, ch, "perp1"): math.sqrt(max(0.0, 1 - gamma * gamma)),
            }
            nxt: dict = {}
            for partial, c0 in expanded.items():
                for mode, c1 in split.items():
                    key = tuple(sorted(partial + (mode,)))
                    nxt[key] = nxt.get(key, 0.0) + c0 * c1
            expanded = nxt
        for k, v in expanded.items():
            out[k] = out.get(k, 0.0) + v
    return out


def port_basis_rows(basis_a: str, basis_b: str, modes) -> dict:
    """Substitution rows moving port a into basis_a and b into basis_b."""
    rows = {}
    for mode in modes:
        port, ch, label = mode
        block = BASIS_ROWS[basis_a if port == "a" else basis_b]
        rows[mode] = [((port, k, label), block[ch][k]) for k in range(2)]
    return rows


def averaged_dip_point(gamma: float, basis_a: str = "hv", basis_b: str = "pm",
                       n_phase: int = 8) -> float:
    """Phase-averaged four-fold weight of the delayed double-pass singlet.

    Quadrature over n_phase uniform pass phases (exact for the degree-2
    trigonometric polynomial arising here).
    """
    h_one = singlet_pair("I")
    h_two = delayed_pass_two(gamma)
    total = 0.0
    for k in range(n_phase):
        phase = complex(math.cos(2 * math.pi * k / n_phase),
                        math.sin(2 * math.pi * k / n_phase))
        h = scale(add(h_one, scale(h_two, phase)), 0.5)
        state = to_vacuum(poly_mul(h, h))
        modes = {m for occ in state for m, _ in occ}
        rotated = apply_unitary(state, port_basis_rows(basis_a, basis_b, modes))
        total += fourfold(rotated, lambda m: (m[0], m[1]))
    return total / n_phase
