"""Tests for the PDC source constructors and the alpha-content model."""
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bellbunch.fock import (
    ModeId,
    ZeroStateError,
    apply_to_vacuum,
    inner_product,
    normalize,
    poly_mul,
)
from bellbunch.sources import (
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
    raw_multimode_fourphoton,
    single_pass_state,
    state_from_alpha,
    weights_from_alpha,
)
from bellbunch.transforms import OverlapModel


def test_bell_kind_parse():
    assert BellKind.parse("psi-minus") is BellKind.PSI_MINUS
    assert BellKind.parse("PHI-PLUS") is BellKind.PHI_PLUS
    with pytest.raises(ValueError):
        BellKind.parse("omega")


def test_bell_ladders_are_normalized_pair_creators():
    for kind in BellKind:
        vec = apply_to_vacuum(bell_ladder(kind))
        assert vec.norm() == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_ladder_power_matches_direct_n_pair_state(n):
    """normalize((L+)^n |vac>) equals the closed-form n-pair singlet state."""
    power = bell_ladder(BellKind.PSI_MINUS)
    poly = power
    for _ in range(n - 1):
        poly = poly_mul(poly, power)
    direct = psi_minus_n(n)
    if n == 0:
        assert direct.amplitude(()) == pytest.approx(1.0)
        return
    generated = normalize(apply_to_vacuum(poly))
    overlap = inner_product(direct, generated)
    assert abs(overlap - 1.0) < 1e-12
    for occ, amp in generated.items():
        assert direct.amplitude(occ) == pytest.approx(amp, abs=1e-12)


def test_n_pair_state_photon_count_and_sign_pattern():
    vec = psi_minus_n(2)
    assert vec.photon_numbers() == {4}
    ah, av = ModeId("a", 0, "I"), ModeId("a", 1, "I")
    bh, bv = ModeId("b", 0, "I"), ModeId("b", 1, "I")
    third = 1 / math.sqrt(3.0)
    assert vec.amplitude(((ah, 2), (bv, 2))) == pytest.approx(third)
    assert vec.amplitude(((ah, 1), (av, 1), (bh, 1), (bv, 1))) == pytest.approx(-third)


def test_single_pass_state_weights():
    tau = 0.35
    state = single_pass_state(tau, n_max=3)
    prefactor = 1.0 / math.cosh(tau) ** 2
    for n in range(4):
        overlap = inner_product(psi_minus_n(n), state)
        expected = prefactor * math.sqrt(n + 1) * math.tanh(tau) ** n
        assert overlap == pytest.approx(expected, abs=1e-12)


def test_source_config_validation():
    with pytest.raises(ValueError):
        SourceConfig(n_d=0)
    with pytest.raises(ValueError):
        SourceConfig(n_d=2, weights=(1.0,), phases=(0.0, 0.0))
    with pytest.raises(ValueError):
        SourceConfig(n_d=2, weights=(1.5, 1.0), phases=(0.0, 0.0))
    with pytest.raises(ValueError):
        SourceConfig(n_d=1, pass_ratio=0.0)
    cfg = SourceConfig.equal_weights(3)
    assert cfg.weights == (1.0, 1.0, 1.0)


def test_alpha_model_range():
    with pytest.raises(ValueError):
        AlphaModel(1.5)


@pytest.mark.parametrize("n_d", [1, 2, 3, 4])
def test_fourphoton_intensity_equal_weights(n_d):
    """The raw four-photon norm^2 is (2 n_d + 1) / n_d^3 at equal weights."""
    _, c = multimode_fourphoton(SourceConfig.equal_weights(n_d))
    assert c == pytest.approx((2 * n_d + 1) / n_d**3, rel=1e-12)


@given(st.floats(0.05, 0.95))
def test_fourphoton_intensity_closed_form(asym):
    c1, c2 = 1.0 + asym, 1.0 - asym
    cfg = SourceConfig(n_d=2, weights=(c1, c2), phases=(0.0, 0.0))
    raw = raw_multimode_fourphoton(cfg)
    assert raw.norm_sq() == pytest.approx(fourphoton_intensity(c1, c2), rel=1e-12)


def test_alpha_of_weights_balanced():
    assert alpha_of_weights(1.0, 1.0) == pytest.approx(0.6, abs=1e-13)


def test_alpha_min_closed_form():
    for n_d in range(1, 9):
        assert alpha_min(n_d) == 3.0 / (2 * n_d + 1)


@given(st.floats(0.0, 0.95))
def test_alpha_never_below_two_mode_bound(asym):
    assert alpha_of_weights(1.0 + asym, 1.0 - asym) >= alpha_min(2) - 1e-14


@given(st.floats(0.6, 1.0))
def test_weights_from_alpha_round_trip(alpha):
    c1, c2 = weights_from_alpha(alpha)
    assert (c1 + c2) / 2 == pytest.approx(1.0, abs=1e-12)
    assert alpha_of_weights(c1, c2) == pytest.approx(alpha, abs=1e-9)


def test_weights_from_alpha_rejects_out_of_range():
    with pytest.raises(ValueError):
        weights_from_alpha(0.5)


def test_state_from_alpha_singlet_content():
    """The summed overlap with the per-mode two-pair singlets equals alpha."""
    for alpha in (0.6, 0.75, 0.9):
        state = state_from_alpha(alpha)
        content = sum(
            abs(inner_product(psi_minus_n(2, label=f"I.{j}"), state)) ** 2
            for j in (1, 2)
        )
        assert content == pytest.approx(alpha, abs=1e-9)


def test_p4_scaling_values():
    assert p4_scaling(1) == 0.0
    assert p4_scaling(2) == pytest.approx(1 / 16)
    assert p4_scaling(3) == pytest.approx(2 / 54)
    values = [p4_scaling(n) for n in range(1, 7)]
    assert max(values) == values[1]  # peak at n_d = 2


def test_double_pass_state_is_normalized_four_photon():
    model = OverlapModel(t_c=1.0, omega=0.0)
    state = double_pass_fourphoton(
        BellKind.PSI_MINUS, BellKind.PHI_PLUS, 0.8, model)
    assert state.photon_numbers() == {4}
    assert state.norm() == pytest.approx(1.0, abs=1e-12)
