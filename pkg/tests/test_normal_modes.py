import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coupledsta.errors import ImaginaryFrequencyError
from coupledsta.normal_modes import (
    OMEGA_FORM,
    DimerParams,
    MFParams,
    PPParams,
    block_frequencies,
    diagonalize_squeezed,
    dimer_ground_energies,
    dimer_normal_modes,
    dimer_squeeze_rates,
    mf_hamiltonian_form,
    mf_normal_frequencies,
    mf_transform,
    normal_form,
    pp_hamiltonian_form,
    pp_normal_frequencies,
    pp_transform,
)
from coupledsta.schedules import Schedule

C = Schedule.constant


def ramp_through(value, deriv, t=1.0):
    """Linear ramp taking ``value`` with slope ``deriv`` at time ``t`` (tau_q = 2t)."""
    return Schedule.linear(value - deriv * t, value + deriv * t, 2 * t)


def test_pp_uncoupled_frequencies_match():
    p = PPParams(1.0, ramp_through(1.0, 0.1), C(0.0))
    w1, w1d, w2, w2d = pp_normal_frequencies(p, 1.0)
    assert (w1, w2) == pytest.approx((1.0, 1.0))
    assert (w1d, w2d) == pytest.approx((0.1, 0.1))


def test_pp_static_frequencies():
    out = pp_normal_frequencies(PPParams(1.0, C(1.0), C(0.5)), 0.0)
    assert out == pytest.approx((1.224745, 0.0, 0.707107, 0.0), abs=1e-6)


def test_pp_frequency_rates():
    p = PPParams(1.0, ramp_through(1.0, 0.1), C(0.5))
    _, w1d, _, w2d = pp_normal_frequencies(p, 1.0)
    assert w1d == pytest.approx(0.1 / math.sqrt(1.5), abs=1e-12)
    assert w1d == pytest.approx(0.0816497, abs=1e-7)
    assert w2d == pytest.approx(0.1414214, abs=1e-7)


def test_pp_imaginary_frequency_rejected():
    with pytest.raises(ImaginaryFrequencyError):
        PPParams(1.0, C(1.0), C(1.0))


def test_pp_transform_maps_symmetric_input_to_mode_one():
    np.testing.assert_allclose(pp_transform().apply([1, 0, 1, 0]), [math.sqrt(2), 0, 0, 0], atol=1e-15)


def test_pp_transform_is_symplectic():
    assert pp_transform().symplectic_defect() <= 1e-12


def test_pp_conjugation_decouples():
    p = PPParams(1.0, C(1.0), C(0.5))
    k = pp_transform().conjugate(pp_hamiltonian_form(p, 0.0))
    w1, _, w2, _ = pp_normal_frequencies(p, 0.0)
    np.testing.assert_allclose(k, normal_form(1.0, w1, w2), atol=1e-12)


def test_mf_zero_field():
    w_plus, _, w_minus, _ = mf_normal_frequencies(MFParams(1.0, C(1.0), C(0.0)), 0.0)
    assert (w_plus, w_minus) == (1.0, 1.0)


def test_mf_frequencies():
    w_plus, _, w_minus, _ = mf_normal_frequencies(MFParams(1.0, C(1.0), C(0.5)), 0.0)
    assert (w_plus, w_minus) == pytest.approx((0.618034, 1.618034), abs=1e-6)


def test_mf_frequency_rates():
    p = MFParams(1.0, C(1.0), ramp_through(0.5, 0.1))
    _, wpd, _, wmd = mf_normal_frequencies(p, 1.0)
    assert wpd == pytest.approx(-0.0552786, abs=1e-7)
    assert wmd == pytest.approx(0.1447214, abs=1e-7)


def test_mf_transform_decouples_with_expected_frequencies():
    p = MFParams(1.0, C(1.0), C(0.5))
    s = mf_transform(p, 0.0)
    assert s.symplectic_defect() <= 1e-12
    k = s.conjugate(mf_hamiltonian_form(p, 0.0))
    np.testing.assert_allclose(k[:2, 2:], 0.0, atol=1e-12)
    assert block_frequencies(k) == pytest.approx((0.618034, 1.618034), abs=1e-6)


def test_mf_transform_zero_field_is_block_diagonal_but_mixes_modes():
    # The defining structure pairs q1 with p2 even at omega_B = 0, so the map
    # is not mode-wise diagonal there; it still decouples the Hamiltonian.
    p = MFParams(1.0, C(1.0), C(0.0))
    s = mf_transform(p, 0.0)
    assert s.symplectic_defect() <= 1e-12
    assert abs(s.matrix[0, 3]) > 0.1
    k = s.conjugate(mf_hamiltonian_form(p, 0.0))
    np.testing.assert_allclose(k, normal_form(1.0, 1.0, 1.0), atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(m=st.floats(0.2, 5), w0=st.floats(0.1, 5), wb=st.floats(-3, 3))
def test_mf_transform_symplectic_and_decoupling(m, w0, wb):
    p = MFParams(m, C(w0), C(wb))
    s = mf_transform(p, 0.0)
    assert s.symplectic_defect() <= 1e-12 * max(1.0, np.max(np.abs(s.matrix)) ** 2)
    k = s.conjugate(mf_hamiltonian_form(p, 0.0))
    w_plus, _, w_minus, _ = mf_normal_frequencies(p, 0.0)
    np.testing.assert_allclose(k, normal_form(m, w_plus, w_minus), atol=1e-9 * max(1, m * w0 ** 2 + wb ** 2))


@given(w=st.floats(0.2, 5), ratio=st.floats(-0.95, 0.95), m=st.floats(0.2, 5))
def test_pp_conjugation_property(w, ratio, m):
    gamma = ratio * m * w * w
    p = PPParams(m, C(w), C(gamma))
    k = pp_transform().conjugate(pp_hamiltonian_form(p, 0.0))
    w1, _, w2, _ = pp_normal_frequencies(p, 0.0)
    np.testing.assert_allclose(k, normal_form(m, w1, w2), atol=1e-12 * max(1.0, m * w * w))


def test_omega_form_is_canonical():
    np.testing.assert_array_equal(OMEGA_FORM, -OMEGA_FORM.T)
    np.testing.assert_array_equal(OMEGA_FORM @ OMEGA_FORM, -np.eye(4))


def test_dimer_normal_modes():
    p = DimerParams(1.0, C(0.2), C(0.01))
    assert dimer_normal_modes(p, 0.0) == pytest.approx((0.985, 0.975, 0.03, 0.05), abs=1e-15)
    assert dimer_normal_modes(DimerParams(1.0, C(0.0), C(0.0)), 0.0) == (1.0, 1.0, 0.0, 0.0)
    assert dimer_normal_modes(DimerParams(1.0, C(0.0), C(0.01)), 0.0)[2] == pytest.approx(-0.01)


def test_dimer_rejects_inverted_mode():
    with pytest.raises(ImaginaryFrequencyError):
        DimerParams(1.0, Schedule.linear(0.0, 1.5, 100.0), C(0.01))


def test_diagonalize_squeezed_trivial():
    assert diagonalize_squeezed(1.0, 0.0, 0.0) == (0.0, 1.0, 0.0)


def test_diagonalize_squeezed_mode_c():
    # r = -ln(0.97)/4 = 0.0076148
    r, vp, eg = diagonalize_squeezed(1.0, 0.03, -0.0025)
    assert r == pytest.approx(-math.log(0.97) / 4, abs=1e-15)
    assert r == pytest.approx(0.0076145, abs=5e-7)
    assert (vp, eg) == pytest.approx((0.9848858, -0.0100571), abs=5e-8)


def test_diagonalize_squeezed_mode_d():
    # r = -ln(0.95)/4 = 0.0128233
    r, vp, eg = diagonalize_squeezed(1.0, 0.05, 0.0025)
    assert r == pytest.approx(-math.log(0.95) / 4, abs=1e-15)
    assert r == pytest.approx(0.0128233, abs=5e-8)
    assert vp == pytest.approx(0.9746794, abs=5e-8)
    assert eg == pytest.approx(-0.0101603, abs=5e-8)


def test_diagonalize_squeezed_rejects_inverted():
    with pytest.raises(ImaginaryFrequencyError):
        diagonalize_squeezed(1.0, 1.0, 0.0)


def test_squeezed_frequency_equals_normal_mode_frequency_only_to_first_order():
    p = DimerParams(1.0, C(0.2), C(0.01))
    w1, _, g1_sq, _ = dimer_normal_modes(p, 0.0)
    vp1, *_ = dimer_squeeze_rates(p, 0.0)
    assert vp1 == pytest.approx(math.sqrt(1 - g1_sq))
    assert abs(vp1 - w1) < g1_sq ** 2


def test_squeeze_rates_match_finite_difference(fig1):
    h = 1e-4
    for t in (10.0, 50.0, 90.0):
        lo, hi = dimer_squeeze_rates(fig1, t - h), dimer_squeeze_rates(fig1, t + h)
        mid = dimer_squeeze_rates(fig1, t)
        assert mid[1] == pytest.approx((hi[0] - lo[0]) / (2 * h), rel=1e-7)
        assert mid[3] == pytest.approx((hi[2] - lo[2]) / (2 * h), rel=1e-7)


def test_ground_energies_at_fig1_start(fig1):
    eg1, eg2 = dimer_ground_energies(fig1, 0.0)
    assert eg1 == pytest.approx((math.sqrt(1.01) - 1) / 2 - 0.0025, abs=1e-15)
    assert eg2 == pytest.approx((math.sqrt(0.99) - 1) / 2 + 0.0025, abs=1e-15)
