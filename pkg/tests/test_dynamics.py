import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coupledsta.dynamics import (
    VACUUM,
    BogoliubovState,
    ControlMode,
    check_constraint,
    ex05_rhs,
    ground_state,
    integrate,
)
from coupledsta.errors import AccuracyError, DomainError, ImaginaryFrequencyError
from coupledsta.normal_modes import DimerParams, diagonalize_squeezed, dimer_normal_modes, dimer_squeeze_rates
from coupledsta.schedules import Schedule

C = Schedule.constant
FREE = DimerParams(1.0, C(0.0), C(0.0))


def test_control_mode_drives():
    assert not ControlMode.NONE.drives(1) and not ControlMode.NONE.drives(2)
    assert ControlMode.MODE1_ONLY.drives(1) and not ControlMode.MODE1_ONLY.drives(2)
    assert ControlMode.BOTH.drives(1) and ControlMode.BOTH.drives(2)


def test_free_phase_rotation():
    du1, dv1, du2, dv2 = ex05_rhs(VACUUM, 0.0, FREE, ControlMode.BOTH)
    assert du1 == -1j and dv1 == 0 and du2 == -1j and dv2 == 0


def test_none_equals_both_without_cd(fig1):
    s = BogoliubovState(1.1 + 0.2j, 0.3 - 0.4j, 0.9, 0.1j)
    for t in (5.0, 50.0, 95.0):
        assert ex05_rhs(s, t, fig1, ControlMode.NONE) == ex05_rhs(s, t, fig1, ControlMode.BOTH, cd_scale=0.0)


def test_mode1_only_leaves_mode2_undriven(fig1):
    s = BogoliubovState(1.1 + 0.2j, 0.3 - 0.4j, 0.9, 0.1j)
    one = ex05_rhs(s, 50.0, fig1, ControlMode.MODE1_ONLY)
    assert one[:2] == ex05_rhs(s, 50.0, fig1, ControlMode.BOTH)[:2]
    assert one[2:] == ex05_rhs(s, 50.0, fig1, ControlMode.NONE)[2:]


def test_driven_rhs_substitution():
    # g1^2 = 0.03 with a slope chosen so that varpi_dot/(2 varpi) = 0.001
    g = math.sqrt(0.03)
    gdot = -0.001 * 4 * 0.97 / (2 * g)
    p = DimerParams(1.0, Schedule.linear(g - gdot, g + gdot, 2.0), C(0.0))
    vp1, vp1d, *_ = dimer_squeeze_rates(p, 1.0)
    assert vp1d / (2 * vp1) == pytest.approx(0.001, rel=1e-12)
    du1, dv1, _, _ = ex05_rhs(BogoliubovState(1, 0, 1, 0), 1.0, p, ControlMode.BOTH)
    assert 1j * du1 == pytest.approx(0.985, abs=1e-14)
    assert dv1 == pytest.approx(-0.015j - 0.001, abs=1e-14)


def test_rhs_rejects_inverted_mode():
    # bypass construction checks to hit the evaluator guard
    p = object.__new__(DimerParams)
    object.__setattr__(p, "omega0", 1.0)
    object.__setattr__(p, "g", C(1.2))
    object.__setattr__(p, "J", C(0.0))
    with pytest.raises(ImaginaryFrequencyError):
        ex05_rhs(VACUUM, 0.0, p, ControlMode.NONE)


def test_free_evolution_phase():
    traj = integrate(FREE, ControlMode.BOTH, (0.0, 10.0), 0.005, stride=20)
    expected = np.exp(-1j * traj.times)
    assert np.max(np.abs(traj.states[:, 0] - expected)) <= 1e-10
    assert np.max(np.abs(traj.states[:, 1])) <= 1e-10


def test_trajectory_shape_and_times(fig1_runs):
    traj = fig1_runs[ControlMode.BOTH]
    assert len(traj) == 1001 and traj.states.shape == (1001, 4)
    assert np.all(np.diff(traj.times) > 0)
    assert traj.times[0] == 0.0 and traj.times[-1] == 100.0


def test_initial_state_is_ground_state(fig1, fig1_runs):
    for traj in fig1_runs.values():
        assert traj.state(0) == ground_state(fig1, 0.0)


def test_vacuum_start_option(fig1):
    traj = integrate(fig1, ControlMode.NONE, (0.0, 1.0), 0.01, initial="vacuum")
    assert traj.state(0) == VACUUM
    with pytest.raises(DomainError):
        integrate(fig1, ControlMode.NONE, (0.0, 1.0), 0.01, initial="thermal")


def test_both_tracks_adiabatic_squeezing(fig1, fig1_runs):
    _, _, g1_sq, g2_sq = dimer_normal_modes(fig1, 100.0)
    r_c = diagonalize_squeezed(1.0, g1_sq, 0.0)[0]
    r_d = diagonalize_squeezed(1.0, g2_sq, 0.0)[0]
    final = fig1_runs[ControlMode.BOTH].state(-1)
    assert abs(abs(final.v1) - math.sinh(r_c)) <= 1e-4
    assert abs(abs(final.v2) - math.sinh(r_d)) <= 1e-4


def test_constraint_conserved_without_driving(fig1_runs):
    assert np.max(np.abs(fig1_runs[ControlMode.NONE].constraint())) <= 1e-8


def test_check_constraint_examples():
    assert check_constraint((1, 0, 1, 0)) == (0.0, 0.0)
    r = 0.3
    d1, d2 = check_constraint((math.cosh(r), math.sinh(r), 1, 0))
    assert abs(d1) < 1e-15 and d2 == 0.0
    d1, d2 = check_constraint((1.001, 0, 1, 0))
    assert d1 == pytest.approx(0.002001, abs=1e-12) and d2 == 0.0


@given(r=st.floats(-3, 3), phase=st.floats(0, 2 * math.pi))
def test_squeezed_states_satisfy_constraint(r, phase):
    u = math.cosh(r) * cmath.exp(1j * phase)
    v = math.sinh(r) * cmath.exp(-1j * phase)
    d1, d2 = check_constraint((u, v, u, v))
    assert abs(d1) <= 1e-12 * math.cosh(r) ** 2


def test_accuracy_error_on_coarse_step():
    p = DimerParams(1.0, Schedule.linear(0.0, 0.6, 1.0), C(0.0))
    with pytest.raises(AccuracyError, match="reduce dt"):
        integrate(p, ControlMode.BOTH, (0.0, 1.0), 0.5)


@pytest.mark.parametrize("kwargs", [dict(dt=0.0), dict(dt=0.1, stride=0)])
def test_integrate_argument_errors(fig1, kwargs):
    with pytest.raises(DomainError):
        integrate(fig1, ControlMode.NONE, (0.0, 1.0), **kwargs)


def test_step_halving_is_fourth_order(fig1):
    coarse = integrate(fig1, ControlMode.NONE, (0.0, 100.0), 0.02, stride=50)
    fine = integrate(fig1, ControlMode.NONE, (0.0, 100.0), 0.01, stride=100)
    assert coarse.max_drift / fine.max_drift >= 8.0


@settings(max_examples=10, deadline=None)
@given(g_f=st.floats(0.0, 0.6), j=st.floats(-0.2, 0.2), mode=st.sampled_from(list(ControlMode)))
def test_constraint_preserved_on_random_protocols(g_f, j, mode):
    p = DimerParams(1.0, Schedule.smooth(0.0, g_f, 20.0), C(j))
    traj = integrate(p, mode, (0.0, 20.0), 0.01, stride=100)
    assert traj.max_drift <= 1e-8
