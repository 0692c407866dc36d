import pytest

from coupledsta.dynamics import ControlMode, integrate
from coupledsta.verification import fig1_params


@pytest.fixture(scope="session")
def fig1():
    return fig1_params()


@pytest.fixture(scope="session")
def fig1_runs(fig1):
    """RK4 trajectories of the benchmark ramp for every control mode (dt=0.01)."""
    return {mode: integrate(fig1, mode, (0.0, 100.0), 0.01, stride=10) for mode in ControlMode}


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
