"""Heisenberg-picture evolution of the coupled Rabi-dimer example.

The decoupled modes evolve as ``c_H(t) = u1 c + conj(v1) c^dag`` and
``d_H(t) = u2 d + conj(v2) d^dag``.  With the per-mode Hamiltonian

    H_i = omega0 n - (omega0 g_i^2 / 4)(a^dag + a)^2 -+ omega0 J / 4
          + i (varpi_i_dot / (4 varpi_i)) (a^2 - a^dag^2)      [if driven]

the Heisenberg equation gives

    i du/dt  = omega0 [(1 - g_i^2/2) u - (g_i^2/2) v] - i k v
    -i dv/dt = omega0 [(1 - g_i^2/2) v - (g_i^2/2) u] + i k u

with ``k = varpi_i_dot / (2 varpi_i)`` when the mode is driven, else 0.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import AccuracyError, DomainError
from .normal_modes import DimerParams, diagonalize_squeezed, dimer_normal_modes, dimer_squeeze_rates

DRIFT_TOL = 1e-8


class ControlMode(enum.Enum):
    NONE = "none"
    MODE1_ONLY = "mode1_only"
    BOTH = "both"

    def drives(self, mode_index: int) -> bool:
        if mode_index not in (1, 2):
            raise ValueError(f"mode_index must be 1 or 2, got {mode_index}")
        return self is ControlMode.BOTH or (self is ControlMode.MODE1_ONLY and mode_index == 1)


class BogoliubovState(NamedTuple):
    u1: complex
    v1: complex
    u2: complex
    v2: complex


VACUUM = BogoliubovState(1 + 0j, 0j, 1 + 0j, 0j)


def check_constraint(s: Sequence[complex]) -> tuple[float, float]:
    """Deviation of ``|u_i|^2 - |v_i|^2`` from 1 for both modes."""
    u1, v1, u2, v2 = s
    return (abs(u1) ** 2 - abs(v1) ** 2 - 1.0,
            abs(u2) ** 2 - abs(v2) ** 2 - 1.0)


def ground_state(p: DimerParams, t: float = 0.0) -> BogoliubovState:
    """Coefficients of the instantaneous ground state of both squeezed modes.

    The ground state is ``S[r]|0>`` with ``S[r] = exp[(r/2)(a^dag^2 - a^2)]``,
    for which ``u = cosh r`` and ``v = sinh r``.
    """
    _, _, g1_sq, g2_sq = dimer_normal_modes(p, t)
    r1 = diagonalize_squeezed(p.omega0, g1_sq, 0.0)[0]
    r2 = diagonalize_squeezed(p.omega0, g2_sq, 0.0)[0]
    return BogoliubovState(complex(math.cosh(r1)), complex(math.sinh(r1)),
                           complex(math.cosh(r2)), complex(math.sinh(r2)))


def ex05_rhs(s: Sequence[complex], t: float, p: DimerParams, mode: ControlMode,
             *, cd_scale: float = 1.0) -> BogoliubovState:
    """Time derivative of the Bogoliubov coefficients.

    ``cd_scale`` multiplies the counterdiabatic term; 1 is the exact driving,
    other values exist for mutation tests.
    """
    u1, v1, u2, v2 = s
    w0 = p.omega0
    _, _, g1_sq, g2_sq = dimer_normal_modes(p, t)
    vp1, vp1d, vp2, vp2d = dimer_squeeze_rates(p, t)
    k1 = cd_scale * vp1d / (2.0 * vp1) if mode.drives(1) else 0.0
    k2 = cd_scale * vp2d / (2.0 * vp2) if mode.drives(2) else 0.0

    a1 = w0 * (1.0 - 0.5 * g1_sq)
    b1 = 0.5 * w0 * g1_sq
    a2 = w0 * (1.0 - 0.5 * g2_sq)
    b2 = 0.5 * w0 * g2_sq
    return BogoliubovState(
        -1j * (a1 * u1 - b1 * v1) - k1 * v1,
        1j * (a1 * v1 - b1 * u1) - k1 * u1,
        -1j * (a2 * u2 - b2 * v2) - k2 * v2,
        1j * (a2 * v2 - b2 * u2) - k2 * u2,
    )


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray            # shape (n,)
    states: np.ndarray           # shape (n, 4) complex: u1, v1, u2, v2
    params: DimerParams
    mode: ControlMode
    max_drift: float

    def __len__(self) -> int:
        return len(self.times)

    def state(self, i: int) -> BogoliubovState:
        return BogoliubovState(*(complex(x) for x in self.states[i]))

    def constraint(self) -> np.ndarray:
        """Per-sample constraint deviations, shape (n, 2)."""
        s = np.abs(self.states) ** 2
        return np.stack([s[:, 0] - s[:, 1] - 1.0, s[:, 2] - s[:, 3] - 1.0], axis=1)


def _initial(p: DimerParams, t0: float, initial) -> BogoliubovState:
    if isinstance(initial, str):
        if initial == "ground":
            return ground_state(p, t0)
        if initial == "vacuum":
            return VACUUM
        raise DomainError(f"initial must be 'ground', 'vacuum' or a state, got {initial!r}")
    return BogoliubovState(*(complex(x) for x in initial))


def integrate(p: DimerParams, mode: ControlMode, t_span: tuple[float, float], dt: float,
              *, stride: int = 1, initial="ground", drift_tol: float = DRIFT_TOL,
              cd_scale: float = 1.0) -> Trajectory:
    """Fixed-step classical RK4 integration of :func:`ex05_rhs`.

    ``dt`` is rounded down so an integer number of steps spans ``t_span``
    exactly.  ``initial`` is ``"ground"`` (instantaneous ground state at the
    start time), ``"vacuum"`` (``u = 1, v = 0``) or an explicit state.
    Raises :class:`AccuracyError` when the Bogoliubov constraint drifts past
    ``drift_tol``.
    """
    t0, t1 = map(float, t_span)
    if not dt > 0:
        raise DomainError(f"dt must be positive, got {dt}")
    if not t1 > t0:
        raise DomainError(f"empty time span {t_span}")
    if stride < 1:
        raise DomainError(f"stride must be >= 1, got {stride}")
    n = max(1, math.ceil((t1 - t0) / dt - 1e-9))
    h = (t1 - t0) / n

    y = tuple(_initial(p, t0, initial))
    times = [t0]
    states = [y]
    drift = max(map(abs, check_constraint(y)))
    for k in range(n):
        t = t0 + (t1 - t0) * k / n
        k1 = ex05_rhs(y, t, p, mode, cd_scale=cd_scale)
        k2 = ex05_rhs([a + 0.5 * h * b for a, b in zip(y, k1)], t + 0.5 * h, p, mode, cd_scale=cd_scale)
        k3 = ex05_rhs([a + 0.5 * h * b for a, b in zip(y, k2)], t + 0.5 * h, p, mode, cd_scale=cd_scale)
        k4 = ex05_rhs([a + h * b for a, b in zip(y, k3)], t + h, p, mode, cd_scale=cd_scale)
        y = tuple(a + h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
                  for a, b1, b2, b3, b4 in zip(y, k1, k2, k3, k4))
        d1, d2 = check_constraint(y)
        drift = max(drift, abs(d1), abs(d2))
        if (k + 1) % stride == 0 or k + 1 == n:
            times.append(t0 + (t1 - t0) * (k + 1) / n)
            states.append(y)
    if drift > drift_tol:
        raise AccuracyError(
            f"Bogoliubov constraint drift {drift:.3e} exceeds {drift_tol:.1e}; reduce dt (now {h!r})"
        )
    return Trajectory(np.array(times), np.array(states, dtype=complex), p, mode, drift)
