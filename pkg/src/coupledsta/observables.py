"""Residual energy and per-mode energies of the Rabi-dimer example."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .dynamics import ControlMode, Trajectory
from .normal_modes import DimerParams, dimer_ground_energies, dimer_normal_modes, dimer_squeeze_rates

# negative residual energies closer to zero than this are integrator noise
CLAMP_TOL = 1e-9


@dataclass(frozen=True)
class EnergyBreakdown:
    e1: float
    e2: float
    eg1: float
    eg2: float
    e_r: float

    def clamped(self) -> float:
        """``e_r`` with tiny negative values (within ``CLAMP_TOL``) set to 0."""
        return 0.0 if -CLAMP_TOL < self.e_r < 0.0 else self.e_r


def mode_cd_energy(s: Sequence[complex], p: DimerParams, t: float, mode_index: int,
                   control: ControlMode) -> float:
    """``<0|H_i^CD(t)|0>`` evaluated from the Bogoliubov coefficients of mode ``i``.

    ``omega0 |v|^2 - (omega0 g_i^2/4)|u + v|^2 -+ omega0 J/4`` plus, when the
    mode is driven, ``i (varpi_dot/(4 varpi)) (u v* - u* v)``.
    """
    u, v = (s[0], s[1]) if mode_index == 1 else (s[2], s[3])
    w0 = p.omega0
    _, _, g1_sq, g2_sq = dimer_normal_modes(p, t)
    j, _ = p.J(t)
    gi_sq = g1_sq if mode_index == 1 else g2_sq
    sign = -1.0 if mode_index == 1 else 1.0
    energy = w0 * abs(v) ** 2 - 0.25 * w0 * gi_sq * abs(u + v) ** 2 + sign * 0.25 * w0 * j
    if control.drives(mode_index):
        vp1, vp1d, vp2, vp2d = dimer_squeeze_rates(p, t)
        vp, vpd = (vp1, vp1d) if mode_index == 1 else (vp2, vp2d)
        # u v* - u* v = 2i Im(u v*)
        energy += -(vpd / (2.0 * vp)) * (u * v.conjugate()).imag
    return float(energy)


def residual_energy(s: Sequence[complex], p: DimerParams, t: float,
                    control: ControlMode) -> EnergyBreakdown:
    e1 = mode_cd_energy(s, p, t, 1, control)
    e2 = mode_cd_energy(s, p, t, 2, control)
    eg1, eg2 = dimer_ground_energies(p, t)
    return EnergyBreakdown(e1, e2, eg1, eg2, e1 + e2 - eg1 - eg2)


def trajectory_energies(traj: Trajectory) -> list[EnergyBreakdown]:
    return [residual_energy(traj.states[i], traj.params, float(t), traj.mode)
            for i, t in enumerate(traj.times)]


def residual_energy_series(traj: Trajectory) -> np.ndarray:
    return np.array([e.e_r for e in trajectory_energies(traj)])


def coefficient_traces(p: DimerParams, grid: Iterable[float]) -> list[tuple[float, float, float]]:
    """``(t, F, G)`` built from the squeezed-mode frequencies ``varpi_1, varpi_2``."""
    out = []
    for t in grid:
        t = float(t)
        vp1, vp1d, vp2, vp2d = dimer_squeeze_rates(p, t)
        F = vp1d / (8.0 * vp1) + vp2d / (8.0 * vp2)
        G = vp1d / (4.0 * vp1) - vp2d / (4.0 * vp2)
        out.append((t, F, G))
    return out
