"""Closed-form counterdiabatic driving coefficients.

Operator monomials (fixed once, no hidden sign flips):

* single mode:        ``H_STA = c (q p + p q)``
* position-position:  ``H_STA = -F (q1p1 + p1q1 + q2p2 + p2q2) - G (q1p2 + q2p1)``
* magnetic field:     ``H_STA = -M (q1p1 + p1q1 - q2p2 - p2q2)
                                - N ((alpha/beta) p1p2 - (beta/alpha) q1q2)``

hbar = 1 throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SingularCoefficientError
from .normal_modes import MFParams, PPParams, _big_omega, mf_normal_frequencies, pp_normal_frequencies


@dataclass(frozen=True)
class CDCoefficients:
    family: str  # "pp" or "mf"
    local: float
    coupling: float

    def _get(self, family: str, value: float) -> float:
        if self.family != family:
            raise AttributeError(f"{family} coefficient requested from a {self.family} result")
        return value

    @property
    def F(self) -> float:
        return self._get("pp", self.local)

    @property
    def G(self) -> float:
        return self._get("pp", self.coupling)

    @property
    def M(self) -> float:
        return self._get("mf", self.local)

    @property
    def N(self) -> float:
        return self._get("mf", self.coupling)


def single_mode_cd(omega: float, omega_dot: float) -> float:
    """Coefficient ``-omega_dot / (4 omega)`` of ``(q p + p q)``."""
    if not omega > 0:
        raise DomainError(f"omega must be positive, got {omega}")
    return -omega_dot / (4.0 * omega)


def pp_cd_coefficients(p: PPParams, t: float) -> CDCoefficients:
    w1, w1d, w2, w2d = pp_normal_frequencies(p, t)
    F = w1d / (8.0 * w1) + w2d / (8.0 * w2)
    G = w1d / (4.0 * w1) - w2d / (4.0 * w2)
    return CDCoefficients("pp", F, G)


def mf_cd_coefficients(p: MFParams, t: float) -> CDCoefficients:
    w0, _ = p.omega0(t)
    if w0 == 0.0:
        raise SingularCoefficientError(f"omega0 vanishes at t={t!r}")
    mf_normal_frequencies(p, t)
    wb, wbd = p.omegaB(t)
    big, bigd = _big_omega(p, t)
    M = (bigd * big - wbd * wb) / (4.0 * w0 * w0)
    N = 2.0 * (bigd * wb - wbd * big) / (w0 * w0)
    return CDCoefficients("mf", M, N)


def pp_driving_form(c: CDCoefficients) -> np.ndarray:
    """Quadratic form ``K`` (``H = r^T K r / 2``) of the pp driving term."""
    k = np.zeros((4, 4))
    k[0, 1] = k[1, 0] = k[2, 3] = k[3, 2] = -2.0 * c.F
    k[0, 3] = k[3, 0] = k[2, 1] = k[1, 2] = -c.G
    return k


def mf_driving_form(c: CDCoefficients, p: MFParams, t: float) -> np.ndarray:
    """Quadratic form ``K`` of the magnetic-field driving term at time ``t``."""
    ratio = p.alpha() / p.beta(t)
    k = np.zeros((4, 4))
    k[0, 1] = k[1, 0] = -2.0 * c.M
    k[2, 3] = k[3, 2] = 2.0 * c.M
    k[1, 3] = k[3, 1] = -c.N * ratio
    k[0, 2] = k[2, 0] = c.N / ratio
    return k


def adiabaticity_parameter(omega: float, omega_dot: float) -> float:
    """``Q* = 1 / sqrt(1 - omega_dot^2 / (4 omega^4))``; exactly 1 when ``omega_dot == 0``."""
    if not omega > 0:
        raise DomainError(f"omega must be positive, got {omega}")
    if omega_dot == 0.0:
        return 1.0
    x = omega_dot * omega_dot / (4.0 * omega ** 4)
    if x >= 1.0:
        raise DomainError(
            f"adiabaticity parameter undefined: omega_dot^2/(4 omega^4) = {x!r} >= 1"
        )
    return 1.0 / math.sqrt(1.0 - x)


def _coth(x: float) -> float:
    return 1.0 / math.tanh(x)


def mean_sta_energy(omega_t_1: float, omega_0_1: float, Qstar_1: float, beta_1: float,
                    omega_t_2: float, omega_0_2: float, Qstar_2: float, beta_2: float) -> float:
    """Thermal-average cost of the control, summed over both normal modes.

    Each mode contributes ``(w(t)/w(0)) (Q* - 1) (w(0)/2) coth(beta w(0)/2)``;
    ``beta = math.inf`` gives the ground-state value.
    """
    total = 0.0
    for wt, w0, q, beta in ((omega_t_1, omega_0_1, Qstar_1, beta_1),
                            (omega_t_2, omega_0_2, Qstar_2, beta_2)):
        if not (wt > 0 and w0 > 0 and beta > 0):
            raise DomainError("frequencies and inverse temperatures must be positive")
        total += (wt / w0) * (q - 1.0) * 0.5 * w0 * _coth(0.5 * beta * w0)
    return total
