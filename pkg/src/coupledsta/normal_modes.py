"""Normal-mode decomposition of the coupled two-mode Hamiltonians.

Quadrature vectors are ordered ``(q1, p1, q2, p2)``.  Quadratic Hamiltonians
are represented by a real symmetric matrix ``K`` with ``H = r^T K r / 2``
(Weyl-symmetrised products), and a :class:`SymplecticMap` acts as
``R = S r``, taking original quadratures to normal-mode quadratures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ImaginaryFrequencyError
from .schedules import Schedule, horizon

# canonical symplectic form for (q1, p1, q2, p2)
OMEGA_FORM = np.array(
    [[0.0, 1.0, 0.0, 0.0],
     [-1.0, 0.0, 0.0, 0.0],
     [0.0, 0.0, 0.0, 1.0],
     [0.0, 0.0, -1.0, 0.0]]
)

GRID_POINTS = 1001


def sample_times(*schedules: Schedule, n: int = GRID_POINTS) -> np.ndarray:
    tau = horizon(*schedules)
    if tau == 0.0:
        return np.zeros(1)
    return np.linspace(0.0, tau, n)


@dataclass(frozen=True)
class PPParams:
    """Position-position coupled oscillators: mass, local frequency, coupling."""

    m: float
    omega: Schedule
    gamma: Schedule

    def __post_init__(self):
        if not self.m > 0:
            raise DomainError(f"mass must be positive, got {self.m}")
        for t in sample_times(self.omega, self.gamma):
            pp_normal_frequencies(self, float(t))


@dataclass(frozen=True)
class MFParams:
    """Oscillators coupled through a magnetic field of frequency omega_B(t)."""

    m: float
    omega0: Schedule
    omegaB: Schedule

    def __post_init__(self):
        if not self.m > 0:
            raise DomainError(f"mass must be positive, got {self.m}")
        for t in sample_times(self.omega0, self.omegaB):
            mf_normal_frequencies(self, float(t))

    def alpha(self) -> float:
        return math.sqrt(1.0 / (2.0 * self.m))

    def beta(self, t: float) -> float:
        return math.sqrt(self.m / 2.0) * _big_omega(self, t)[0]


@dataclass(frozen=True)
class DimerParams:
    """Two projected Rabi models coupled through their cavity modes."""

    omega0: float
    g: Schedule
    J: Schedule

    def __post_init__(self):
        if not self.omega0 > 0:
            raise DomainError(f"omega0 must be positive, got {self.omega0}")
        for t in sample_times(self.g, self.J):
            _, _, g1_sq, g2_sq = dimer_normal_modes(self, float(t))
            if g1_sq >= 1.0 or g2_sq >= 1.0:
                raise ImaginaryFrequencyError(
                    f"g1^2={g1_sq!r}, g2^2={g2_sq!r} at t={float(t)!r}; both must be < 1"
                )

    @property
    def tau_q(self) -> float:
        return horizon(self.g, self.J)


@dataclass(frozen=True)
class SymplecticMap:
    matrix: np.ndarray

    def apply(self, r) -> np.ndarray:
        return self.matrix @ np.asarray(r, dtype=float)

    def symplectic_defect(self) -> float:
        """Largest entry of ``|S Omega S^T - Omega|``."""
        s = self.matrix
        return float(np.max(np.abs(s @ OMEGA_FORM @ s.T - OMEGA_FORM)))

    def conjugate(self, k: np.ndarray) -> np.ndarray:
        """Quadratic form ``K`` rewritten in normal-mode quadratures."""
        s_inv = np.linalg.inv(self.matrix)
        return s_inv.T @ k @ s_inv


# -- position-position coupling -------------------------------------------

def pp_normal_frequencies(p: PPParams, t: float) -> tuple[float, float, float, float]:
    """Return ``(omega1, omega1_dot, omega2, omega2_dot)``.

    ``omega_{1,2}^2 = omega^2 +- gamma/m``; derivatives follow from the chain
    rule on both schedules.
    """
    w, wd = p.omega(t)
    gam, gamd = p.gamma(t)
    w1_sq = w * w + gam / p.m
    w2_sq = w * w - gam / p.m
    if w1_sq <= 0.0 or w2_sq <= 0.0:
        raise ImaginaryFrequencyError(
            f"omega^2 +- gamma/m must be > 0 at t={t!r} (got {w1_sq!r}, {w2_sq!r})"
        )
    w1 = math.sqrt(w1_sq)
    w2 = math.sqrt(w2_sq)
    w1d = (w * wd + gamd / (2.0 * p.m)) / w1
    w2d = (w * wd - gamd / (2.0 * p.m)) / w2
    return w1, w1d, w2, w2d


def pp_transform() -> SymplecticMap:
    """Sum/difference map ``Q_{1,2} = (q1 +- q2)/sqrt 2`` (same for momenta).

    The matrix is an involution, so it equally maps normal-mode quadratures
    back onto the original ones.
    """
    h = 1.0 / math.sqrt(2.0)
    s = np.array(
        [[h, 0.0, h, 0.0],
         [0.0, h, 0.0, h],
         [h, 0.0, -h, 0.0],
         [0.0, h, 0.0, -h]]
    )
    return SymplecticMap(s)


def pp_hamiltonian_form(p: PPParams, t: float) -> np.ndarray:
    w, _ = p.omega(t)
    gam, _ = p.gamma(t)
    k = np.diag([p.m * w * w, 1.0 / p.m, p.m * w * w, 1.0 / p.m])
    k[0, 2] = k[2, 0] = gam
    return k


# -- magnetic-field coupling ----------------------------------------------

def _big_omega(p: MFParams, t: float) -> tuple[float, float]:
    w0, w0d = p.omega0(t)
    wb, wbd = p.omegaB(t)
    big = math.sqrt(w0 * w0 + wb * wb)
    if big == 0.0:
        raise ImaginaryFrequencyError(f"Omega vanishes at t={t!r}")
    return big, (w0 * w0d + wb * wbd) / big


def mf_normal_frequencies(p: MFParams, t: float) -> tuple[float, float, float, float]:
    """Return ``(omega_plus, omega_plus_dot, omega_minus, omega_minus_dot)``.

    ``omega_pm = Omega -+ omega_B`` with ``Omega^2 = omega0^2 + omega_B^2``.
    """
    wb, wbd = p.omegaB(t)
    big, bigd = _big_omega(p, t)
    w_plus = big - wb
    w_minus = big + wb
    if w_plus <= 0.0 or w_minus <= 0.0:
        raise ImaginaryFrequencyError(
            f"omega_pm = Omega -+ omega_B must be > 0 at t={t!r} (got {w_plus!r}, {w_minus!r})"
        )
    return w_plus, bigd - wbd, w_minus, bigd + wbd


def mf_hamiltonian_form(p: MFParams, t: float) -> np.ndarray:
    """Quadratic form of ``sum_i p_i^2/2m + m Omega^2 q_i^2/2 + omega_B (p1 q2 - q1 p2)``.

    The cross term is the one obtained from the ladder-operator form
    ``Omega (n1 + n2 + 1) - i omega_B (a1 a2^dag - a1^dag a2)``.
    """
    big, _ = _big_omega(p, t)
    wb, _ = p.omegaB(t)
    k = np.diag([p.m * big * big, 1.0 / p.m, p.m * big * big, 1.0 / p.m])
    k[1, 2] = k[2, 1] = wb
    k[0, 3] = k[3, 0] = -wb
    return k


def mf_transform(p: MFParams, t: float) -> SymplecticMap:
    """Map ``(q1, p1, q2, p2) -> (Q+, P+, Q-, P-)`` decoupling the field coupling.

    Built from ``delta_pm = 1/sqrt(m w_pm Omega)`` and
    ``epsilon_pm = sqrt(m w_pm / Omega)`` together with
    ``alpha = 1/sqrt(2m)`` and ``beta = sqrt(m/2) Omega``.  The ``P+`` row
    carries ``epsilon_+ alpha`` on ``p1`` so the map stays symplectic.
    """
    w_plus, _, w_minus, _ = mf_normal_frequencies(p, t)
    big, _ = _big_omega(p, t)
    a = p.alpha()
    b = math.sqrt(p.m / 2.0) * big
    d_plus = math.sqrt(1.0 / (p.m * w_plus * big))
    d_minus = math.sqrt(1.0 / (p.m * w_minus * big))
    e_plus = math.sqrt(p.m * w_plus / big)
    e_minus = math.sqrt(p.m * w_minus / big)
    s = np.array(
        [[d_plus * b, 0.0, 0.0, d_plus * a],
         [0.0, e_plus * a, -e_plus * b, 0.0],
         [d_minus * b, 0.0, 0.0, -d_minus * a],
         [0.0, e_minus * a, e_minus * b, 0.0]]
    )
    return SymplecticMap(s)


def normal_form(m: float, w1: float, w2: float) -> np.ndarray:
    """Quadratic form of two uncoupled oscillators of mass ``m``."""
    return np.diag([m * w1 * w1, 1.0 / m, m * w2 * w2, 1.0 / m])


def block_frequencies(k: np.ndarray) -> tuple[float, float]:
    """Frequencies of the two 2x2 diagonal blocks of a decoupled quadratic form."""
    out = []
    for i in (0, 2):
        det = k[i, i] * k[i + 1, i + 1] - k[i, i + 1] * k[i + 1, i]
        out.append(math.sqrt(det))
    return out[0], out[1]


# -- coupled Rabi-dimer example --------------------------------------------

def dimer_normal_modes(p: DimerParams, t: float) -> tuple[float, float, float, float]:
    """Return ``(omega1, omega2, g1_sq, g2_sq)`` of the decoupled c/d modes.

    ``g1_sq = g^2 - J`` may be negative; it is never square-rooted here.
    """
    g, _ = p.g(t)
    j, _ = p.J(t)
    w0 = p.omega0
    return (w0 * (1.0 + 0.5 * (j - g * g)),
            w0 * (1.0 - 0.5 * (j + g * g)),
            g * g - j,
            g * g + j)


def dimer_squeeze_rates(p: DimerParams, t: float) -> tuple[float, float, float, float]:
    """Squeezed-mode frequencies and their derivatives.

    Returns ``(varpi1, varpi1_dot, varpi2, varpi2_dot)`` where
    ``varpi_i = omega0 sqrt(1 - g_i^2)`` and
    ``varpi_i_dot = -omega0^2 (d g_i^2/dt) / (2 varpi_i)``.
    """
    g, gd = p.g(t)
    j, jd = p.J(t)
    w0 = p.omega0
    out = []
    for gi_sq, gi_sq_dot in ((g * g - j, 2.0 * g * gd - jd), (g * g + j, 2.0 * g * gd + jd)):
        if gi_sq >= 1.0:
            raise ImaginaryFrequencyError(f"1 - g_i^2 = {1.0 - gi_sq!r} <= 0 at t={t!r}")
        vp = w0 * math.sqrt(1.0 - gi_sq)
        out += [vp, -w0 * w0 * gi_sq_dot / (2.0 * vp)]
    return tuple(out)


def diagonalize_squeezed(omega0: float, g_sq: float, J_term: float) -> tuple[float, float, float]:
    """Squeeze parameter, frequency and ground energy of a single squeezed mode.

    For ``omega0 a^dag a - (omega0 g_sq / 4)(a^dag + a)^2 + J_term``:
    ``r = -ln(1 - g_sq)/4``, ``varpi = omega0 sqrt(1 - g_sq)`` and
    ``E_G = omega0 (sqrt(1 - g_sq) - 1)/2 + J_term``.  ``J_term`` is
    ``-omega0 J/4`` for mode c and ``+omega0 J/4`` for mode d.
    """
    if g_sq >= 1.0:
        raise ImaginaryFrequencyError(f"g_sq={g_sq!r} >= 1: inverted oscillator cannot be diagonalised")
    root = math.sqrt(1.0 - g_sq)
    r = -0.25 * math.log1p(-g_sq)
    return r, omega0 * root, 0.5 * omega0 * (root - 1.0) + J_term


def dimer_ground_energies(p: DimerParams, t: float) -> tuple[float, float]:
    _, _, g1_sq, g2_sq = dimer_normal_modes(p, t)
    j, _ = p.J(t)
    jt = 0.25 * p.omega0 * j
    return (diagonalize_squeezed(p.omega0, g1_sq, -jt)[2],
            diagonalize_squeezed(p.omega0, g2_sq, jt)[2])
