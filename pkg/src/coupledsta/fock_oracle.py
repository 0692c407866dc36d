"""Brute-force truncated number-basis verifier.

Operators are dense ``n_max x n_max`` complex numpy arrays.  Products of two
ladder operators are wrong only in the last rows/columns of a truncated
basis, so identities are compared on the interior block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import eigh, expm

from .dynamics import ControlMode
from .errors import AccuracyError, DomainError
from .normal_modes import DimerParams, dimer_normal_modes, dimer_squeeze_rates

DEFAULT_N_MAX = 40
NORM_TOL = 1e-8


def build_mode_ops(n_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Annihilation and creation matrices with ``a[n-1, n] = sqrt(n)``."""
    if n_max < 2:
        raise DomainError(f"n_max must be >= 2, got {n_max}")
    a = np.diag(np.sqrt(np.arange(1, n_max, dtype=float)), 1).astype(complex)
    return a, a.conj().T


def number_op(n_max: int) -> np.ndarray:
    return np.diag(np.arange(n_max, dtype=float)).astype(complex)


def quadratures(n_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Dimensionless ``q = (a + a^dag)/sqrt 2`` and ``p = i (a^dag - a)/sqrt 2``."""
    a, ad = build_mode_ops(n_max)
    return (a + ad) / math.sqrt(2.0), 1j * (ad - a) / math.sqrt(2.0)


def interior(m: np.ndarray, margin: int = 2) -> np.ndarray:
    n = m.shape[0] - margin
    return m[:n, :n]


def hermiticity_defect(h: np.ndarray) -> float:
    return float(np.max(np.abs(h - h.conj().T)))


def dimer_hamiltonian(p: DimerParams, t: float, mode_index: int, control: ControlMode,
                      n_max: int = DEFAULT_N_MAX) -> np.ndarray:
    """Matrix of ``H_i(t)`` (plus its driving term when ``control`` drives mode i).

    ``H_i = omega_i n - (omega0 g_i^2/4)(a^2 + a^dag^2) - omega0 g^2/4`` with
    driving ``i (varpi_dot/(4 varpi)) (a^2 - a^dag^2)``.
    """
    if n_max < 8:
        raise DomainError(f"n_max must be >= 8 for the dimer oracle, got {n_max}")
    w1, w2, g1_sq, g2_sq = dimer_normal_modes(p, t)
    g, _ = p.g(t)
    wi, gi_sq = (w1, g1_sq) if mode_index == 1 else (w2, g2_sq)
    a, ad = build_mode_ops(n_max)
    a2 = a @ a
    ad2 = ad @ ad
    h = (wi * number_op(n_max)
         - 0.25 * p.omega0 * gi_sq * (a2 + ad2)
         - 0.25 * p.omega0 * g * g * np.eye(n_max))
    if control.drives(mode_index):
        vp1, vp1d, vp2, vp2d = dimer_squeeze_rates(p, t)
        vp, vpd = (vp1, vp1d) if mode_index == 1 else (vp2, vp2d)
        h = h + 1j * (vpd / (4.0 * vp)) * (a2 - ad2)
    return h


def evolve_schrodinger(h_of_t: Callable[[float], np.ndarray], psi0: np.ndarray,
                       t_span: tuple[float, float], dt: float, *, stride: int = 1,
                       norm_tol: float = NORM_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Exponential-midpoint stepping ``psi <- exp(-i H(t + dt/2) dt) psi``.

    Returns ``(times, states)`` sampled every ``stride`` steps (rows of
    ``states`` are state vectors).  Raises :class:`AccuracyError` if the norm
    drifts past ``norm_tol``.
    """
    t0, t1 = map(float, t_span)
    n = max(1, math.ceil((t1 - t0) / dt - 1e-9))
    h = (t1 - t0) / n
    psi = np.asarray(psi0, dtype=complex).copy()
    norm0 = np.linalg.norm(psi)
    if abs(norm0 - 1.0) > norm_tol:
        raise DomainError(f"initial state not normalised (norm {norm0!r})")
    times = [t0]
    states = [psi.copy()]
    for k in range(n):
        tm = t0 + (t1 - t0) * (k + 0.5) / n
        psi = expm(-1j * h * h_of_t(tm)) @ psi
        if (k + 1) % stride == 0 or k + 1 == n:
            times.append(t0 + (t1 - t0) * (k + 1) / n)
            states.append(psi.copy())
    drift = abs(np.linalg.norm(psi) - 1.0)
    if drift > norm_tol:
        raise AccuracyError(f"norm drift {drift:.3e} exceeds {norm_tol:.1e}")
    return np.array(times), np.array(states)


def expectation(op: np.ndarray, psi: np.ndarray) -> float:
    return float(np.real(np.vdot(psi, op @ psi)))


def squeeze_matrix(r: float, n_max: int) -> np.ndarray:
    """Dense ``exp[(r/2)(a^dag^2 - a^2)]``; checked unitary on the interior block."""
    a, ad = build_mode_ops(n_max)
    s = expm(0.5 * r * (ad @ ad - a @ a))
    k = n_max // 2
    defect = np.max(np.abs((s.conj().T @ s)[:k, :k] - np.eye(k)))
    if defect > 1e-10:
        raise AccuracyError(f"squeeze matrix not unitary on interior block (defect {defect:.2e}); raise n_max")
    return s


def appendix_identity_check(g_sq: float, n_max: int) -> float:
    """Max interior deviation of ``b^2 - b^dag^2`` from ``a^2 - a^dag^2``.

    ``b = [(a^dag + a) a_t^{1/4} - (a^dag - a) a_t^{-1/4}] / 2`` with
    ``a_t = 1 - g_sq``.
    """
    if not 0.0 <= g_sq < 1.0:
        raise DomainError(f"g_sq must lie in [0, 1), got {g_sq}")
    if n_max < 8:
        raise DomainError(f"n_max must be >= 8, got {n_max}")
    a, ad = build_mode_ops(n_max)
    w = (1.0 - g_sq) ** 0.25
    b = 0.5 * ((ad + a) * w - (ad - a) / w)
    bd = b.conj().T
    lhs = b @ b - bd @ bd
    rhs = a @ a - ad @ ad
    return float(np.max(np.abs(interior(lhs - rhs))))


def ground_energy(h: np.ndarray) -> float:
    return float(eigh(h, eigvals_only=True, subset_by_index=[0, 0])[0])


def ground_vector(h: np.ndarray) -> np.ndarray:
    _, vecs = eigh(h, subset_by_index=[0, 0])
    return vecs[:, 0].astype(complex)


@dataclass(frozen=True)
class OracleRun:
    """Observables of both modes sampled along a Schrodinger-picture run."""

    times: np.ndarray
    n1: np.ndarray      # <c^dag c>
    n2: np.ndarray      # <d^dag d>
    e1: np.ndarray      # <H_1^CD>
    e2: np.ndarray      # <H_2^CD>
    eg1: np.ndarray     # lowest eigenvalue of H_1 (no driving)
    eg2: np.ndarray

    @property
    def e_r(self) -> np.ndarray:
        return self.e1 + self.e2 - self.eg1 - self.eg2


def dimer_oracle_run(p: DimerParams, control: ControlMode, t_span: tuple[float, float],
                     dt: float, *, n_max: int = DEFAULT_N_MAX, stride: int = 1,
                     initial: str = "ground") -> OracleRun:
    """Evolve both decoupled modes in a truncated basis and record observables.

    ``initial="ground"`` starts from the lowest eigenvector of each undriven
    ``H_i(t0)``; ``"vacuum"`` starts from ``|0>``.
    """
    t0 = float(t_span[0])
    num = number_op(n_max)
    series = {}
    for i in (1, 2):
        if initial == "ground":
            psi0 = ground_vector(dimer_hamiltonian(p, t0, i, ControlMode.NONE, n_max))
        elif initial == "vacuum":
            psi0 = np.zeros(n_max, dtype=complex)
            psi0[0] = 1.0
        else:
            raise DomainError(f"initial must be 'ground' or 'vacuum', got {initial!r}")
        times, states = evolve_schrodinger(
            lambda t, i=i: dimer_hamiltonian(p, t, i, control, n_max),
            psi0, t_span, dt, stride=stride,
        )
        pops, energies, grounds = [], [], []
        for t, psi in zip(times, states):
            pops.append(expectation(num, psi))
            energies.append(expectation(dimer_hamiltonian(p, float(t), i, control, n_max), psi))
            grounds.append(ground_energy(dimer_hamiltonian(p, float(t), i, ControlMode.NONE, n_max)))
        series[i] = (times, np.array(pops), np.array(energies), np.array(grounds))
    times = series[1][0]
    return OracleRun(times, series[1][1], series[2][1], series[1][2], series[2][2],
                     series[1][3], series[2][3])
