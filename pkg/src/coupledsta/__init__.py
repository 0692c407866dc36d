"""Counterdiabatic driving for two coupled quantum harmonic oscillators."""

from .cd_control import (
    CDCoefficients,
    adiabaticity_parameter,
    mean_sta_energy,
    mf_cd_coefficients,
    pp_cd_coefficients,
    single_mode_cd,
)
from .dynamics import BogoliubovState, ControlMode, Trajectory, check_constraint, ex05_rhs, ground_state, integrate
from .errors import (
    AccuracyError,
    ConfigError,
    DomainError,
    ImaginaryFrequencyError,
    SingularCoefficientError,
    STAError,
    ValidationError,
)
from .normal_modes import (
    DimerParams,
    MFParams,
    PPParams,
    SymplecticMap,
    diagonalize_squeezed,
    dimer_normal_modes,
    mf_normal_frequencies,
    mf_transform,
    pp_normal_frequencies,
    pp_transform,
)
from .observables import EnergyBreakdown, coefficient_traces, mode_cd_energy, residual_energy
from .schedules import Schedule, evaluate

__version__ = "0.1.0"
