"""Time-dependent control protocols with exact analytic derivatives.

A :class:`Schedule` is an immutable description of a real control parameter
such as ``g(t)``, ``J(t)``, ``omega(t)``, ``gamma(t)`` or ``omega_B(t)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

KINDS = ("constant", "linear-ramp", "smooth-ramp")

# Ramps accept t a hair outside [0, tau_q] so that accumulated rounding in
# time grids does not trip the domain check.
_EDGE_SLACK = 1e-12


@dataclass(frozen=True)
class Schedule:
    kind: str
    value0: float
    value_f: float | None = None
    tau_q: float = math.inf

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown schedule kind {self.kind!r}; expected one of {KINDS}")
        if self.kind == "constant":
            if self.value_f is None:
                object.__setattr__(self, "value_f", self.value0)
            if not (self.tau_q > 0):
                raise DomainError(f"tau_q must be > 0, got {self.tau_q}")
            return
        if self.value_f is None:
            raise DomainError(f"{self.kind} schedule requires value_f")
        if not (0 < self.tau_q < math.inf):
            raise DomainError(f"{self.kind} schedule requires finite tau_q > 0, got {self.tau_q}")

    @classmethod
    def constant(cls, value: float) -> Schedule:
        return cls("constant", float(value))

    @classmethod
    def linear(cls, value0: float, value_f: float, tau_q: float) -> Schedule:
        return cls("linear-ramp", float(value0), float(value_f), float(tau_q))

    @classmethod
    def smooth(cls, value0: float, value_f: float, tau_q: float) -> Schedule:
        return cls("smooth-ramp", float(value0), float(value_f), float(tau_q))

    @property
    def is_ramp(self) -> bool:
        return self.kind != "constant"

    def __call__(self, t: float) -> tuple[float, float]:
        return evaluate(self, t)


def evaluate(s: Schedule, t: float) -> tuple[float, float]:
    """Return ``(value, d value / dt)`` of the schedule at time ``t``."""
    if s.kind == "constant":
        return s.value0, 0.0
    tau = s.tau_q
    if t < -_EDGE_SLACK * tau or t > tau * (1 + _EDGE_SLACK):
        raise DomainError(f"t={t!r} outside [0, {tau!r}] for {s.kind} schedule")
    x = min(max(t / tau, 0.0), 1.0)
    delta = s.value_f - s.value0
    if s.kind == "linear-ramp":
        return s.value0 + delta * x, delta / tau
    # smooth-ramp: 3x^2 - 2x^3
    return s.value0 + delta * x * x * (3.0 - 2.0 * x), delta * 6.0 * x * (1.0 - x) / tau


def horizon(*schedules: Schedule) -> float:
    """Longest finite protocol duration among ``schedules`` (0 if all constant)."""
    finite = [s.tau_q for s in schedules if s.is_ramp]
    return max(finite) if finite else 0.0
