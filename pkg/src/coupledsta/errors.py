"""Exception types shared across the package."""


class STAError(Exception):
    """Base class for every error raised by coupledsta."""


class DomainError(STAError, ValueError):
    """An argument lies outside the domain where a formula is defined."""


class ImaginaryFrequencyError(DomainError):
    """A normal-mode or squeezed-mode frequency would be imaginary (or zero)."""


class SingularCoefficientError(DomainError):
    """A driving coefficient has a vanishing denominator."""


class AccuracyError(STAError, RuntimeError):
    """A numerical invariant drifted beyond its monitor tolerance."""


class ConfigError(STAError, ValueError):
    """Malformed scenario configuration; ``path`` names the offending field."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class ValidationError(STAError, ValueError):
    """Scenario parameters violate a model invariant at some time ``t``."""

    def __init__(self, inequality: str, t: float, detail: str = ""):
        self.inequality = inequality
        self.t = t
        msg = f"invariant violated: {inequality} at t={t!r}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
