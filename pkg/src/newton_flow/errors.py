"""Exception types shared across the package."""


class NewtonFlowError(Exception):
    """Base class for all package-specific failures."""


class DomainError(NewtonFlowError, ValueError):
    """Input outside an operation's documented domain."""


class NotPSDError(DomainError):
    """A matrix required to be positive semidefinite is not."""


class NotSelfShrinkerError(DomainError):
    """Model does not satisfy the self-shrinker equation."""


class NumericalError(NewtonFlowError):
    """An internal cross-check failed beyond its tolerance."""


class CflViolationError(NewtonFlowError):
    """Requested time step exceeds the explicit stability bound."""


class ExtinctionError(NewtonFlowError):
    """Flow reached extinction (or pinched) at the recorded time."""

    def __init__(self, time: float, reason: str = "extinct"):
        super().__init__(f"flow {reason} at t={time:.6g}")
        self.time = time
        self.reason = reason


class ConfigError(NewtonFlowError, ValueError):
    """Malformed scene configuration."""
