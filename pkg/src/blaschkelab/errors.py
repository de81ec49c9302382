"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class InsufficientDataError(ValueError):
    """Not enough samples to estimate the requested quantity."""


class DivergenceError(ValueError):
    """The requested integral diverges for these parameters."""

    def __init__(self, message: str, gate: str = ""):
        super().__init__(message)
        self.gate = gate


class GateError(ValueError):
    """Parameter gate of a two-sided estimate is not satisfied."""


class SeparationError(RuntimeError):
    """Zero sequence is not separated (or disk disjointness could not be verified)."""


class ConvergenceError(RuntimeError):
    """Iterative solver failed to reach the required residual."""

    def __init__(self, message: str, worst_residual: float = float("nan")):
        super().__init__(message)
        self.worst_residual = worst_residual


class CrossCheckError(RuntimeError):
    """Two independent computation paths disagree beyond tolerance."""


class UnsupportedWeightError(TypeError):
    """Operation is not defined for this weight family."""
