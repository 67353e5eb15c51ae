"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid or malformed configuration (CLI exit code 1)."""


class NumericalError(RuntimeError):
    """Numerical failure: non-finite values, blown-up solve (CLI exit code 2)."""


class QuadratureError(NumericalError):
    """Adaptive quadrature failed to reach the requested tolerance."""

    def __init__(self, message: str, achieved: float | None = None):
        super().__init__(message)
        self.achieved = achieved


class VerificationError(RuntimeError):
    """Property-suite or acceptance failure (CLI exit code 3)."""
