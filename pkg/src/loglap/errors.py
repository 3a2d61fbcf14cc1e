"""Exception hierarchy shared by the library and the CLI exit-code mapping."""


class LoglapError(Exception):
    """Base class for all errors raised by loglap."""


class ConfigurationError(LoglapError, ValueError):
    """Invalid problem setup (mesh, weight, config file). CLI exit code 2."""


class NumericError(LoglapError, ArithmeticError):
    """A numerical stage failed (quadrature, factorization, bracketing). CLI exit code 3.

    ``stage`` names the failing stage, ``estimate`` carries the best value
    reached when one exists.
    """

    def __init__(self, message: str, *, stage: str = "", estimate: float | None = None):
        super().__init__(message)
        self.stage = stage
        self.estimate = estimate
