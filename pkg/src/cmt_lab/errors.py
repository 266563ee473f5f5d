"""Exception hierarchy shared across the package.

Errors are grouped by how the batch CLI maps them to exit codes:
configuration problems (exit 2), numerical failures (exit 3) and
non-convergence (exit 4).
"""

from __future__ import annotations


class CmtLabError(Exception):
    """Base class for all package errors."""


class ValidationError(CmtLabError, ValueError):
    """A domain object was constructed with invalid field values."""


class ConfigError(CmtLabError, ValueError):
    """A run configuration file could not be parsed or is incomplete."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NumericsError(CmtLabError, ArithmeticError):
    """Base class for failures of the numerical model itself."""


class SingularDenominatorError(NumericsError):
    """The transmission denominator vanished at a drive frequency."""

    def __init__(self, omega: float, index: int | None = None):
        at = f"omega = {omega:.9g} GHz"
        if index is not None:
            at += f" (grid index {index})"
        super().__init__(f"transmission denominator is singular at {at}")
        self.omega = omega
        self.index = index


class IntegrationUnstableError(NumericsError):
    """Time integration blew up (the parameters produce net gain)."""


class RankDeficientError(NumericsError):
    """Calibration anchors do not constrain all model coefficients."""


class OutOfRangeError(CmtLabError, ValueError):
    """A geometry evaluation point lies outside the model's valid ranges."""


class NotConvergedError(CmtLabError, RuntimeError):
    """An iterative procedure did not reach its convergence criterion."""
