"""Exception hierarchy shared by the solvers and the command line."""


class RiskfrontError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class InputError(RiskfrontError, ValueError):
    """Malformed or inconsistent input data (dimension mismatch, bad rows)."""

    exit_code = 2


class ConfigurationError(RiskfrontError, ValueError):
    """Invalid scenario, profile or solver configuration."""

    exit_code = 2


class CapacityError(RiskfrontError):
    """Exhaustive enumeration would exceed the configured size guard."""

    exit_code = 3


class InfeasibleError(RiskfrontError):
    """No distribution satisfies the constraints of the scenario."""

    exit_code = 4


class ExtrapolationError(InputError):
    """A query falls outside the range covered by the interpolation grid."""
