"""Semantic exception hierarchy for the package.

Library code raises these instead of bare ValueError/RuntimeError so that
the CLI and the HTTP service can map failures to exit codes / status codes
without string matching.
"""


class WeibullRecordsError(Exception):
    """Base error for this package."""


class ParameterDomainError(WeibullRecordsError, ValueError):
    """A distribution or inference parameter is outside its domain."""


class DataError(WeibullRecordsError, ValueError):
    """Input data violates the record-sample contract (nonpositive,
    nonfinite, or non-increasing values)."""


class InsufficientRecordsError(DataError):
    """Fewer than two records; every inference method needs n >= 1."""


class BudgetExceededError(WeibullRecordsError, RuntimeError):
    """A draw or evaluation budget was exhausted before completion."""


class BracketingError(WeibullRecordsError, RuntimeError):
    """A root bracket could not be established within the search cap."""


class ResolutionError(WeibullRecordsError, ValueError):
    """A Monte Carlo draw set is too small for the requested tail."""


class IntegrationError(WeibullRecordsError, RuntimeError):
    """Adaptive quadrature failed to converge within its evaluation cap."""


class NumericError(WeibullRecordsError, ArithmeticError):
    """A computation overflowed despite log-space evaluation."""


class ConfigurationError(WeibullRecordsError, ValueError):
    """A simulation configuration is invalid or exceeds the budget ceiling."""
