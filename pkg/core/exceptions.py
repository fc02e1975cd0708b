#!/usr/bin/env python3
"""
Exception hierarchy for the network analysis library.

Parameter problems derive from ValueError so callers that only know the
standard library still catch them; numeric failures carry the name of the
operation that failed so the CLI can report it.
"""


class NetworkAnalysisError(Exception):
    """Base class for every error raised by the library"""


class DomainError(NetworkAnalysisError, ValueError):
    """A parameter or argument lies outside its admissible domain"""

    def __init__(self, parameter, message):
        self.parameter = parameter
        self.message = message
        super().__init__(f"{parameter}: {message}")


class ConfigError(DomainError):
    """An experiment or simulation configuration is invalid"""


class WrongPattern(DomainError):
    """A sector-only operation received another radiation pattern"""

    def __init__(self, operation, kind):
        self.operation = operation
        super().__init__("pattern", f"{operation} requires an ideal sector, got {kind}")


class NumericFailure(NetworkAnalysisError):
    """A numerical routine failed to produce a trustworthy result"""

    def __init__(self, operation, message):
        self.operation = operation
        super().__init__(f"{operation}: {message}")


class NoRoot(NumericFailure):
    """A root-finding problem has no admissible solution"""


class QuadratureNotConverged(NumericFailure):
    """Two quadrature orders disagree beyond tolerance"""


class BracketError(NumericFailure):
    """An optimum sits on the edge of its search bracket"""


class NonConcaveWarning(UserWarning):
    """An error model violates the concavity hypothesis of a result"""
