"""
Exception hierarchy for the pricing engine.
"""
from typing import Optional


class PricingError(Exception):
    """Base class for every error raised by the pricer"""


class ParameterDomainError(PricingError, ValueError):
    """Model or contract parameters outside their admissible range"""


class IntervalError(PricingError, ValueError):
    """Truncation interval unusable for the requested evaluation"""


class DegreeError(PricingError, ValueError):
    """Degree budget too small for the requested approximant"""


class SolverError(PricingError):
    """Linear algebra failed to produce a usable null vector"""


class UnsupportedOperationError(PricingError):
    """Operation not defined for the given model or contract"""


class ReferenceUnavailableError(PricingError):
    """No reference method covers the requested model/contract"""


class ConfigError(PricingError):
    """Malformed run configuration"""

    def __init__(self, message: str, field: Optional[str] = None):
        self.field = field
        if field:
            message = f"{field}: {message}"
        super().__init__(message)
