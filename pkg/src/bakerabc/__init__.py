"""Explicit abc-conjecture constants and the finite verifications that use them."""

from .report import Status, VerificationReport
from .verified import DEFAULT_PRECISION, VerifiedReal

__version__ = "0.1.0"

__all__ = ["DEFAULT_PRECISION", "Status", "VerificationReport", "VerifiedReal", "__version__"]
