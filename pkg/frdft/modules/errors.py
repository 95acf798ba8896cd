"""
Error hierarchy for the fractional DFT toolkit.

Every exception carries the exit status the command line reports for it:
0 success, 1 verification failure, 2 parse/usage, 3 conditioning, 4 resource cap.
"""

from typing import Optional


class FrdftError(Exception):
    """Base class for all toolkit errors."""
    exit_code = 1


class InvalidInputError(FrdftError, ValueError):
    """Empty signals, dimension mismatches and other malformed arguments."""
    exit_code = 2


class SignalFileError(InvalidInputError):
    """A signal file that does not parse; remembers the offending line."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class UnsupportedParityError(InvalidInputError):
    """Requested quantity is only defined for even lengths."""


class ConditioningError(FrdftError, ArithmeticError):
    """Rotation angle too close to +-pi for the raw chirp path."""
    exit_code = 3


class ResourceCapError(FrdftError):
    """Dense matrix larger than the configured size cap."""
    exit_code = 4


class VerificationError(FrdftError):
    """At least one asserted property of the verification suite failed."""
    exit_code = 1


class ConfigurationError(FrdftError):
    """Invalid settings."""
    exit_code = 2
