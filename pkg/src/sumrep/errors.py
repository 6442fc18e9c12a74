"""Exception types shared across the package.

The CLI maps these onto exit code 2 (usage/input error); mathematically
negative verdicts are reported through return values, never exceptions.
"""


class SumrepError(Exception):
    """Base class for all package-specific errors."""


class ParameterError(SumrepError, ValueError):
    """Invalid or inconsistent operation parameters (h, ell, s, mode, ...)."""


class NegativeElementError(SumrepError, ValueError):
    """A set was given a negative element."""


class RangeOverflowError(SumrepError, OverflowError):
    """An operation would leave the unsigned 64-bit range (h*max, h^k, ...)."""


class CountOverflowError(SumrepError, OverflowError):
    """A representation count would not fit in unsigned 64 bits."""


class WindowError(SumrepError, ValueError):
    """An empty or malformed verification window."""


class PrefixTooShortError(SumrepError, ValueError):
    """The given prefix has no element large enough for the requested threshold."""


class CertificateError(SumrepError):
    """A certificate could not be produced or failed independent re-validation."""


class SetFileError(SumrepError, ValueError):
    """A set file could not be parsed; carries the offending line number."""

    def __init__(self, message: str, line_number: int | None = None):
        super().__init__(message)
        self.line_number = line_number
