"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: ConfigError (and ValueError) -> 2,
NumericError -> 3.
"""


class FebbError(Exception):
    """Base class for package-specific failures."""


class ConfigError(FebbError):
    """Bad input data, inadmissible grid, or malformed configuration."""


class NumericError(FebbError):
    """Numerical failure: singular system or residual out of tolerance."""


class SingularMatrixError(NumericError):
    """Factorization hit an exactly zero (or subnormal) pivot column."""
