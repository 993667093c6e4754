"""Exception types shared across the package.

The CLI maps these onto exit codes: DataError to 2, ConvergenceError to 3.
Plain ValueError (bad arguments, domain violations) maps to 1.
"""


class DataError(Exception):
    """Raised when input data cannot be parsed or fails validation."""


class ConvergenceError(Exception):
    """Raised when an iterative numerical procedure fails to converge."""
