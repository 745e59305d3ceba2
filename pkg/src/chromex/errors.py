"""Exception types shared across the package."""


class ChromexError(Exception):
    """Base class for all library errors."""


class ParameterError(ChromexError, ValueError):
    """A family parameter or argument is outside its admissible domain."""


class UnsupportedFamilyError(ChromexError, ValueError):
    """The requested operation has no implementation for this family."""


class HorizonError(ChromexError, ValueError):
    """A table or matrix horizon is too small for the requested order."""


class ConvergenceError(ChromexError, ArithmeticError):
    """A series failed to reach the requested tolerance within max_terms."""


class NumericError(ChromexError, ArithmeticError):
    """A numeric guard tripped (overflow, failed decomposition, ...)."""
