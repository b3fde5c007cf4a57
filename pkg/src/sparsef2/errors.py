"""Exception types shared across the package."""


class SparseF2Error(Exception):
    """Base class for all package errors."""


class InputError(SparseF2Error, ValueError):
    """Rejected input: bad dimensions, out-of-range parameters, malformed data."""


class DimensionError(InputError):
    """Operands have incompatible shapes."""


class ValidationError(InputError):
    """A loaded or constructed object violates a type invariant."""


class ParseError(InputError):
    """Malformed instance file."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ConfigError(InputError):
    """Inconsistent or infeasible configuration for a construction."""


class WitnessError(InputError):
    """A value presented as a witness does not satisfy the instance."""


class ResourceError(SparseF2Error):
    """An enumeration or memory cap would be exceeded."""


class GenerationError(SparseF2Error):
    """A randomized construction exhausted its retry budget."""
