"""Exception hierarchy shared by every module."""


class SymthermError(Exception):
    """Base class for all library errors."""


class NonHermitianError(SymthermError, ValueError):
    """Raised when an operator that must be Hermitian is not."""


class SymmetryError(SymthermError, ValueError):
    """Raised for malformed group data or operators that break a declared symmetry."""


class SectorError(SymthermError, ValueError):
    """Raised when a charge sector is empty or not admissible for an operation."""


class SupportError(SymthermError, ValueError):
    """Raised when a state has weight outside the support of a reference state."""


class ParityError(SymthermError, ValueError):
    """Raised when a fermionic operator violates even fermion parity."""


class ConfigError(SymthermError, ValueError):
    """Raised by the file loaders and the CLI for invalid configuration."""


class NumericError(SymthermError, ArithmeticError):
    """Raised when a numerical routine fails to converge."""
