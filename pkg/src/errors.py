"""Exceptions raised by the library.

Every error derives from QmonoError and from the closest builtin, so callers
can catch either. Only the CLI maps them to exit codes.
"""
from typing import Optional


class QmonoError(Exception):
    """Base class for all library errors."""


class ShapeError(QmonoError, ValueError):
    """Array shape or subsystem dimensions do not fit the operation."""


class IndexOutOfRange(QmonoError, IndexError):
    """A subsystem index does not exist."""


class NotHermitian(QmonoError, ValueError):
    """Matrix is not Hermitian within tolerance."""


class NotPSD(QmonoError, ValueError):
    """Matrix has an eigenvalue below the PSD tolerance."""


class NotNormalized(QmonoError, ValueError):
    """State or amplitude vector does not have unit norm."""


class NotIsometry(QmonoError, ValueError):
    """Matrix U does not satisfy U^dagger U = I."""


class BadCut(QmonoError, ValueError):
    """Bipartition does not split the subsystems of the state."""


class BadSpec(QmonoError, ValueError):
    """Generator specification is inconsistent."""


class OutOfRange(QmonoError, ValueError):
    """Scalar argument outside its domain."""


class DimensionTooLarge(QmonoError, ValueError):
    """Requested subspace exceeds the Gerstenhaber bound d(d-1)/2."""


class PivotSingular(QmonoError, ArithmeticError):
    """Pivot vector of a pair rotation has vanishing determinant."""


class AllSingular(QmonoError, ArithmeticError):
    """No eigenvector has a nonzero determinant (G vanishes)."""


class NonMonogamousWitness(QmonoError, ArithmeticError):
    """One ratio equals one while the other is positive: no finite exponent exists."""

    def __init__(self, x1: float, x2: float):
        super().__init__(f"no finite exponent for ratios x1={x1!r}, x2={x2!r}")
        self.x1 = x1
        self.x2 = x2


class ParseError(QmonoError, ValueError):
    """State or config file could not be parsed."""

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        location = ""
        if path is not None:
            location = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(f"{location}{message}")
        self.path = path
        self.line = line


class InvariantViolation(QmonoError, ValueError):
    """Deserialized object violates a type invariant."""

    def __init__(self, invariant: str, detail: str = ""):
        super().__init__(f"invariant '{invariant}' violated" + (f": {detail}" if detail else ""))
        self.invariant = invariant


class ConfigError(QmonoError, ValueError):
    """Run configuration is invalid."""
