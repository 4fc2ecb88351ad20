"""Exception hierarchy shared by the coding library."""

from __future__ import annotations


class CodingError(ValueError):
    """Base class for every error raised by the coding library."""


# gf
class NotPrime(CodingError):
    """Raised when a field characteristic is not prime."""


class ReducibleModulus(CodingError):
    """Raised when a requested modulus is not monic irreducible of the right degree."""


class OrderOverflow(CodingError):
    """Raised when p^m exceeds the supported field order."""


class DivisionByZero(CodingError, ZeroDivisionError):
    """Raised when inverting the zero element."""


class FieldMismatch(CodingError):
    """Raised when two operands live in different fields."""


class NoSubfield(CodingError):
    """Raised when a requested subfield degree does not divide the field degree."""


# exactla
class NotSquare(CodingError):
    """Raised when a determinant is requested for a non-square matrix."""


class DimensionMismatch(CodingError):
    """Raised when matrix shapes are incompatible."""


class IndexOutOfRange(CodingError):
    """Raised when a row/column/position index is outside its range."""


class NotSorted(CodingError):
    """Raised when an index set is not strictly increasing."""


class RepeatedPoint(CodingError):
    """Raised when structured-matrix sample points collide."""


class TooManyRows(CodingError):
    """Raised when a matrix has more rows than a predicate admits."""


# completion
class BadSetSize(CodingError):
    """Raised when an enumerated column set has the wrong size or range."""


class TiesUnsupported(CodingError):
    """Raised when the matching test receives a pattern with tie constraints."""


# mrlrc
class FieldTooSmall(CodingError):
    """Raised when the base field cannot host the required distinct sample points."""


class ProfileViolation(CodingError):
    """Raised when locality parameters violate the construction's hypotheses."""


class DegreeTooSmall(CodingError):
    """Raised when the extension degree is below the guaranteed bound."""


class LengthMismatch(CodingError):
    """Raised when a message, codeword or mask has the wrong length."""


class Unrecoverable(CodingError):
    """Raised when the surviving coordinates do not determine the message."""


class InconsistentCodeword(CodingError):
    """Raised when a vector is not a codeword of the code it is paired with."""


# convmdp
class ParameterViolation(CodingError):
    """Raised when code parameters violate a construction's preconditions."""


class NoValidZ(CodingError):
    """Raised when no cubic element with the required minimal polynomial exists."""


class TooLarge(CodingError):
    """Raised when an exhaustive search would exceed its evaluation budget."""


class ParityCheckFailure(CodingError):
    """Raised when no full-rank parity-check matrix exists within the degree budget."""


class UnsupportedWindow(CodingError):
    """Raised when a sliding-window construct is requested for an unsupported window."""


__all__ = [
    "BadSetSize",
    "CodingError",
    "DegreeTooSmall",
    "DimensionMismatch",
    "DivisionByZero",
    "FieldMismatch",
    "FieldTooSmall",
    "InconsistentCodeword",
    "IndexOutOfRange",
    "LengthMismatch",
    "NoSubfield",
    "NoValidZ",
    "NotPrime",
    "NotSorted",
    "NotSquare",
    "OrderOverflow",
    "ParameterViolation",
    "ParityCheckFailure",
    "ProfileViolation",
    "ReducibleModulus",
    "RepeatedPoint",
    "TiesUnsupported",
    "TooLarge",
    "TooManyRows",
    "Unrecoverable",
    "UnsupportedWindow",
]
