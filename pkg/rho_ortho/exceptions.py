"""
Error types raised by the rho_ortho package.

Errors split in two families: InputError for problems with what the caller
passed in (the CLI exits with code 1), and NumericalError for computations
that could not be completed (the CLI exits with code 2).
"""


class RhoOrthoError(Exception):
    """Base class for all package errors."""


class InputError(RhoOrthoError, ValueError):
    """The input cannot be used for the requested computation."""


class NumericalError(RhoOrthoError):
    """A numerical routine failed to produce a trustworthy result."""


class MatrixFormatError(InputError):
    """A matrix or fixture document does not match its JSON schema."""


class DimensionError(InputError):
    """Operand shapes are incompatible with the operation."""


class ZeroOperator(InputError):
    """The operator is zero where a nonzero operator is required."""


class ZeroVector(InputError):
    """The vector is zero where a nonzero vector is required."""


class ZeroBasePoint(InputError):
    """A norm derivative was requested at the zero vector in strict mode."""


class UnsupportedDimension(InputError):
    """The routine is only defined for a restricted range of dimensions."""


class BadSequence(InputError):
    """A diagonal sequence does not increase in modulus toward 1."""


class NotHermitian(NumericalError):
    """The matrix handed to the Hermitian eigensolver is not Hermitian."""


class NoConvergence(NumericalError):
    """The Jacobi sweep limit was reached before convergence."""


class ConstructionFailed(NumericalError):
    """A witness construction did not verify."""


class ShiftFailed(NumericalError):
    """The partner shift of the right-symmetry probe did not converge."""
