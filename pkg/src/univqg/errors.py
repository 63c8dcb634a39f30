"""Exception hierarchy.

Every error carries a stable machine-readable ``code`` so the command line
front end can report it without string matching.
"""

from __future__ import annotations


class UQGError(Exception):
    code = "error"

    def __init__(self, message: str = "", diagnostics: list[str] | None = None):
        super().__init__(message or self.__class__.__name__)
        self.diagnostics = list(diagnostics or [])


class InvalidInput(UQGError):
    """Malformed matrix data (non-square, non-finite, wrong shape)."""

    code = "invalid_input"


class InvalidPartition(InvalidInput):
    code = "invalid_partition"


class NotHermitian(UQGError):
    code = "not_hermitian"


class Singular(UQGError):
    code = "singular"


class NotPositive(UQGError):
    code = "not_positive"


class NotScalarQQbar(UQGError):
    """``Q @ conj(Q)`` is not a real multiple of the identity."""

    code = "not_scalar_qqbar"


class OddNegative(UQGError):
    code = "odd_negative"


class PairingViolation(UQGError):
    code = "pairing_violation"


class EquationResidual(UQGError):
    code = "equation_residual"


class BadN(UQGError):
    code = "bad_n"


class UnsupportedInput(UQGError):
    """The input lies outside the constructively resolved cases."""

    code = "unsupported_input"


class AmbiguousClustering(UnsupportedInput):
    code = "ambiguous_clustering"


class Undecidable(UQGError):
    code = "undecidable"
