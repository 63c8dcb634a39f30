"""Isomorphism classification of A_u(Q) for positive Q.

Two normalized positive parameters give isomorphic quantum groups exactly
when their descending spectra agree, or one is the reversed elementwise
inverse of the other. The canonical invariant is the lexicographically
smaller of those two tuples.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DEFAULT_TOL, Tolerance
from .normal_forms import normalize_au


@dataclass(frozen=True)
class AuInvariant:
    n: int
    spectrum: tuple[float, ...]

    def dual(self) -> tuple[float, ...]:
        return reverse_inverse(self.spectrum)


@dataclass(frozen=True)
class FClassPair:
    """F-matrix diagonals for the classes of ``u`` and its conjugate."""

    f_u: tuple[float, ...]
    f_ubar: tuple[float, ...]


def reverse_inverse(s) -> tuple[float, ...]:
    return tuple(float(1.0 / x) for x in reversed(tuple(s)))


def spectra_close(a, b, tol: Tolerance = DEFAULT_TOL) -> bool:
    if len(a) != len(b):
        return False
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return bool(np.all(np.abs(a - b) <= tol.eq * np.maximum(np.abs(a), np.abs(b))))


def _lex_less(a, b, tol: Tolerance) -> bool:
    for x, y in zip(a, b):
        if abs(x - y) > tol.eq * max(abs(x), abs(y)):
            return x < y
    return False


def normalized_spectrum(q, tol: Tolerance = DEFAULT_TOL) -> tuple[float, ...]:
    qn = normalize_au(q, tol).qn
    w = np.linalg.eigvalsh((qn + qn.conj().T) / 2)[::-1]
    return tuple(float(x) for x in w)


def au_invariant(q, tol: Tolerance = DEFAULT_TOL) -> AuInvariant:
    """Canonical class invariant of ``A_u(Q)``.

    Raises
    ------
    NotPositive
        If ``q`` is not positive definite.
    """
    s = normalized_spectrum(q, tol)
    t = reverse_inverse(s)
    return AuInvariant(n=len(s), spectrum=t if _lex_less(t, s, tol) else s)


def au_isomorphic(q1, q2, tol: Tolerance = DEFAULT_TOL) -> bool:
    # Same answer as comparing the two invariants, without the tie-break
    # in _lex_less being able to flip between nearly self-dual spectra.
    s1 = normalized_spectrum(q1, tol)
    s2 = normalized_spectrum(q2, tol)
    return spectra_close(s1, s2, tol) or spectra_close(reverse_inverse(s1), s2, tol)


def invariants_equal(a: AuInvariant, b: AuInvariant, tol: Tolerance = DEFAULT_TOL) -> bool:
    return a.n == b.n and (
        spectra_close(a.spectrum, b.spectrum, tol) or spectra_close(a.dual(), b.spectrum, tol)
    )


def class_f_matrices(q, tol: Tolerance = DEFAULT_TOL) -> FClassPair:
    f_u = normalized_spectrum(q, tol)
    f_ubar = tuple(sorted((1.0 / x for x in f_u), reverse=True))
    return FClassPair(f_u=f_u, f_ubar=f_ubar)
