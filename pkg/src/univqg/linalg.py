"""Dense complex matrix helpers with an explicit tolerance policy.

All equality decisions are relative to a matrix norm (Frobenius unless noted)
and go through a single :class:`Tolerance` record.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
import numpy.typing as npt

from .errors import InvalidInput, NotHermitian, Singular

ComplexMatrix = npt.NDArray[np.complex128]


@dataclass(frozen=True)
class Tolerance:
    """Tolerances threaded through every numerical decision.

    Parameters
    ----------
    eq : float
        Relative tolerance for scalar and matrix equality.
    cluster : float
        Angular tolerance (radians) used when grouping eigenvalue phases.
    singular : float
        Invertibility floor, relative to the largest singular value.
    """

    eq: float = 1e-9
    cluster: float = 1e-7
    singular: float = 1e-12

    def __post_init__(self) -> None:
        for name in ("eq", "cluster", "singular"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"tolerance {name} must be positive, got {value!r}")
        if self.eq >= 1e-2:
            raise ValueError(f"tolerance eq must be < 1e-2, got {self.eq!r}")

    @classmethod
    def from_eq(cls, eq: float) -> "Tolerance":
        """Derive the full record from one knob (cluster=100*eq, singular=eq*1e-3)."""
        return cls(eq=eq, cluster=100 * eq, singular=eq * 1e-3)


DEFAULT_TOL = Tolerance()


def as_matrix(q) -> ComplexMatrix:
    """Coerce ``q`` to a finite square complex128 array (copy)."""
    try:
        arr = np.array(q, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"cannot interpret input as a complex matrix: {exc}") from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise InvalidInput(f"expected a non-empty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInput("matrix has non-finite entries")
    return arr


def norm(q: ComplexMatrix) -> float:
    return float(np.linalg.norm(q))


def dagger(q: ComplexMatrix) -> ComplexMatrix:
    return q.conj().T


def is_invertible(q: ComplexMatrix, tol: Tolerance = DEFAULT_TOL) -> bool:
    s = np.linalg.svd(q, compute_uv=False)
    return bool(s[-1] > tol.singular * s[0])


def require_invertible(q: ComplexMatrix, tol: Tolerance = DEFAULT_TOL) -> None:
    s = np.linalg.svd(q, compute_uv=False)
    if not s[-1] > tol.singular * s[0]:
        raise Singular(
            f"matrix is not invertible: smallest singular value {s[-1]:.3e} "
            f"vs largest {s[0]:.3e}"
        )


def is_hermitian(q: ComplexMatrix, tol: Tolerance = DEFAULT_TOL) -> bool:
    return norm(q - dagger(q)) <= tol.eq * norm(q)


def eigh_descending(q: ComplexMatrix) -> tuple[npt.NDArray[np.float64], ComplexMatrix]:
    """Spectral decomposition of a hermitian matrix, eigenvalues descending.

    Eigenvector phases are fixed so the largest-magnitude entry of each column
    (first one on ties) is real and positive; this makes the basis
    reproducible for simple eigenvalues.
    """
    h = (q + dagger(q)) / 2
    w, v = np.linalg.eigh(h)
    w = w[::-1].copy()
    v = v[:, ::-1].copy()
    for j in range(v.shape[1]):
        col = v[:, j]
        mag = np.abs(col)
        k = int(np.flatnonzero(mag >= mag.max() * (1 - 1e-9))[0])
        v[:, j] = col * (abs(col[k]) / col[k])
    return w, v


def eigvals_hermitian(q, tol: Tolerance = DEFAULT_TOL) -> tuple[float, ...]:
    """Eigenvalues of a hermitian matrix, with multiplicity, sorted descending.

    Raises
    ------
    NotHermitian
        If ``||Q - Q*|| > tol.eq * ||Q||``.
    """
    q = as_matrix(q)
    if not is_hermitian(q, tol):
        raise NotHermitian("matrix is not hermitian within tolerance")
    w, _ = eigh_descending(q)
    return tuple(float(x) for x in w)


def polar_decompose(q, tol: Tolerance = DEFAULT_TOL) -> tuple[ComplexMatrix, ComplexMatrix]:
    """Right polar decomposition ``Q = U @ P`` with ``P = sqrt(Q* Q)``.

    Computed from the SVD ``Q = W diag(s) Vh``: ``U = W Vh`` and
    ``P = Vh* diag(s) Vh``.
    """
    q = as_matrix(q)
    w, s, vh = np.linalg.svd(q)
    if not s[-1] > tol.singular * s[0]:
        raise Singular(f"polar decomposition needs an invertible matrix (sigma_min={s[-1]:.3e})")
    u = w @ vh
    p = dagger(vh) @ np.diag(s) @ vh
    p = (p + dagger(p)) / 2
    return u, p


class Predicates(NamedTuple):
    is_normal: bool
    is_unitary: bool
    is_positive: bool
    scalar_of_identity: Optional[complex]


def predicates(q, tol: Tolerance = DEFAULT_TOL) -> Predicates:
    """Structural report on ``q``; never raises for a well-formed square matrix."""
    q = as_matrix(q)
    n = q.shape[0]
    nq = norm(q)
    qd = dagger(q)
    normal = norm(q @ qd - qd @ q) <= tol.eq * nq * nq
    unitary = norm(qd @ q - np.eye(n)) <= tol.eq * np.sqrt(n)
    positive = False
    if is_hermitian(q, tol):
        w = np.linalg.eigvalsh((q + qd) / 2)
        positive = bool(w[0] > tol.singular * max(abs(w[-1]), abs(w[0])))
    lam = complex(np.trace(q) / n)
    scalar = lam if norm(q - lam * np.eye(n)) <= tol.eq * nq else None
    return Predicates(bool(normal), bool(unitary), positive, scalar)


def is_positive(q: ComplexMatrix, tol: Tolerance = DEFAULT_TOL) -> bool:
    return predicates(q, tol).is_positive
