"""Scale normalizations for A_u and B_u parameters and the mu-signature."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotPositive, NotScalarQQbar, OddNegative, PairingViolation, Singular
from .linalg import DEFAULT_TOL, ComplexMatrix, Tolerance, as_matrix, norm, predicates


@dataclass(frozen=True)
class AuNormalization:
    c: float
    qn: ComplexMatrix


@dataclass(frozen=True)
class BuNormalization:
    r: float
    c: int
    qn: ComplexMatrix
    lam: float


@dataclass(frozen=True)
class MuSignature:
    n: int
    mu: tuple[float, ...]

    @property
    def k(self) -> int:
        return self.n // 2

    def diagonal(self) -> np.ndarray:
        """Canonical ``|Q|`` diagonal: mu, [1 if n odd], then reversed inverses."""
        mu = np.asarray(self.mu, dtype=float)
        middle = [1.0] if self.n % 2 else []
        return np.concatenate([mu, middle, 1.0 / mu[::-1]])


def normalize_au(q, tol: Tolerance = DEFAULT_TOL) -> AuNormalization:
    """Scale a positive matrix so that ``Tr(Qn) == Tr(Qn^-1)``."""
    q = as_matrix(q)
    if not predicates(q, tol).is_positive:
        raise NotPositive("A_u normalization needs a positive definite matrix")
    w = np.linalg.eigvalsh((q + q.conj().T) / 2)
    c = float(np.sqrt(np.sum(1.0 / w) / np.sum(w)))
    return AuNormalization(c=c, qn=c * q)


def qqbar_scalar(q: ComplexMatrix, tol: Tolerance = DEFAULT_TOL) -> float:
    """Return real ``lam`` with ``Q conj(Q) = lam I``; raise otherwise.

    ``lam`` is the mean of the diagonal of ``Q conj(Q)``, accepted after the
    off-scalar part is checked to be small relative to ``||Q||^2``.
    """
    n = q.shape[0]
    m = q @ q.conj()
    scale = norm(q) ** 2
    lam = complex(np.trace(m) / n)
    off = norm(m - lam * np.eye(n))
    if off > tol.eq * scale or abs(lam.imag) > tol.eq * scale:
        raise NotScalarQQbar(
            f"Q conj(Q) is not a real scalar matrix (off-scalar norm {off:.3e})",
            diagnostics=[f"diag(Q conj(Q)) = {np.round(np.diag(m), 12).tolist()}"],
        )
    if abs(lam.real) <= tol.singular * scale:
        raise Singular("Q conj(Q) vanishes; Q is not invertible")
    return lam.real


def normalize_bu(q, tol: Tolerance = DEFAULT_TOL) -> BuNormalization:
    """Scale ``Q`` (with ``Q conj(Q) = lam I``) so that ``Qn conj(Qn) = c I``, ``c = +-1``."""
    q = as_matrix(q)
    lam = qqbar_scalar(q, tol)
    n = q.shape[0]
    if n % 2 and lam < 0:
        raise OddNegative(f"Q conj(Q) = {lam:.6g} I with odd n={n}; impossible for genuine input")
    r = 1.0 / np.sqrt(abs(lam))
    return BuNormalization(r=float(r), c=1 if lam > 0 else -1, qn=r * q, lam=lam)


def mu_signature_from_spectrum(s, tol: Tolerance = DEFAULT_TOL) -> MuSignature:
    s = np.sort(np.asarray(s, dtype=float))[::-1]
    n = len(s)
    k = n // 2
    products = s * s[::-1]
    worst = float(np.max(np.abs(products - 1.0)))
    if worst > tol.eq * max(1.0, float(s[0])):
        raise PairingViolation(
            f"|Q| spectrum does not pair as (mu, 1/mu): worst |s_i s_(n-i) - 1| = {worst:.3e}",
            diagnostics=[f"spectrum = {s.tolist()}"],
        )
    # geometric mean of each pair damps roundoff in the small partner
    mu = np.sqrt(s[:k] / s[::-1][:k])
    mu = np.where(np.abs(mu - 1.0) <= tol.eq, 1.0, mu)
    return MuSignature(n=n, mu=tuple(float(x) for x in mu))


def mu_signature(qn, tol: Tolerance = DEFAULT_TOL) -> MuSignature:
    """The ``mu_1 >= ... >= mu_k >= 1`` half of the spectrum of ``|Qn|``.

    Input is rescaled through :func:`normalize_bu` first, so any ``Q`` with
    scalar ``Q conj(Q)`` is accepted and the result does not depend on scale.
    """
    nb = normalize_bu(qn, tol)
    s = np.linalg.svd(nb.qn, compute_uv=False)
    return mu_signature_from_spectrum(s, tol)
