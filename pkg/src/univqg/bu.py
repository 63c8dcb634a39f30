"""Isomorphism classification of B_u(Q) for Q with Q conj(Q) real scalar.

A normalized parameter is brought to the form ``u_part @ diag(D)`` with
``D`` the canonical descending ``|Q|`` spectrum. Two such forms are
equivalent iff the mu-signatures agree and ``u2 = z S^t u1 S`` for a unit
``z`` and a unitary ``S`` commuting with ``diag(D)``. When ``D`` has distinct
entries ``S`` is diagonal and the question reduces to the phase gauge
problem in :mod:`univqg.phase`; otherwise ``S`` ranges over a block unitary
group and a seeded numerical search is used.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np
from scipy.optimize import least_squares

from .errors import EquationResidual
from .linalg import (
    DEFAULT_TOL,
    ComplexMatrix,
    Tolerance,
    eigh_descending,
    norm,
    polar_decompose,
)
from .normal_forms import MuSignature, mu_signature_from_spectrum, normalize_bu
from .phase import PhaseProfile, phase_profile_solve

Verdict = Literal["yes", "no", "undecided"]


@dataclass(frozen=True, eq=False)
class BuDescriptor:
    """Class data ``(n, c, mu, u_part)`` plus the basis that produced it.

    ``u_part @ diag(D)`` equals ``basis.T @ qn @ basis``, a representative of
    the class with ``|Q|`` diagonal and canonical. ``u_part`` is one
    representative, not a canonical form.
    """

    n: int
    c: int
    mu: MuSignature
    u_part: ComplexMatrix
    basis: ComplexMatrix
    qn: ComplexMatrix

    @property
    def d(self) -> np.ndarray:
        return self.mu.diagonal()

    def representative(self) -> ComplexMatrix:
        return self.u_part @ np.diag(self.d)

    def equation_residual(self) -> float:
        d = self.d
        return norm(self.u_part @ np.diag(d) - self.c * np.diag(1.0 / d) @ self.u_part.T)


@dataclass(frozen=True, eq=False)
class BuIsomorphism:
    """Decision with witness: ``qn2 = z * s.T @ qn1 @ s`` on normalized inputs."""

    verdict: Verdict
    reason: str
    s: Optional[ComplexMatrix] = None
    z: Optional[complex] = None
    residual: Optional[float] = None

    def __bool__(self) -> bool:
        return self.verdict == "yes"


def bu_descriptor(q, tol: Tolerance = DEFAULT_TOL) -> BuDescriptor:
    nb = normalize_bu(q, tol)
    qn = nb.qn
    n = qn.shape[0]
    u, p = polar_decompose(qn, tol)
    w, v = eigh_descending(p)
    mu = mu_signature_from_spectrum(w, tol)
    desc = BuDescriptor(n=n, c=nb.c, mu=mu, u_part=v.T @ u @ v, basis=v, qn=qn)
    resid = desc.equation_residual()
    if resid > tol.eq * n * float(desc.d[0]):
        raise EquationResidual(
            f"u D = c D^-1 u^t fails with residual {resid:.3e}",
            diagnostics=[f"mu = {list(mu.mu)}", f"c = {nb.c}"],
        )
    return desc


def equal_blocks(d: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> list[list[int]]:
    """Group consecutive entries of a descending diagonal that agree within tol.eq."""
    blocks = [[0]]
    for i in range(1, len(d)):
        if abs(d[i] - d[i - 1]) <= tol.eq * max(abs(d[i]), abs(d[i - 1])):
            blocks[-1].append(i)
        else:
            blocks.append([i])
    return blocks


def diagonal_orbit_witness(
    u1: ComplexMatrix,
    u2: ComplexMatrix,
    atol: float,
    zero_tol: float,
) -> Optional[tuple[np.ndarray, float]]:
    """Find unit ``w`` with ``u2 = diag(w) @ u1 @ diag(w)``, or ``None``.

    A global unit ``z`` is absorbed into ``w`` (``w_i = sqrt(z) s_i``), so
    this decides ``u2 = z S^t u1 S`` over diagonal unitaries ``S``.
    """
    support1 = np.abs(u1) > zero_tol
    support2 = np.abs(u2) > zero_tol
    if not np.array_equal(support1, support2):
        return None
    if np.max(np.abs(np.abs(u1) - np.abs(u2))) > atol:
        return None
    ratios, weights = {}, {}
    for i, j in zip(*np.nonzero(support1)):
        r = u2[i, j] / u1[i, j]
        ratios[(int(i), int(j))] = r / abs(r)
        weights[(int(i), int(j))] = float(abs(u1[i, j]))
    w = phase_profile_solve(PhaseProfile(ratios, weights), u1.shape[0], tol=atol)
    if w is None:
        return None
    w = np.asarray(w)
    residual = norm(u2 - np.diag(w) @ u1 @ np.diag(w))
    if residual > atol:
        return None
    return w, residual


def _hermitian(x: np.ndarray, m: int) -> np.ndarray:
    h = np.zeros((m, m), dtype=complex)
    h[np.diag_indices(m)] = x[:m]
    iu = np.triu_indices(m, 1)
    k = len(iu[0])
    h[iu] = x[m : m + k] + 1j * x[m + k : m + 2 * k]
    return h + np.triu(h, 1).conj().T


def _expi(h: np.ndarray) -> np.ndarray:
    lam, v = np.linalg.eigh(h)
    return (v * np.exp(1j * lam)) @ v.conj().T


def block_orbit_search(
    u1: ComplexMatrix,
    u2: ComplexMatrix,
    blocks: list[list[int]],
    atol: float,
    seed: int = 0,
    restarts: int = 16,
) -> tuple[ComplexMatrix, complex, float]:
    """Minimize ``||u2 - z S^t u1 S||`` over unit ``z`` and block-unitary ``S``.

    Each block is parameterized as ``S0_b @ exp(i H_b)`` with ``H_b``
    hermitian and a random Haar start ``S0_b``; Levenberg-Marquardt is run
    from ``restarts`` seeded starts. Returns the best ``(S, z, residual)``.
    """
    from .generators import random_unitary

    rng = np.random.default_rng(seed)
    n = u1.shape[0]
    sizes = [len(b) for b in blocks]

    def assemble(x: np.ndarray, s0: list[np.ndarray]) -> tuple[np.ndarray, complex]:
        s = np.zeros((n, n), dtype=complex)
        pos = 1
        for b, m, base in zip(blocks, sizes, s0):
            s[np.ix_(b, b)] = base @ _expi(_hermitian(x[pos : pos + m * m], m))
            pos += m * m
        return s, complex(np.exp(1j * x[0]))

    best = (np.eye(n, dtype=complex), 1.0 + 0j, norm(u2 - u1))
    for attempt in range(restarts):
        if attempt == 0:
            s0 = [np.eye(m, dtype=complex) for m in sizes]
            phi0 = 0.0
        else:
            s0 = [random_unitary(m, rng) for m in sizes]
            phi0 = 2 * np.pi * rng.random()

        def resid(x: np.ndarray) -> np.ndarray:
            s, z = assemble(x, s0)
            r = u2 - z * s.T @ u1 @ s
            return np.concatenate([r.real.ravel(), r.imag.ravel()])

        x0 = np.zeros(1 + sum(m * m for m in sizes))
        x0[0] = phi0
        sol = least_squares(resid, x0, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15)
        s, z = assemble(sol.x, s0)
        r = norm(u2 - z * s.T @ u1 @ s)
        if r < best[2]:
            best = (s, z, r)
        if r <= atol:
            break
    return best


def _finish(
    d1: BuDescriptor, d2: BuDescriptor, s: ComplexMatrix, z: complex, reason: str
) -> BuIsomorphism:
    # lift the witness from the diagonal representatives to the normalized inputs
    s_full = d1.basis @ s @ d2.basis.conj().T
    residual = norm(d2.qn - z * s_full.T @ d1.qn @ s_full) / norm(d1.qn)
    return BuIsomorphism("yes", reason, s=s_full, z=z, residual=residual)


def bu_isomorphic_descriptors(
    d1: BuDescriptor,
    d2: BuDescriptor,
    tol: Tolerance = DEFAULT_TOL,
    seed: int = 0,
    restarts: int = 16,
) -> BuIsomorphism:
    if d1.n != d2.n:
        return BuIsomorphism("no", f"sizes differ ({d1.n} vs {d2.n})")
    if d1.c != d2.c:
        return BuIsomorphism("no", f"signs differ (c={d1.c} vs c={d2.c})")
    mu1, mu2 = np.asarray(d1.mu.mu), np.asarray(d2.mu.mu)
    if np.any(np.abs(mu1 - mu2) > tol.eq * np.maximum(mu1, mu2)):
        return BuIsomorphism("no", f"mu-signatures differ ({list(mu1)} vs {list(mu2)})")
    n = d1.n
    u1, u2 = d1.u_part, d2.u_part
    atol = tol.eq * n
    blocks = equal_blocks(d1.d, tol)

    # singular values of each sub-block u[b, b'] survive u -> z S^t u S
    for b in blocks:
        for bb in blocks:
            sv1 = np.linalg.svd(u1[np.ix_(b, bb)], compute_uv=False)
            sv2 = np.linalg.svd(u2[np.ix_(b, bb)], compute_uv=False)
            if np.max(np.abs(sv1 - sv2)) > atol:
                return BuIsomorphism("no", "block singular values of the unitary parts differ")

    if all(len(b) == 1 for b in blocks):
        found = diagonal_orbit_witness(u1, u2, atol, zero_tol=tol.eq * norm(u1))
        if found is not None:
            w, _ = found
            return _finish(d1, d2, np.diag(w), 1.0 + 0j, "phase gauge solved")
        d = d1.d
        gap = float(np.min(np.abs(np.diff(d)) / d[:-1])) if n > 1 else 1.0
        if gap < np.sqrt(tol.eq):
            return BuIsomorphism(
                "undecided", f"phase gauge infeasible but |Q| spectrum nearly degenerate (gap {gap:.2e})"
            )
        return BuIsomorphism("no", "phase gauge infeasible")

    s, z, r = block_orbit_search(u1, u2, blocks, atol, seed=seed, restarts=restarts)
    if r <= atol:
        return _finish(d1, d2, s, z, "block stabilizer search converged")
    return BuIsomorphism(
        "undecided", f"block stabilizer search did not converge (best residual {r:.3e})", residual=r
    )


def bu_isomorphic(
    q1, q2, tol: Tolerance = DEFAULT_TOL, seed: int = 0, restarts: int = 16
) -> BuIsomorphism:
    """Decide whether ``B_u(q1)`` and ``B_u(q2)`` are isomorphic.

    Returns ``yes`` with a witness, ``no`` when an invariant or an exact
    phase argument separates them, and ``undecided`` when the numerical
    block search fails to converge.
    """
    return bu_isomorphic_descriptors(
        bu_descriptor(q1, tol), bu_descriptor(q2, tol), tol, seed=seed, restarts=restarts
    )
