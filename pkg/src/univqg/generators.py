"""Random parameter generators used by the property and acceptance tests."""

from __future__ import annotations

import numpy as np
from scipy.stats import unitary_group

from .linalg import ComplexMatrix


def random_unitary(n: int, rng: np.random.Generator) -> ComplexMatrix:
    if n == 1:
        return np.array([[np.exp(2j * np.pi * rng.random())]])
    return unitary_group.rvs(n, random_state=rng)


def random_invertible(n: int, rng: np.random.Generator, spread: float = 1.0) -> ComplexMatrix:
    """``X diag(exp(g)) Y`` with Haar unitaries and ``g`` uniform in ``[-spread, spread]``."""
    g = rng.uniform(-spread, spread, size=n)
    return random_unitary(n, rng) @ np.diag(np.exp(g)) @ random_unitary(n, rng)


def random_positive(n: int, rng: np.random.Generator, spread: float = 2.0) -> ComplexMatrix:
    v = random_unitary(n, rng)
    d = np.exp(rng.uniform(-spread, spread, size=n))
    p = v @ np.diag(d) @ v.conj().T
    return (p + p.conj().T) / 2


def random_unit(rng: np.random.Generator) -> complex:
    return complex(np.exp(2j * np.pi * rng.random()))


def random_bu_parameter(n: int, c: int, rng: np.random.Generator, spread: float = 1.0) -> ComplexMatrix:
    """A matrix with ``Q conj(Q) = c I`` exactly (up to roundoff).

    Even ``n`` uses the block form ``[[0, T], [c conj(T)^-1, 0]]``. Odd ``n``
    only admits ``c = +1`` and uses ``A conj(A)^-1``.
    """
    if c not in (1, -1):
        raise ValueError("c must be +1 or -1")
    if n % 2:
        if c == -1:
            raise ValueError("no matrix of odd size has Q conj(Q) = -I")
        a = random_invertible(n, rng, spread)
        return a @ np.linalg.inv(a.conj())
    k = n // 2
    t = random_invertible(k, rng, spread)
    z = np.zeros((k, k), dtype=complex)
    return np.block([[z, t], [c * np.linalg.inv(t.conj()), z]])


def random_normal(
    n: int,
    rng: np.random.Generator,
    angles: int = 3,
    spread: float = 1.5,
) -> ComplexMatrix:
    """Normal matrix whose eigenvalue phases come from ``angles`` well separated values."""
    pool = rng.permutation(np.arange(8))[:angles] * (2 * np.pi / 8)
    theta = rng.choice(pool, size=n)
    lam = np.exp(rng.uniform(-spread, spread, size=n)) * np.exp(1j * theta)
    v = random_unitary(n, rng)
    return v @ np.diag(lam) @ v.conj().T
