"""Free product normal forms for A_u(Q) and B_u(Q).

Only the constructive cases are resolved: normal ``Q`` and 2x2 non-normal
``Q`` for A_u; block forms whose ``Q conj(Q)`` is normal for B_u. Everything
else raises :class:`UnsupportedInput` with a diagnosis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np
import scipy.linalg

from .au import AuInvariant, au_invariant, invariants_equal
from .bu import BuDescriptor, bu_descriptor, bu_isomorphic_descriptors
from .errors import (
    AmbiguousClustering,
    InvalidPartition,
    NotScalarQQbar,
    Undecidable,
    UnsupportedInput,
)
from .linalg import DEFAULT_TOL, ComplexMatrix, Tolerance, as_matrix, norm, predicates, require_invertible
from .normal_forms import qqbar_scalar


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


@dataclass(frozen=True)
class CircleAtom:
    """``A_u`` of a 1x1 parameter, i.e. the functions on the circle."""

    size: int = field(default=1, init=False)

    @property
    def label(self) -> str:
        return "C(T)"


@dataclass(frozen=True)
class Z2Atom:
    """``B_u`` of a 1x1 parameter, the group algebra of Z/2Z."""

    size: int = field(default=1, init=False)

    @property
    def label(self) -> str:
        return "C*(Z/2Z)"


@dataclass(frozen=True)
class AuAtom:
    invariant: AuInvariant

    @property
    def size(self) -> int:
        return self.invariant.n

    @property
    def label(self) -> str:
        return "A_u(diag(" + ",".join(_fmt(x) for x in self.invariant.spectrum) + "))"


@dataclass(frozen=True, eq=False)
class BuAtom:
    descriptor: BuDescriptor

    @property
    def size(self) -> int:
        return self.descriptor.n

    @property
    def label(self) -> str:
        d = self.descriptor
        mu = ",".join(_fmt(x) for x in d.mu.mu)
        return f"B_u(n={d.n},c={d.c:+d},mu=({mu}))"


Atom = Union[AuAtom, BuAtom, CircleAtom, Z2Atom]


@dataclass(frozen=True)
class GroupExpression:
    """Free product of indecomposable atoms; order carries no meaning."""

    atoms: tuple[Atom, ...]

    def __mul__(self, other: "GroupExpression") -> "GroupExpression":
        return GroupExpression(self.atoms + other.atoms)

    @property
    def size(self) -> int:
        return sum(a.size for a in self.atoms)

    @property
    def labels(self) -> list[str]:
        return [a.label for a in self.atoms]

    def __str__(self) -> str:
        return " * ".join(self.labels)


def au_atom(p, tol: Tolerance = DEFAULT_TOL) -> Atom:
    """Atom for ``A_u`` of a positive matrix, collapsing the 1x1 case to C(T)."""
    p = as_matrix(p)
    if p.shape[0] == 1:
        return CircleAtom()
    return AuAtom(au_invariant(p, tol))


def bu_atom(t, tol: Tolerance = DEFAULT_TOL) -> Atom:
    t = as_matrix(t)
    if t.shape[0] == 1:
        return Z2Atom()
    return BuAtom(bu_descriptor(t, tol))


def cluster_angles(theta, tol: Tolerance = DEFAULT_TOL) -> list[list[int]]:
    """Circular single-linkage grouping of angles at ``tol.cluster``.

    Raises :class:`AmbiguousClustering` when a gap between groups is within
    ten times the linkage tolerance.
    """
    theta = np.mod(np.asarray(theta, dtype=float), 2 * np.pi)
    order = np.argsort(theta, kind="stable")
    t = theta[order]
    m = len(t)
    if m == 1:
        return [[int(order[0])]]
    gaps = np.append(np.diff(t), 2 * np.pi - t[-1] + t[0])
    ambiguous = (gaps > tol.cluster) & (gaps <= 10 * tol.cluster)
    if np.any(ambiguous):
        raise AmbiguousClustering(
            "eigenvalue phases are too close to separate reliably",
            diagnostics=[f"angles = {[_fmt(x) for x in t]}", f"cluster tolerance = {tol.cluster:g}"],
        )
    cuts = np.flatnonzero(gaps > tol.cluster)
    if len(cuts) == 0:
        return [sorted(int(i) for i in order)]
    clusters = []
    # cluster k runs from just after cut k-1 to cut k (circularly)
    for a, b in zip(cuts, np.roll(cuts, -1)):
        idx = [(a + 1 + s) % m for s in range((b - a) % m or m)]
        clusters.append(sorted(int(order[i]) for i in idx))
    clusters.sort(key=lambda c: theta[c[0]])
    return clusters


def decompose_au(q, tol: Tolerance = DEFAULT_TOL) -> GroupExpression:
    q = as_matrix(q)
    require_invertible(q, tol)
    n = q.shape[0]
    if n == 1:
        return GroupExpression((CircleAtom(),))
    pred = predicates(q, tol)
    if pred.is_normal:
        lam = np.linalg.eigvals(q)
        atoms = []
        for idx in cluster_angles(np.angle(lam), tol):
            atoms.append(au_atom(np.diag(np.abs(lam[idx])), tol))
        return GroupExpression(tuple(atoms))
    if n == 2:
        return GroupExpression((CircleAtom(),))
    qd = q.conj().T
    raise UnsupportedInput(
        "non-normal parameter of size >= 3 needs isotypical data that is not computable here",
        diagnostics=[
            f"normality defect ||QQ*-Q*Q||/||Q||^2 = {norm(q @ qd - qd @ q) / norm(q) ** 2:.3e}",
            f"eigenvalues = {[_complex_str(x) for x in np.linalg.eigvals(q)]}",
        ],
    )


def _complex_str(z: complex) -> str:
    return f"{_fmt(z.real)}{'+' if z.imag >= 0 else '-'}{_fmt(abs(z.imag))}i"


@dataclass
class _Piece:
    kind: str  # "bu": block T with T conj(T) = key I; "au": X of [[0, X], [key conj(X)^-1, 0]]
    key: complex
    matrix: ComplexMatrix


def _group_eigenvalues(lam: np.ndarray, ctol: float) -> list[list[int]]:
    groups: list[list[int]] = []
    for i in np.argsort(-lam.real, kind="stable"):
        for g in groups:
            if min(abs(lam[i] - lam[j]) for j in g) <= ctol:
                g.append(int(i))
                break
        else:
            groups.append([int(i)])
    for a in range(len(groups)):
        for b in range(a + 1, len(groups)):
            gap = min(abs(lam[i] - lam[j]) for i in groups[a] for j in groups[b])
            if gap <= 10 * ctol:
                raise AmbiguousClustering(
                    "eigenvalues of Q conj(Q) are too close to separate blocks reliably",
                    diagnostics=[f"eigenvalues of Q conj(Q) = {[_complex_str(x) for x in lam]}"],
                )
    return groups


def _bu_pieces(t: ComplexMatrix, tol: Tolerance) -> list[_Piece]:
    m = t @ t.conj()
    nm = norm(m)
    lam_all = np.linalg.eigvals(m)
    diag_lines = [f"eigenvalues of Q conj(Q) = {[_complex_str(x) for x in lam_all]}"]
    if norm(m @ m.conj().T - m.conj().T @ m) > tol.eq * nm * nm:
        raise UnsupportedInput(
            "Q conj(Q) is not normal, so no multiplicity-free block form exists",
            diagnostics=diag_lines + ["Q conj(Q) normal: false"],
        )
    schur_t, z = scipy.linalg.schur(m, output="complex")
    lam = np.diag(schur_t)
    ctol = tol.eq * nm
    groups = _group_eigenvalues(lam, ctol)
    w = z[:, [i for g in groups for i in g]]
    spans, pos = [], 0
    for g in groups:
        spans.append(list(range(pos, pos + len(g))))
        pos += len(g)
    centers = [complex(np.mean(lam[g])) for g in groups]
    tt = w.conj().T @ t @ w.conj()

    pieces = []
    used = set()
    for a, (sa, ca) in enumerate(zip(spans, centers)):
        if abs(ca.imag) <= ctol:
            pieces.append(_Piece("bu", complex(ca.real), tt[np.ix_(sa, sa)]))
            used.add(a)
        elif ca.imag < 0:
            partner = [b for b, cb in enumerate(centers) if abs(cb - ca.conjugate()) <= 10 * ctol]
            if len(partner) != 1 or len(spans[partner[0]]) != len(sa):
                raise UnsupportedInput(
                    "non-real eigenvalues of Q conj(Q) are not paired with equal multiplicity",
                    diagnostics=diag_lines,
                )
            b = partner[0]
            pieces.append(_Piece("au", centers[b], tt[np.ix_(sa, spans[b])]))
            used.update((a, b))
    if len(used) != len(spans):
        raise UnsupportedInput("unpaired non-real eigenvalues of Q conj(Q)", diagnostics=diag_lines)

    # Q'' may only connect eigenspaces with lam_a == conj(lam_b)
    mask = np.zeros(tt.shape, dtype=bool)
    for sa, ca in zip(spans, centers):
        for sb, cb in zip(spans, centers):
            if abs(ca - cb.conjugate()) <= 10 * ctol:
                mask[np.ix_(sa, sb)] = True
    leak = norm(np.where(mask, 0, tt))
    if leak > tol.eq * norm(t) * t.shape[0]:
        raise UnsupportedInput(
            f"block structure check failed (off-pattern norm {leak:.3e})", diagnostics=diag_lines
        )
    return pieces


def _merge(pieces: list[_Piece], tol: Tolerance) -> list[_Piece]:
    merged: list[_Piece] = []
    for p in pieces:
        for m in merged:
            if m.kind == p.kind and abs(m.key - p.key) <= tol.eq * max(abs(m.key), abs(p.key)):
                m.matrix = scipy.linalg.block_diag(m.matrix, p.matrix)
                break
        else:
            merged.append(_Piece(p.kind, p.key, p.matrix))
    return merged


def _check_partition(partition, n: int) -> list[list[int]]:
    try:
        blocks = [[int(i) for i in b] for b in partition]
    except (TypeError, ValueError):
        raise InvalidPartition("partition must be a list of index lists") from None
    flat = sorted(i for b in blocks for i in b)
    if flat != list(range(n)) or any(len(b) == 0 for b in blocks):
        raise InvalidPartition(f"partition must cover 0..{n - 1} exactly once, got {blocks}")
    return blocks


def decompose_bu(q, tol: Tolerance = DEFAULT_TOL, partition=None) -> GroupExpression:
    """Free product decomposition of ``B_u(Q)``.

    Blocks ``T`` with ``T conj(T) = lam I`` become B_u atoms (distinct ``lam``
    per atom; equal ``lam`` blocks merge). Anti-diagonal blocks
    ``[[0, X], [q conj(X)^-1, 0]]`` with non-real ``q`` become ``A_u(X* X)``.
    Blocks are read off the eigenspaces of ``Q conj(Q)``, which is normal for
    every such form even after a unitary change of basis ``Q -> S^t Q S``.
    An explicit ``partition`` of indices may be given instead; each part is
    then treated on its own and parts sharing a key are merged.
    """
    q = as_matrix(q)
    require_invertible(q, tol)
    n = q.shape[0]
    if n == 1:
        return GroupExpression((Z2Atom(),))
    if partition is None:
        try:
            qqbar_scalar(q, tol)
        except NotScalarQQbar:
            pass
        else:
            return GroupExpression((bu_atom(q, tol),))
        pieces = _bu_pieces(q, tol)
    else:
        blocks = _check_partition(partition, n)
        mask = np.zeros((n, n), dtype=bool)
        for b in blocks:
            mask[np.ix_(b, b)] = True
        leak = norm(np.where(mask, 0, q))
        if leak > tol.eq * norm(q):
            raise InvalidPartition(f"Q is not block diagonal for the given partition (off-block norm {leak:.3e})")
        pieces = [p for b in blocks for p in _bu_pieces(q[np.ix_(b, b)], tol)]

    merged = _merge(pieces, tol)
    bu = sorted((p for p in merged if p.kind == "bu"), key=lambda p: -p.key.real)
    au = sorted((p for p in merged if p.kind == "au"), key=lambda p: (p.key.real, p.key.imag))
    atoms = [bu_atom(p.matrix, tol) for p in bu]
    atoms += [au_atom(p.matrix.conj().T @ p.matrix, tol) for p in au]
    return GroupExpression(tuple(atoms))


def expression_equal(
    e1: GroupExpression, e2: GroupExpression, tol: Tolerance = DEFAULT_TOL, seed: int = 0
) -> bool:
    """Multiset equality of atoms up to isomorphism.

    Raises :class:`Undecidable` if the answer hinges on an undecided B_u
    comparison.
    """

    def kinds(e):
        return {k: [a for a in e.atoms if isinstance(a, k)] for k in (CircleAtom, Z2Atom, AuAtom, BuAtom)}

    k1, k2 = kinds(e1), kinds(e2)
    if any(len(k1[k]) != len(k2[k]) for k in k1):
        return False

    pool = list(k2[AuAtom])
    for a in k1[AuAtom]:
        hit = next((i for i, b in enumerate(pool) if invariants_equal(a.invariant, b.invariant, tol)), None)
        if hit is None:
            return False
        pool.pop(hit)

    pool = list(k2[BuAtom])
    for a in k1[BuAtom]:
        hit, undecided = None, []
        for i, b in enumerate(pool):
            res = bu_isomorphic_descriptors(a.descriptor, b.descriptor, tol, seed=seed)
            if res.verdict == "yes":
                hit = i
                break
            if res.verdict == "undecided":
                undecided.append(res.reason)
        if hit is None:
            if undecided:
                raise Undecidable("B_u atom comparison undecided", diagnostics=undecided)
            return False
        pool.pop(hit)
    return True
