"""Phase gauge solver: find unit complex ``w`` with ``r[i, j] = w[i] * w[j]``.

Per connected component of the support graph one unknown ``t`` is pinned at
a root, values are propagated along a maximum-weight spanning tree as
``w[v] = a[v] * t**e[v]`` with ``e[v] = +-1``, and every remaining edge is a
closure constraint. A constraint with ``e[i] + e[j] == 0`` must hold outright;
one with ``e[i] + e[j] == +-2`` fixes ``t**2``.
"""

from __future__ import annotations

import cmath
import heapq
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import count
from typing import Mapping, Optional


@dataclass
class PhaseProfile:
    ratios: dict[tuple[int, int], complex]
    weights: dict[tuple[int, int], float] = field(default_factory=dict)

    @property
    def support(self) -> set[tuple[int, int]]:
        return set(self.ratios)

    def weight(self, edge: tuple[int, int]) -> float:
        return self.weights.get(edge, 1.0)


def _components(n: int, adj: Mapping[int, list]) -> list[list[int]]:
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        stack, comp = [start], []
        while stack:
            v = stack.pop()
            comp.append(v)
            for _, u, _ in adj[v]:
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


def phase_profile_solve(
    profile: PhaseProfile | Mapping[tuple[int, int], complex],
    n: int,
    tol: float = 1e-9,
) -> Optional[list[complex]]:
    """Solve ``r_ij = w_i w_j`` over the support of ``profile``.

    Parameters
    ----------
    profile : PhaseProfile or mapping
        Unit-modulus ratios keyed by index pairs, optionally weighted. A
        weight scales how much a constraint mismatch counts: the check is
        ``weight * |w_i w_j - r_ij| <= tol``. Higher-weight edges are
        preferred for the spanning tree.
    n : int
        Number of unknowns; indices outside the support get ``w = 1``.
    tol : float
        Absolute tolerance on weighted constraint mismatches.

    Returns
    -------
    list of complex or None
        A solution, or ``None`` when the constraints are inconsistent.
    """
    if not isinstance(profile, PhaseProfile):
        profile = PhaseProfile(dict(profile))
    adj: dict[int, list] = defaultdict(list)
    for (i, j), r in profile.ratios.items():
        if not (0 <= i < n and 0 <= j < n):
            raise IndexError(f"support pair {(i, j)} outside 0..{n - 1}")
        wt = profile.weight((i, j))
        adj[i].append((wt, j, r))
        if i != j:
            adj[j].append((wt, i, r))

    w: list[complex] = [1.0 + 0j] * n
    for comp in _components(n, adj):
        root = comp[0]
        coef: dict[int, complex] = {root: 1.0 + 0j}
        expo: dict[int, int] = {root: 1}
        tick = count()
        heap = [(-wt, next(tick), root, u, r) for wt, u, r in adj[root]]
        heapq.heapify(heap)
        # Prim's algorithm on maximum weight
        while heap:
            _, _, v, u, r = heapq.heappop(heap)
            if u in coef:
                continue
            coef[u] = r / coef[v]
            expo[u] = -expo[v]
            for wt, x, rx in adj[u]:
                if x not in coef:
                    heapq.heappush(heap, (-wt, next(tick), u, x, rx))

        # t**2 from the weighted mean of all constraints that involve it;
        # the final check below covers the e == 0 edges and consistency
        t2_num, t2_den = 0j, 0.0
        for (i, j), r in profile.ratios.items():
            if i not in coef:
                continue
            e = expo[i] + expo[j]
            a = coef[i] * coef[j]
            if e != 0:
                # a * t**e == r  ->  t**2 == (r / a) ** (e / 2)
                target = r / a if e == 2 else a / r
                wt = profile.weight((i, j))
                t2_num += wt * target
                t2_den += wt
        t = cmath.sqrt(t2_num / abs(t2_num)) if t2_den > 0 and abs(t2_num) > 0 else 1.0 + 0j
        for v in comp:
            w[v] = coef[v] * t ** expo[v]
        for (i, j), r in profile.ratios.items():
            if i in coef and profile.weight((i, j)) * abs(w[i] * w[j] - r) > tol:
                return None
    return w
