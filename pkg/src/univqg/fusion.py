"""Exact combinatorics of the free monoid on two letters indexing A_u irreducibles.

Words are strings over ``"a"`` (the fundamental class) and ``"b"`` (its
conjugate); the empty word is the trivial class. Dimensions are Python ints,
so nothing overflows.
"""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator

from .errors import BadN, InvalidInput

_BAR = {"a": "b", "b": "a"}
_ALIASES = {"a": "a", "b": "b", "α": "a", "β": "b"}


@dataclass(frozen=True, order=True)
class FreeWord:
    letters: str = ""

    def __post_init__(self) -> None:
        if set(self.letters) - {"a", "b"}:
            raise InvalidInput(f"word {self.letters!r} uses letters outside {{a, b}}")

    @classmethod
    def parse(cls, text: str) -> "FreeWord":
        """Accept ``"e"``/``""`` for the neutral word and letters a/b or α/β."""
        text = text.strip()
        if text in ("", "e"):
            return cls("")
        out = []
        for ch in text:
            if ch not in _ALIASES:
                raise InvalidInput(f"cannot parse word {text!r}")
            out.append(_ALIASES[ch])
        return cls("".join(out))

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(self.letters + other.letters)

    def __str__(self) -> str:
        return self.letters or "e"

    def pretty(self) -> str:
        return self.letters.replace("a", "α").replace("b", "β") or "e"


E = FreeWord("")
ALPHA = FreeWord("a")
BETA = FreeWord("b")


def involute(x: FreeWord) -> FreeWord:
    """Anti-multiplicative involution with ``bar(a) = b``."""
    return FreeWord("".join(_BAR[ch] for ch in reversed(x.letters)))


def swap(x: FreeWord) -> FreeWord:
    """Exchange ``a`` and ``b`` letterwise, keeping the order."""
    return FreeWord("".join(_BAR[ch] for ch in x.letters))


def fuse(x: FreeWord, y: FreeWord) -> Counter:
    """Fusion product: one term ``a*b`` for every split ``x = a*g``, ``y = bar(g)*b``."""
    out: Counter = Counter()
    xs, ys = x.letters, y.letters
    for cut in range(len(xs), -1, -1):
        g = FreeWord(xs[cut:])
        gbar = involute(g).letters
        if ys.startswith(gbar):
            out[FreeWord(xs[:cut] + ys[len(gbar):])] += 1
    return out


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 2:
        raise BadN(f"fundamental dimension must be an integer >= 2, got {n!r}")


@dataclass
class DimensionTable:
    """Memoized dimension function ``d`` for fundamental dimension ``n``.

    Appending a letter ``c`` to ``x`` gives ``d(xc) = n d(x) - d(x')`` when
    ``x = x' bar(c)`` and ``d(xc) = n d(x)`` otherwise, which is the fusion
    formula applied to ``x`` times a single letter.
    """

    n: int
    memo: dict[str, int] = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def __post_init__(self) -> None:
        _check_n(self.n)
        self.memo.update({"": 1, "a": self.n, "b": self.n})

    def __call__(self, x: FreeWord) -> int:
        return self.dim(x)

    def dim(self, x: FreeWord) -> int:
        s = x.letters
        hit = self.memo.get(s)
        if hit is not None:
            return hit
        prev, cur = 1, self.n
        for i in range(1, len(s)):
            nxt = self.n * cur - (prev if s[i - 1] != s[i] else 0)
            prev, cur = cur, nxt
        with self._lock:
            self.memo[s] = cur
        return cur


def dim_word(x: FreeWord, table: DimensionTable) -> int:
    return table.dim(x)


def alternating_word(k: int) -> FreeWord:
    return FreeWord("ab" * (k // 2) + "a" * (k % 2))


def min_dim_sequence(n: int, K: int) -> list[int]:
    """``f(0..K)`` with ``f(0)=1``, ``f(1)=n``, ``f(k+1) = n f(k) - f(k-1)``."""
    _check_n(n)
    if K < 0:
        raise ValueError("K must be >= 0")
    f = [1, n]
    while len(f) <= K:
        f.append(n * f[-1] - f[-2])
    return f[: K + 1]


def words_up_to(maxlen: int, minlen: int = 0) -> Iterator[FreeWord]:
    for length in range(minlen, maxlen + 1):
        for letters in product("ab", repeat=length):
            yield FreeWord("".join(letters))


def check_formula(table: DimensionTable, maxlen: int) -> list[str]:
    """Violations of ``d(x) d(y) = sum d(ab)`` over all pairs up to ``maxlen``."""
    words = list(words_up_to(maxlen))
    bad = []
    for x in words:
        dx = table.dim(x)
        for y in words:
            total = sum(k * table.dim(w) for w, k in fuse(x, y).items())
            if dx * table.dim(y) != total:
                bad.append(f"formula: d({x})*d({y})={dx * table.dim(y)} != {total}")
    return bad


def check_minimality(table: DimensionTable, maxlen: int) -> list[str]:
    n = table.n
    bad = [f"minimality: d({w})={table.dim(w)} != {n}" for w in (ALPHA, BETA) if table.dim(w) != n]
    for x in words_up_to(maxlen, minlen=2):
        if table.dim(x) <= n:
            bad.append(f"minimality: d({x})={table.dim(x)} <= {n}")
    return bad


def check_swap(table: DimensionTable, maxlen: int) -> list[str]:
    return [
        f"swap: d({x})={table.dim(x)} != d({swap(x)})={table.dim(swap(x))}"
        for x in words_up_to(maxlen)
        if table.dim(x) != table.dim(swap(x))
    ]


@dataclass(frozen=True)
class FusionReport:
    n: int
    maxlen: int
    formula_ok: bool
    minimality_ok: bool
    swap_ok: bool
    counterexamples: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.formula_ok and self.minimality_ok and self.swap_ok


def verify_fusion_dims(n: int, maxlen: int) -> FusionReport:
    """Exhaustively check the dimension formula, minimality and letter-swap symmetry."""
    _check_n(n)
    if maxlen < 1:
        raise ValueError("maxlen must be >= 1")
    table = DimensionTable(n)
    formula = check_formula(table, maxlen)
    minimal = check_minimality(table, maxlen)
    swapped = check_swap(table, maxlen)
    return FusionReport(
        n=n,
        maxlen=maxlen,
        formula_ok=not formula,
        minimality_ok=not minimal,
        swap_ok=not swapped,
        counterexamples=tuple(formula + minimal + swapped),
    )
