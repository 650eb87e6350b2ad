"""Multi-indices over the m independent-variable slots.

A multi-index is stored as a tuple of non-negative counts, one per slot.
Slots are numbered from 1 in the public API (``at``, ``increment``,
``unit``) to match the usual ``u^alpha_{I+1_j}`` notation.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial as _fact, prod
from typing import Iterable, List


class DegenerateIndex(ValueError):
    """Raised when an operation would produce a negative count."""


class MultiIndex(tuple):
    """Immutable vector of counts; ``+`` and ``-`` act componentwise."""

    __slots__ = ()

    def __new__(cls, counts: Iterable[int] = ()):
        counts = tuple(int(c) for c in counts)
        if any(c < 0 for c in counts):
            raise DegenerateIndex(f"negative count in {counts}")
        return super().__new__(cls, counts)

    @classmethod
    def zero(cls, m: int) -> "MultiIndex":
        return cls((0,) * m)

    @classmethod
    def unit(cls, m: int, i: int) -> "MultiIndex":
        """The index ``1_i`` (slot ``i`` is 1-based)."""
        if not 1 <= i <= m:
            raise IndexError(f"slot {i} outside 1..{m}")
        return cls(1 if s == i - 1 else 0 for s in range(m))

    @property
    def m(self) -> int:
        return len(self)

    @property
    def length(self) -> int:
        return sum(self)

    @property
    def factorial(self) -> int:
        return prod(_fact(c) for c in self)

    @property
    def weight(self) -> int:
        """The multinomial coefficient |I|!/I!."""
        return _fact(self.length) // self.factorial

    def at(self, i: int) -> int:
        return self[i - 1]

    def add(self, other: "MultiIndex") -> "MultiIndex":
        if len(other) != len(self):
            raise ValueError("multi-indices over different numbers of slots")
        return MultiIndex(a + b for a, b in zip(self, other))

    def subtract(self, other: "MultiIndex") -> "MultiIndex":
        if len(other) != len(self):
            raise ValueError("multi-indices over different numbers of slots")
        return MultiIndex(a - b for a, b in zip(self, other))

    def increment(self, i: int, by: int = 1) -> "MultiIndex":
        counts = list(self)
        counts[i - 1] += by
        return MultiIndex(counts)

    def decrement(self, i: int) -> "MultiIndex":
        return self.increment(i, -1)

    def dominates(self, other: "MultiIndex") -> bool:
        """True when ``self - other`` is a valid multi-index."""
        return all(a >= b for a, b in zip(self, other))

    def falling(self, other: "MultiIndex") -> int:
        """(self)!/(self - other)!, the multi-index falling factorial."""
        out = 1
        for a, b in zip(self, other):
            for t in range(a - b + 1, a + 1):
                out *= t
        return out

    def sort_key(self):
        """Graded lexicographic key: by length, then larger leading counts first."""
        return (self.length, tuple(-c for c in self))

    __add__ = add  # type: ignore[assignment]
    __sub__ = subtract

    def __repr__(self) -> str:
        return "(" + ",".join(str(c) for c in self) + ")"

    def __reduce__(self):
        return (MultiIndex, (tuple(self),))


def parse_multiindex(text: str) -> MultiIndex:
    """Parse the textual form ``(c1,...,cm)``."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    if not body.strip():
        raise ValueError("empty multi-index")
    return MultiIndex(int(c) for c in body.split(","))


@lru_cache(maxsize=None)
def _compositions(m: int, p: int) -> tuple:
    if m == 1:
        return ((p,),)
    out = []
    for first in range(p, -1, -1):
        for rest in _compositions(m - 1, p - first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_indices(m: int, p: int) -> List[MultiIndex]:
    """All multi-indices of length ``p`` over ``m`` slots, graded-lex order."""
    if m < 1 or p < 0:
        raise ValueError("need m >= 1 and p >= 0")
    return [MultiIndex(c) for c in _compositions(m, p)]


def enumerate_upto(m: int, p: int) -> List[MultiIndex]:
    return [I for q in range(p + 1) for I in enumerate_indices(m, q)]


def count_indices(m: int, p: int) -> int:
    return comb(p + m - 1, m - 1)
