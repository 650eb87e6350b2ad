"""Vector-valued forms: r-forms valued in alternating s-linear forms on R^m.

``Phi = sum_{i_1<...<i_s} phi_{i_1...i_s} (x) dt^{i_1} ^ ... ^ dt^{i_s}``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Dict, Iterable, Optional, Tuple

from .forms import (
    ContractDegreeZero,
    ScalarForm,
    exterior_d,
    form_to_json,
    lie_multi,
    lie_total,
    s_iter,
    total_i,
)
from .multiindex import MultiIndex, enumerate_indices

Slots = Tuple[int, ...]


def _normalize(slots: Iterable[int]) -> Optional[Tuple[int, Slots]]:
    """Sort frame indices; return (sign, sorted) or None on a repeat."""
    slots = list(slots)
    sign = 1
    for a in range(1, len(slots)):
        b = a
        while b > 0 and slots[b - 1] > slots[b]:
            slots[b - 1], slots[b] = slots[b], slots[b - 1]
            sign = -sign
            b -= 1
    if len(set(slots)) != len(slots):
        return None
    return sign, tuple(slots)


class VectorValuedForm:
    """Element of the (r, s) space; components keyed by increasing s-tuples."""

    __slots__ = ("m", "r", "s", "components")

    def __init__(self, m: int, r: int, s: int, components: Optional[Dict[Slots, ScalarForm]] = None):
        if not 0 <= s <= m:
            raise ValueError(f"value degree {s} outside 0..{m}")
        self.m = m
        self.r = r
        self.s = s
        self.components: Dict[Slots, ScalarForm] = {}
        for key, w in (components or {}).items():
            self._add(key, w)

    def _add(self, key: Iterable[int], w: ScalarForm) -> None:
        if w.is_zero():
            return
        if w.degree != self.r:
            raise ValueError(f"component of degree {w.degree} in an r={self.r} form")
        norm = _normalize(key)
        if norm is None:
            return
        sign, key = norm
        if len(key) != self.s or any(not 1 <= i <= self.m for i in key):
            raise ValueError(f"bad value slots {key}")
        w = w if sign > 0 else -w
        old = self.components.get(key)
        new = w if old is None else old + w
        if new.is_zero():
            self.components.pop(key, None)
        else:
            self.components[key] = new

    @classmethod
    def top(cls, m: int, w: ScalarForm) -> "VectorValuedForm":
        """``w (x) d^m t``."""
        return cls(m, w.degree, m, {tuple(range(1, m + 1)): w})

    @classmethod
    def scalar(cls, m: int, w: ScalarForm) -> "VectorValuedForm":
        return cls(m, w.degree, 0, {(): w})

    def component(self, *slots: int) -> ScalarForm:
        norm = _normalize(slots)
        if norm is None:
            return ScalarForm(self.r)
        sign, key = norm
        w = self.components.get(key)
        if w is None:
            return ScalarForm(self.r)
        return w if sign > 0 else -w

    def is_zero(self) -> bool:
        return not self.components

    def __bool__(self) -> bool:
        return bool(self.components)

    def _check(self, other: "VectorValuedForm") -> None:
        if (self.m, self.s) != (other.m, other.s) or (
            self.r != other.r and self.components and other.components
        ):
            raise ValueError("incompatible vector-valued forms")

    def __add__(self, other: "VectorValuedForm") -> "VectorValuedForm":
        self._check(other)
        r = self.r if self.components else other.r
        out = VectorValuedForm(self.m, r, self.s, self.components)
        for key, w in other.components.items():
            out._add(key, w)
        return out

    def __neg__(self) -> "VectorValuedForm":
        return VectorValuedForm(self.m, self.r, self.s, {k: -w for k, w in self.components.items()})

    def __sub__(self, other: "VectorValuedForm") -> "VectorValuedForm":
        return self + (-other)

    def scale(self, c) -> "VectorValuedForm":
        return VectorValuedForm(self.m, self.r, self.s, {k: w.scale(c) for k, w in self.components.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorValuedForm):
            return NotImplemented
        if self.m != other.m or self.s != other.s:
            return False
        if not self.components and not other.components:
            return True
        return self.r == other.r and self.components == other.components

    def max_order(self) -> int:
        return max((w.max_order() for w in self.components.values()), default=0)

    def sorted_components(self):
        return sorted(self.components.items())

    def __str__(self) -> str:
        if not self.components:
            return "0"
        parts = []
        for key, w in self.sorted_components():
            dt = " ∧ ".join(f"dt{i}" for i in key)
            parts.append(f"[{w}] ⊗ {dt}" if dt else f"[{w}]")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"VectorValuedForm(m={self.m}, r={self.r}, s={self.s}, {len(self.components)} components)"

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "s": self.s,
            "components": {
                ",".join(map(str, key)): form_to_json(w) for key, w in self.sorted_components()
            },
        }


def d(phi: VectorValuedForm) -> VectorValuedForm:
    return VectorValuedForm(phi.m, phi.r + 1, phi.s, {k: exterior_d(w) for k, w in phi.components.items()})


def _raise_value(phi: VectorValuedForm, op, r: int) -> VectorValuedForm:
    out = VectorValuedForm(phi.m, r, min(phi.s + 1, phi.m))
    if phi.s == phi.m:
        return VectorValuedForm(phi.m, r, phi.m)
    for key, w in phi.components.items():
        for j in range(1, phi.m + 1):
            if j in key:
                continue
            out._add((j,) + key, op(j, w))
    return out


def d_T(phi: VectorValuedForm) -> VectorValuedForm:
    """``d_T(phi (x) dt^I) = d_j phi (x) dt^j ^ dt^I``."""
    return _raise_value(phi, lie_total, phi.r)


def i_T(phi: VectorValuedForm) -> VectorValuedForm:
    """``i_T(phi (x) dt^I) = i_j phi (x) dt^j ^ dt^I``."""
    if phi.r == 0:
        raise ContractDegreeZero("i_T of a 0-form")
    return _raise_value(phi, total_i, phi.r - 1)


def P_coefficient(m: int, s: int, r: int, J: MultiIndex) -> Fraction:
    """``(-1)^|J| (m-s)! |J|! / (r^(|J|+1) (m-s+|J|+1)! J!)``."""
    n = J.length
    return Fraction(
        (-1) ** n * factorial(m - s) * factorial(n),
        r ** (n + 1) * factorial(m - s + n + 1) * J.factorial,
    )


def P_operator(j: int, s: int, w: ScalarForm, m: int, k: Optional[int] = None) -> ScalarForm:
    """``P^j_(s)`` on a scalar r-form, with ``|J| <= r k - 1``."""
    r = w.degree
    if r == 0:
        raise ValueError("P is defined on forms of degree >= 1")
    if k is None:
        k = w.max_order()
    out = ScalarForm(r)
    unit = MultiIndex.unit(m, j)
    for length in range(0, r * k):
        for J in enumerate_indices(m, length):
            sw = s_iter(J + unit, w)
            if sw.is_zero():
                continue
            out = out + lie_multi(J, sw).scale(P_coefficient(m, s, r, J))
    return out


def homotopy_P(phi: VectorValuedForm, k: Optional[int] = None) -> VectorValuedForm:
    """``P Phi = s P^j_(s)(phi_{j i_2...i_s}) (x) dt^{i_2} ^ ... ^ dt^{i_s}``."""
    if phi.s < 1:
        raise ValueError("P needs value degree s >= 1")
    if phi.r < 1:
        raise ValueError("P needs form degree r >= 1")
    if k is None:
        k = phi.max_order()
    out = VectorValuedForm(phi.m, phi.r, phi.s - 1)
    # on increasing components the factor s cancels against the (s-1)!
    # orderings of each tail and the s! in the full component sum
    for tail in combinations(range(1, phi.m + 1), phi.s - 1):
        acc = ScalarForm(phi.r)
        for j in range(1, phi.m + 1):
            if j in tail:
                continue
            comp = phi.component(j, *tail)
            if comp.is_zero():
                continue
            acc = acc + P_operator(j, phi.s, comp, phi.m, k)
        out._add(tail, acc)
    return out


__all__ = [
    "P_coefficient",
    "P_operator",
    "VectorValuedForm",
    "d",
    "d_T",
    "homotopy_P",
    "i_T",
]
