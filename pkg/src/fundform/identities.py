"""Coefficient identities checked by brute-force exact summation."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterator, List

from .multiindex import MultiIndex, enumerate_upto


class NonDivisible(ArithmeticError):
    pass


@dataclass
class IdentityReport:
    name: str
    parameters: Dict[str, object]
    brute: Fraction
    closed: Fraction
    passed: bool = field(init=False)

    def __post_init__(self):
        self.brute = Fraction(self.brute)
        self.closed = Fraction(self.closed)
        self.passed = self.brute == self.closed

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "parameters": {k: str(v) for k, v in self.parameters.items()},
            "brute": str(self.brute),
            "closed": str(self.closed),
            "pass": self.passed,
        }

    def row(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.parameters.items())
        mark = "ok" if self.passed else "FAIL"
        return f"{self.name:<22} {params:<28} brute={self.brute!s:<24} closed={self.closed!s:<24} {mark}"


def _f(n: int) -> int:
    return factorial(n)


def coeff_C(I: MultiIndex, M: MultiIndex, i: int, j: int) -> Fraction:
    """The three-term coefficient of the Hilbert-form derivative formula."""
    a, b = I.length, M.length
    if a < 1:
        raise ValueError("|I| >= 1 required")
    den = _f(a + b + 1)
    sign = (-1) ** a
    out = Fraction(0)
    if M.at(i):
        out += M.at(i) * Fraction(_f(a) * _f(b) + sign * _f(a + b - 1), den)
    if I.at(i):
        out -= I.at(i) * Fraction(_f(a - 1) * _f(b + 1) - sign * _f(a + b - 1), den)
    if i == j:
        out += Fraction(_f(a) * _f(b) - sign * _f(a + b), den)
    return out


def coeff_F(a: int, b: int) -> Fraction:
    return Fraction(_f(a) * _f(b) + (-1) ** a * _f(a + b), _f(a + b + 1))


def coeff_G(a: int, q: int) -> Fraction:
    if not 0 <= q <= a:
        raise ValueError("need 0 <= q <= a")
    return Fraction(comb(a, q))


def lambda_p(p: int) -> Fraction:
    return Fraction((-1) ** p * _f(p), 2 ** (p + 1) * _f(p + 2))


def C_difference_check(K: MultiIndex, M: MultiIndex, i: int, m: int) -> IdentityReport:
    """``sum_j (C_{K+1_i,M,j,j} - C_{K+1_j,M,j,i})`` against ``(m-1) F_{|K|,|M|}``."""
    K, M = MultiIndex(K), MultiIndex(M)
    brute = Fraction(0)
    for j in range(1, m + 1):
        brute += coeff_C(K.increment(i), M, j, j) - coeff_C(K.increment(j), M, j, i)
    closed = (m - 1) * coeff_F(K.length, M.length)
    return IdentityReport("C-difference", {"K": K, "M": M, "i": i, "m": m}, brute, closed)


def H_closed(q: int) -> Fraction:
    return Fraction((-1) ** q, 2 * (q + 2)) + Fraction(
        (-1) ** q * (2 ** (q + 1) - 1) * _f(q), 2 ** (q + 1) * _f(q + 2)
    )


def H_brute(q: int) -> Fraction:
    """Triple sum in lambda, F and G."""
    total = Fraction(0)
    for p in range(q + 1):
        lam = lambda_p(p)
        for s in range(p + 1):
            for r in range(p - s + 1):
                total += (
                    lam
                    * Fraction((-1) ** (r + q - p) * _f(q), _f(s) * _f(p - s) * _f(q - p))
                    * coeff_F(s, r + q - p)
                    * coeff_G(p - s, r)
                )
    return total


def _AB_common(q: int, p: int, s: int, r: int) -> Fraction:
    return Fraction(
        (-1) ** (q + r) * _f(p) * _f(q),
        2 ** (p + 1) * _f(p + 2) * _f(r) * _f(q - p) * _f(p - s - r),
    )


def A_brute(q: int) -> Fraction:
    total = Fraction(0)
    for p in range(q + 1):
        for s in range(p + 1):
            for r in range(p - s + 1):
                total += _AB_common(q, p, s, r) * Fraction(_f(r + q - p), _f(q + 1 - (p - s - r)))
    return total


def B_brute(q: int) -> Fraction:
    total = Fraction(0)
    for p in range(q + 1):
        for s in range(p + 1):
            for r in range(p - s + 1):
                total += _AB_common(q, p, s, r) * Fraction((-1) ** s, _f(s) * (s + r + q - p + 1))
    return total


def A_closed(q: int) -> Fraction:
    return Fraction((-1) ** q, 2 * (q + 2))


def B_closed(q: int) -> Fraction:
    return Fraction((-1) ** q * (2 ** (q + 1) - 1) * _f(q), 2 ** (q + 1) * _f(q + 2))


def H_reports(q: int) -> List[IdentityReport]:
    h = H_brute(q)
    a, b = A_brute(q), B_brute(q)
    return [
        IdentityReport("H", {"q": q}, h, H_closed(q)),
        IdentityReport("H=A+B", {"q": q}, h, a + b),
        IdentityReport("A", {"q": q}, a, A_closed(q)),
        IdentityReport("B", {"q": q}, b, B_closed(q)),
    ]


def partial_fraction_sum(r: int) -> IdentityReport:
    brute = sum((Fraction(_f(p), _f(p + 2)) for p in range(r + 1)), Fraction(0))
    return IdentityReport("partial-fraction", {"r": r}, brute, Fraction(r + 1, r + 2))


def binomial_sum(p: int, r: int) -> IdentityReport:
    if not 0 <= r <= p:
        raise ValueError("need 0 <= r <= p")
    brute = sum((Fraction(1, _f(p - r - s) * _f(s)) for s in range(p - r + 1)), Fraction(0))
    return IdentityReport("binomial", {"p": p, "r": r}, brute, Fraction(2 ** (p - r), _f(p - r)))


def beta_sum(q: int, r: int) -> IdentityReport:
    if not 0 <= r <= q:
        raise ValueError("need 0 <= r <= q")
    brute = sum(
        (
            Fraction((-1) ** p * _f(p + r), _f(p + r + 2) * _f(p) * _f(q - r - p))
            for p in range(q - r + 1)
        ),
        Fraction(0),
    )
    return IdentityReport("beta", {"q": q, "r": r}, brute, Fraction((q - r + 1) * _f(r), _f(q + 2)))


def _binomial_poly(e: int) -> List[Fraction]:
    return [Fraction(comb(e, t)) for t in range(e + 1)]


def _divide_by_2_plus_x(coeffs: List[Fraction]) -> List[Fraction]:
    """Exact quotient by ``2 + x``; coefficients listed from ``x^0`` up."""
    rem = list(coeffs)
    while len(rem) > 1 and rem[-1] == 0:
        rem.pop()
    n = len(rem) - 1
    if n < 1:
        if rem and rem[0] != 0:
            raise NonDivisible("nonzero constant is not divisible by 2+x")
        return [Fraction(0)]
    quot = [Fraction(0)] * n
    for deg in range(n, 0, -1):
        c = rem[deg]
        quot[deg - 1] = c
        rem[deg] -= c
        rem[deg - 1] -= 2 * c
    if rem[0] != 0:
        raise NonDivisible(f"remainder {rem[0]} on division by 2+x")
    return quot


def b_coefficient_check(q: int, p: int, s: int) -> IdentityReport:
    """Coefficient of ``x^(q-p)`` in ``((1+x)^(q-p) + (-1)^(p-s)(1+x)^(q-s+1)) / (2+x)``."""
    if not 0 <= s <= p <= q:
        raise ValueError("need 0 <= s <= p <= q")
    a = _binomial_poly(q - p)
    b = _binomial_poly(q - s + 1)
    size = max(len(a), len(b))
    poly = [Fraction(0)] * size
    for t, c in enumerate(a):
        poly[t] += c
    for t, c in enumerate(b):
        poly[t] += (-1) ** (p - s) * c
    quot = _divide_by_2_plus_x(poly)
    brute = quot[q - p] if q - p < len(quot) else Fraction(0)
    closed = sum(
        (
            Fraction((-1) ** r * 2 ** (p - r - s) * _f(q + 1 - s), _f(q + 1 - r - s) * _f(r))
            for r in range(p - s + 1)
        ),
        Fraction(0),
    )
    return IdentityReport("b-coefficient", {"q": q, "p": p, "s": s}, brute, closed)


# -- sweeps --------------------------------------------------------------------

def sweep_H(max_q: int = 12) -> Iterator[IdentityReport]:
    for q in range(max_q + 1):
        yield from H_reports(q)


def sweep_partial_fraction(max_r: int = 12) -> Iterator[IdentityReport]:
    for r in range(max_r + 1):
        yield partial_fraction_sum(r)


def sweep_binomial(max_p: int = 12) -> Iterator[IdentityReport]:
    for p in range(max_p + 1):
        for r in range(p + 1):
            yield binomial_sum(p, r)


def sweep_beta(max_q: int = 12) -> Iterator[IdentityReport]:
    for q in range(max_q + 1):
        for r in range(q + 1):
            yield beta_sum(q, r)


def sweep_b_coefficient(max_q: int = 10) -> Iterator[IdentityReport]:
    for q in range(max_q + 1):
        for p in range(q + 1):
            for s in range(p + 1):
                yield b_coefficient_check(q, p, s)


def sweep_C_difference(max_len: int = 4, dims=(2, 3)) -> Iterator[IdentityReport]:
    for m in dims:
        indices = list(enumerate_upto(m, max_len))
        for K in indices:
            for M in indices:
                for i in range(1, m + 1):
                    yield C_difference_check(K, M, i, m)


def all_sweeps(max_q: int = 12, max_b: int = 10, max_len: int = 4) -> Dict[str, List[IdentityReport]]:
    return {
        "H": list(sweep_H(max_q)),
        "partial-fraction": list(sweep_partial_fraction(max_q)),
        "binomial": list(sweep_binomial(max_q)),
        "beta": list(sweep_beta(max_q)),
        "b-coefficient": list(sweep_b_coefficient(max_b)),
        "C-difference": list(sweep_C_difference(max_len)),
    }


__all__ = [
    "IdentityReport",
    "NonDivisible",
    "A_brute",
    "A_closed",
    "B_brute",
    "B_closed",
    "C_difference_check",
    "H_brute",
    "H_closed",
    "H_reports",
    "all_sweeps",
    "b_coefficient_check",
    "beta_sum",
    "binomial_sum",
    "coeff_C",
    "coeff_F",
    "coeff_G",
    "lambda_p",
    "partial_fraction_sum",
]
