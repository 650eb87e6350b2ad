"""Operator identities as residual computations on concrete forms.

Each function returns a list of ``(label, residual)`` pairs whose residuals
must all be zero.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import List, Tuple

from .forms import (
    ContractDegreeZero,
    ScalarForm,
    contract_delta,
    exterior_d,
    frak_D,
    lie_delta,
    lie_multi,
    lie_total,
    s_composite,
    s_iter,
    s_single,
    total_i,
)
from .multiindex import enumerate_indices, enumerate_upto
from .vvforms import VectorValuedForm, d, d_T, i_T

Residuals = List[Tuple[str, object]]


def _zero_like(w: ScalarForm, shift: int = 0) -> ScalarForm:
    return ScalarForm(w.degree + shift)


def commutators(w: ScalarForm, m: int, max_len: int = 2) -> Residuals:
    """The four commutators of total derivatives and vertical endomorphisms."""
    out: Residuals = []
    for I in enumerate_upto(m, max_len):
        if I.length == 0:
            continue
        for i in range(1, m + 1):
            for j in range(1, m + 1):
                lhs = lie_delta(I, i, lie_total(j, w)) - lie_total(j, lie_delta(I, i, w))
                rhs = lie_delta(I.decrement(j), i, w).scale(I.at(j)) if I.at(j) else _zero_like(w)
                out.append((f"[d^{I!r}_{i}, d_{j}]", lhs - rhs))
                if w.degree >= 1:
                    lhs = contract_delta(I, i, lie_total(j, w)) - lie_total(j, contract_delta(I, i, w))
                    if I.at(j):
                        rhs = contract_delta(I.decrement(j), i, w).scale(I.at(j))
                    else:
                        rhs = _zero_like(w, -1)
                    out.append((f"[i^{I!r}_{i}, d_{j}]", lhs - rhs))
            for J in enumerate_upto(m, max_len):
                if J.length == 0:
                    continue
                lhs = lie_delta(I, i, s_composite(J, w)) - s_composite(J, lie_delta(I, i, w))
                if J.at(i):
                    rhs = s_composite(J.decrement(i) + I, w).scale(-J.at(i))
                else:
                    rhs = _zero_like(w)
                out.append((f"[d^{I!r}_{i}, S~^{J!r}]", lhs - rhs))
                if w.degree >= 1:
                    lhs = contract_delta(I, i, s_composite(J, w)) - s_composite(J, contract_delta(I, i, w))
                    out.append((f"[i^{I!r}_{i}, S~^{J!r}]", lhs - contract_delta(I + J, i, w)))
    return out


def s_D_expansion(w: ScalarForm, m: int, max_len: int = 2, max_p: int = 2, slot_power: bool = False) -> Residuals:
    """``S^J D_p = sum_q G_{|J|,q} D_{p-q} S^J``.

    With ``slot_power`` each term also carries ``r^q`` for an r-form, which
    is the form the identity takes beyond degree one.
    """
    r = max(w.degree, 1)
    out: Residuals = []
    for J in enumerate_upto(m, max_len):
        sj = s_iter(J, w)
        for p in range(max_p + 1):
            lhs = s_iter(J, frak_D(p, w, m))
            rhs = _zero_like(w)
            for q in range(min(J.length, p) + 1):
                c = comb(J.length, q) * (r ** q if slot_power else 1)
                rhs = rhs + frak_D(p - q, sj, m).scale(c)
            out.append((f"S^{J!r} D_{p}", lhs - rhs))
    return out


def contraction_D_expansion(w: ScalarForm, m: int, max_p: int = 2) -> Residuals:
    """``i_k D_p = sum_{K,J} 1/(J!K!) d_{J+K} S^J i^K_k``."""
    if w.degree == 0:
        raise ContractDegreeZero("i_k D_p needs a form of degree >= 1")
    out: Residuals = []
    for k in range(1, m + 1):
        contractions = {}
        for p in range(max_p + 1):
            lhs = total_i(k, frak_D(p, w, m))
            rhs = _zero_like(w, -1)
            for K in enumerate_upto(m, p):
                if K not in contractions:
                    contractions[K] = contract_delta(K, k, w) if K.length else total_i(k, w)
                base = contractions[K]
                for J in enumerate_indices(m, p - K.length):
                    t = s_iter(J, base)
                    if t:
                        rhs = rhs + lie_multi(J + K, t).scale(Fraction(1, J.factorial * K.factorial))
            out.append((f"i_{k} D_{p}", lhs - rhs))
    return out


def scalar_basics(w: ScalarForm, m: int) -> Residuals:
    """``d^2 = 0``, commuting ``d_j`` and ``S^i``, and Cartan's formula for ``d_j``."""
    out: Residuals = [("d^2", exterior_d(exterior_d(w)))]
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            out.append((f"[d_{i}, d_{j}]", lie_total(i, lie_total(j, w)) - lie_total(j, lie_total(i, w))))
            out.append((f"[S^{i}, S^{j}]", s_single(i, s_single(j, w)) - s_single(j, s_single(i, w))))
    if w.degree <= 1:
        for j in range(1, m + 1):
            cartan = total_i(j, exterior_d(w))
            if w.degree:
                cartan = cartan + exterior_d(total_i(j, w))
            out.append((f"cartan d_{j}", lie_total(j, w) - cartan))
    return out


def bicomplex(phi: VectorValuedForm) -> Residuals:
    """``d^2``, ``d_T^2``, ``[d, d_T]`` and the two ``i_T`` identities."""
    out: Residuals = [
        ("d^2", d(d(phi))),
        ("d_T^2", d_T(d_T(phi))),
        ("d d_T - d_T d", d(d_T(phi)) - d_T(d(phi))),
    ]
    if phi.r >= 1:
        out.append(("d_T - (d i_T + i_T d)", d_T(phi) - (d(i_T(phi)) + i_T(d(phi)))))
        out.append(("i_T d_T + d_T i_T", i_T(d_T(phi)) + d_T(i_T(phi))))
    return out


def failures(residuals: Residuals) -> Residuals:
    return [(label, res) for label, res in residuals if not res.is_zero()]


__all__ = ["bicomplex", "failures", "commutators", "s_D_expansion", "contraction_D_expansion", "scalar_basics"]
