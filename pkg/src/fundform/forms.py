"""Scalar differential forms on the frame bundles and the operators acting on them.

A :class:`ScalarForm` of degree r maps strictly increasing r-tuples of
covector ids (jet-coordinate ids, sorted by the canonical variable order) to
nonzero :class:`RatExpr` coefficients.

Conventions:

* ``T_j = sum u^a_{I+1_j} d/du^a_I`` on derivative coordinates.
* ``S^i`` acts on covectors by ``du^a_J -> J(i) du^a_{J-1_i}`` and kills
  functions; on forms it is a degree-0 derivation.  ``S^I`` iterates it and
  ``S~^I`` contracts the composite endomorphism
  ``du^a_J -> (J!/(J-I)!) du^a_{J-I}`` into one slot at a time.
* ``Delta^I_j = S^I(T_j) = sum_K ((K+I)!/K!) u^a_{K+1_j} d/du^a_{K+I}``.
* Interior products insert the vector into the first slot.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from .multiindex import MultiIndex, enumerate_indices
from .symbolic import (
    ONE,
    ZERO,
    JetVar,
    RatExpr,
    as_ratexpr,
    var_id,
    var_key,
    var_of,
)


class ContractDegreeZero(ValueError):
    """Interior product of a function."""


Key = Tuple[int, ...]


def _sorted_with_sign(ids) -> Optional[Tuple[int, Key]]:
    """Sort covector ids canonically; return (sign, key) or None on a repeat."""
    ids = list(ids)
    sign = 1
    keys = [var_key(i) for i in ids]
    for a in range(1, len(ids)):
        b = a
        while b > 0 and keys[b - 1] > keys[b]:
            keys[b - 1], keys[b] = keys[b], keys[b - 1]
            ids[b - 1], ids[b] = ids[b], ids[b - 1]
            sign = -sign
            b -= 1
    for a in range(1, len(ids)):
        if ids[a] == ids[a - 1]:
            return None
    return sign, tuple(ids)


def _accumulate(terms: Dict[Key, RatExpr], key: Key, coeff: RatExpr) -> None:
    old = terms.get(key)
    if old is None:
        if coeff:
            terms[key] = coeff
        return
    new = old + coeff
    if new:
        terms[key] = new
    else:
        del terms[key]


class ScalarForm:
    """Exterior r-form with rational-function coefficients."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Optional[Dict[Key, RatExpr]] = None):
        self.degree = degree
        self.terms: Dict[Key, RatExpr] = terms if terms is not None else {}

    @classmethod
    def zero(cls, degree: int = 0) -> "ScalarForm":
        return cls(degree, {})

    @classmethod
    def function(cls, f) -> "ScalarForm":
        f = as_ratexpr(f)
        return cls(0, {(): f} if f else {})

    @classmethod
    def covector(cls, v: JetVar, coeff=ONE) -> "ScalarForm":
        coeff = as_ratexpr(coeff)
        return cls(1, {(var_id(v),): coeff} if coeff else {})

    @classmethod
    def from_terms(cls, degree: int, items: Iterable[Tuple[Iterable[JetVar], RatExpr]]) -> "ScalarForm":
        terms: Dict[Key, RatExpr] = {}
        for covs, coeff in items:
            covs = list(covs)
            if len(covs) != degree:
                raise ValueError("term degree does not match form degree")
            s = _sorted_with_sign(var_id(v) for v in covs)
            if s is None:
                continue
            sign, key = s
            _accumulate(terms, key, as_ratexpr(coeff) if sign > 0 else -as_ratexpr(coeff))
        return cls(degree, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, *covs: JetVar) -> RatExpr:
        s = _sorted_with_sign(var_id(v) for v in covs)
        if s is None:
            return ZERO
        sign, key = s
        c = self.terms.get(key, ZERO)
        return c if sign > 0 else -c

    def function_value(self) -> RatExpr:
        if self.degree != 0:
            raise ValueError("not a 0-form")
        return self.terms.get((), ZERO)

    def __add__(self, other: "ScalarForm") -> "ScalarForm":
        if not other.terms:
            return self
        if not self.terms:
            return other
        if other.degree != self.degree:
            raise ValueError(f"adding forms of degree {self.degree} and {other.degree}")
        terms = dict(self.terms)
        for k, c in other.terms.items():
            _accumulate(terms, k, c)
        return ScalarForm(self.degree, terms)

    def __neg__(self) -> "ScalarForm":
        return ScalarForm(self.degree, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "ScalarForm") -> "ScalarForm":
        return self + (-other)

    def scale(self, c) -> "ScalarForm":
        """Multiply by a function or rational constant."""
        if isinstance(c, RatExpr):
            if not c:
                return ScalarForm(self.degree)
            return ScalarForm(self.degree, {k: v * c for k, v in self.terms.items()})
        c = Fraction(c)
        if c == 1:
            return self
        if not c:
            return ScalarForm(self.degree)
        return ScalarForm(self.degree, {k: v.scale(c) for k, v in self.terms.items()})

    __mul__ = scale
    __rmul__ = scale

    def __eq__(self, other) -> bool:
        if not isinstance(other, ScalarForm):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def max_order(self) -> int:
        order = 0
        for key, c in self.terms.items():
            for i in key:
                order = max(order, var_of(i).order)
            order = max(order, c.max_order())
        return order

    def covector_ids(self) -> List[int]:
        out = set()
        for key in self.terms:
            out.update(key)
        return sorted(out, key=var_key)

    def size(self) -> int:
        return sum(c.size() for c in self.terms.values())

    def sorted_terms(self) -> List[Tuple[Key, RatExpr]]:
        return sorted(self.terms.items(), key=lambda kv: [var_key(i) for i in kv[0]])

    def __str__(self) -> str:
        return format_form(self)

    def __repr__(self) -> str:
        return f"ScalarForm({self.degree}, '{self}')"


def format_form(w: ScalarForm, max_terms: Optional[int] = None) -> str:
    if not w.terms:
        return "0"
    parts = []
    items = w.sorted_terms()
    for n, (key, c) in enumerate(items):
        if max_terms is not None and n >= max_terms:
            parts.append(f"... ({len(items) - max_terms} more terms)")
            break
        basis = " ∧ ".join(f"d({var_of(i)})" for i in key)
        if not basis:
            parts.append(f"({c})")
        else:
            parts.append(f"({c}) {basis}")
    return " + ".join(parts)


def form_to_json(w: ScalarForm) -> list:
    return [
        {"covectors": [str(var_of(i)) for i in key], "coeff": str(c)}
        for key, c in w.sorted_terms()
    ]


def form_from_json(degree: int, data: list) -> ScalarForm:
    from .parser import parse_expr

    items = []
    for term in data:
        covs = []
        for text in term["covectors"]:
            e = parse_expr(text)
            (v,) = e.variables()
            covs.append(v)
        items.append((covs, parse_expr(term["coeff"])))
    return ScalarForm.from_terms(degree, items)


# -- exterior algebra --------------------------------------------------------

def wedge(a: ScalarForm, b: ScalarForm) -> ScalarForm:
    terms: Dict[Key, RatExpr] = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            s = _sorted_with_sign(ka + kb)
            if s is None:
                continue
            sign, key = s
            c = ca * cb
            _accumulate(terms, key, c if sign > 0 else -c)
    return ScalarForm(a.degree + b.degree, terms)


def _insert(key: Key, pos: int, new_id: int) -> Optional[Tuple[int, Key]]:
    """Replace slot ``pos`` of ``key`` with ``new_id`` and re-sort."""
    ids = key[:pos] + (new_id,) + key[pos + 1:]
    return _sorted_with_sign(ids)


def exterior_d(w: ScalarForm) -> ScalarForm:
    terms: Dict[Key, RatExpr] = {}
    for key, c in w.terms.items():
        for i in c.var_ids():
            dc = c.partial_id(i)
            if not dc:
                continue
            s = _sorted_with_sign((i,) + key)
            if s is None:
                continue
            sign, k = s
            _accumulate(terms, k, dc if sign > 0 else -dc)
    return ScalarForm(w.degree + 1, terms)


# -- vector fields -----------------------------------------------------------

class VectorField:
    """``sum X^a_I d/du^a_I`` given by explicit components."""

    def __init__(self, components: Optional[Dict[JetVar, RatExpr]] = None):
        self.components: Dict[JetVar, RatExpr] = {
            v: as_ratexpr(c) for v, c in (components or {}).items() if as_ratexpr(c)
        }

    def component(self, v: JetVar) -> RatExpr:
        return self.components.get(v, ZERO)

    def component_differential(self, v: JetVar) -> ScalarForm:
        return exterior_d(ScalarForm.function(self.component(v)))

    def apply(self, f: RatExpr) -> RatExpr:
        """Derivative of a function along the field."""
        out = ZERO
        for i in f.var_ids():
            x = self.component(var_of(i))
            if x:
                out = out + x * f.partial_id(i)
        return out

    def materialize(self, n: int, m: int, max_order: int) -> Dict[JetVar, RatExpr]:
        out = {}
        for p in range(max_order + 1):
            for I in enumerate_indices(m, p):
                for a in range(1, n + 1):
                    v = JetVar(a, I)
                    c = self.component(v)
                    if c:
                        out[v] = c
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, VectorField) and self.components == other.components

    def __repr__(self) -> str:
        items = sorted(self.components.items(), key=lambda kv: kv[0].sort_key())
        return " + ".join(f"({c}) d/d{v}" for v, c in items) or "0"


class FundamentalField(VectorField):
    """``Delta^I_j`` truncated to ``|K| <= cap``; ``I = 0`` gives ``T_j``.

    The component along ``d/du^a_L`` is ``(L!/(L-I)!) u^a_{L-I+1_j}`` when
    ``L >= I`` and ``|L - I| <= cap``.
    """

    def __init__(self, I: MultiIndex, j: int, cap: Optional[int] = None):
        self.I = MultiIndex(I)
        self.j = j
        self.cap = cap

    def image(self, v: JetVar) -> Optional[Tuple[int, JetVar]]:
        L = v.index
        if len(L) != len(self.I) or not L.dominates(self.I):
            return None
        K = L - self.I
        if self.cap is not None and K.length > self.cap:
            return None
        return L.falling(self.I), JetVar(v.alpha, K.increment(self.j))

    @property
    def components(self):  # type: ignore[override]
        raise TypeError("structured field; use component() or materialize()")

    def component(self, v: JetVar) -> RatExpr:
        im = self.image(v)
        if im is None:
            return ZERO
        c, w = im
        return RatExpr.var(w).scale(c)

    def component_differential(self, v: JetVar) -> ScalarForm:
        im = self.image(v)
        if im is None:
            return ScalarForm(1)
        c, w = im
        return ScalarForm.covector(w, RatExpr.const(c))

    def __repr__(self) -> str:
        return f"FundamentalField(I={self.I!r}, j={self.j}, cap={self.cap})"


def total_derivative_field(j: int, order_cap: int, m: int) -> FundamentalField:
    return FundamentalField(MultiIndex.zero(m), j, order_cap)


def delta_field(I: MultiIndex, j: int, order_cap: int) -> FundamentalField:
    if MultiIndex(I).length < 1:
        raise ValueError("Delta^I_j needs |I| >= 1")
    return FundamentalField(I, j, order_cap)


def contract(w: ScalarForm, X: VectorField) -> ScalarForm:
    """Interior product, vector in the first slot."""
    if w.degree == 0:
        raise ContractDegreeZero("cannot contract a function")
    terms: Dict[Key, RatExpr] = {}
    for key, c in w.terms.items():
        for pos, i in enumerate(key):
            x = X.component(var_of(i))
            if not x:
                continue
            coeff = c * x
            _accumulate(terms, key[:pos] + key[pos + 1:], coeff if pos % 2 == 0 else -coeff)
    return ScalarForm(w.degree - 1, terms)


def lie(X: VectorField, w: ScalarForm) -> ScalarForm:
    """Lie derivative: derivation acting on coefficients and on each covector."""
    terms: Dict[Key, RatExpr] = {}
    for key, c in w.terms.items():
        xc = X.apply(c)
        if xc:
            _accumulate(terms, key, xc)
        for pos, i in enumerate(key):
            dx = X.component_differential(var_of(i))
            for (new_id,), dc in dx.terms.items():
                s = _insert(key, pos, new_id)
                if s is None:
                    continue
                sign, k = s
                coeff = c * dc
                _accumulate(terms, k, coeff if sign > 0 else -coeff)
    return ScalarForm(w.degree, terms)


# -- operators on forms --------------------------------------------------------

def _form_m(w: ScalarForm) -> Optional[int]:
    for key, c in w.terms.items():
        for i in key:
            return len(var_of(i).index)
        for i in c.var_ids():
            return len(var_of(i).index)
    return None


def _cap(w: ScalarForm, cap: Optional[int]) -> int:
    return w.max_order() if cap is None else cap


def total_i(j: int, w: ScalarForm, cap: Optional[int] = None) -> ScalarForm:
    """``i_j``: contraction with ``T_j``."""
    if w.degree == 0:
        raise ContractDegreeZero("cannot contract a function")
    m = _form_m(w)
    if m is None:
        return ScalarForm(w.degree - 1)
    return contract(w, total_derivative_field(j, _cap(w, cap), m))


def lie_total(j: int, w: ScalarForm, cap: Optional[int] = None) -> ScalarForm:
    """``d_j``: Lie derivative along ``T_j``."""
    m = _form_m(w)
    if m is None:
        # constant coefficients and no covectors
        return ScalarForm(w.degree)
    return lie(total_derivative_field(j, _cap(w, cap), m), w)


def lie_multi(I: MultiIndex, w: ScalarForm) -> ScalarForm:
    """``d_I``: iterated total derivatives."""
    for slot, count in enumerate(I, start=1):
        for _ in range(count):
            w = lie_total(slot, w)
    return w


def contract_delta(I: MultiIndex, j: int, w: ScalarForm, cap: Optional[int] = None) -> ScalarForm:
    """``i^I_j``; ``I = 0`` is ``i_j``."""
    if w.degree == 0:
        raise ContractDegreeZero("cannot contract a function")
    return contract(w, FundamentalField(I, j, _cap(w, cap)))


def lie_delta(I: MultiIndex, j: int, w: ScalarForm, cap: Optional[int] = None) -> ScalarForm:
    """``d^I_j``; ``I = 0`` is ``d_j``."""
    return lie(FundamentalField(I, j, _cap(w, cap)), w)


def _lower(i: int, I: MultiIndex) -> Optional[Tuple[int, int]]:
    """Image of ``du_v`` under the composite endomorphism ``S^I``."""
    v = var_of(i)
    if not v.index.dominates(I):
        return None
    return v.index.falling(I), var_id(JetVar(v.alpha, v.index - I))


def s_composite(I: MultiIndex, w: ScalarForm) -> ScalarForm:
    """``S~^I``: single-slot contraction of the composite endomorphism."""
    I = MultiIndex(I)
    if I.length == 0:
        return w
    terms: Dict[Key, RatExpr] = {}
    for key, c in w.terms.items():
        for pos, i in enumerate(key):
            low = _lower(i, I)
            if low is None:
                continue
            factor, new_id = low
            s = _insert(key, pos, new_id)
            if s is None:
                continue
            sign, k = s
            _accumulate(terms, k, c.scale(sign * factor))
    return ScalarForm(w.degree, terms)


def s_single(i: int, w: ScalarForm) -> ScalarForm:
    """``S^i`` as a derivation of the exterior algebra."""
    m = _form_m(w)
    if m is None:
        return ScalarForm(w.degree)
    return s_composite(MultiIndex.unit(m, i), w)


def s_iter(I: MultiIndex, w: ScalarForm) -> ScalarForm:
    """``S^I``: iterate ``S^i`` over the slots of I."""
    for slot, count in enumerate(I, start=1):
        for _ in range(count):
            if not w.terms:
                return w
            w = s_single(slot, w)
    return w


def frak_D(p: int, w: ScalarForm, m: Optional[int] = None) -> ScalarForm:
    """``sum_{|I|=p} (1/I!) d_I S^I``."""
    if p == 0:
        return w
    m = m if m is not None else _form_m(w)
    if m is None:
        return ScalarForm(w.degree)
    out = ScalarForm(w.degree)
    for I in enumerate_indices(m, p):
        sw = s_iter(I, w)
        if sw:
            out = out + lie_multi(I, sw).scale(Fraction(1, I.factorial))
    return out


__all__ = [
    "ContractDegreeZero",
    "FundamentalField",
    "ScalarForm",
    "VectorField",
    "contract",
    "contract_delta",
    "delta_field",
    "exterior_d",
    "form_from_json",
    "form_to_json",
    "format_form",
    "frak_D",
    "lie",
    "lie_delta",
    "lie_multi",
    "lie_total",
    "s_composite",
    "s_iter",
    "s_single",
    "total_derivative_field",
    "total_i",
    "wedge",
]
