"""Exact rational functions in the jet coordinates ``u^alpha_I``.

Polynomials have integer coefficients and packed monomials (see
``_kernels_py``).  Each jet coordinate is interned on first use and gets a
16-bit exponent field; the interning order only affects the internal packing,
never printed output or equality.

A :class:`RatExpr` is kept as ``num/den`` with ``gcd(num, den) = 1`` in
``Z[u]`` (so the integer contents are coprime too) and the leading
coefficient of ``den`` positive, leading taken in the canonical graded-lex
order.  That makes the pair unique, so equality is structural.

GCDs use a recursive primitive polynomial remainder sequence.  Before
recursing, variables present in only one argument are eliminated by taking the
gcd with every coefficient of the other argument viewed as a polynomial in
those variables; in practice denominators involve few variables, so most gcds
collapse to small problems.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import gcd as _igcd
from typing import Dict, Iterable, Iterator, List, NamedTuple, Tuple

from ._backend import kernels as K
from .multiindex import MultiIndex

FIELD = 16
FIELD_MASK = (1 << FIELD) - 1
EXP_MASK = (1 << (FIELD - 1)) - 1
MAX_EXPONENT = EXP_MASK

_ONE = {0: 1}


class DivisionByZero(ZeroDivisionError):
    pass


class JetVar(NamedTuple):
    """The jet coordinate ``u^alpha_I``."""

    alpha: int
    index: MultiIndex

    @property
    def order(self) -> int:
        return self.index.length

    def sort_key(self):
        return (self.index.length, tuple(-c for c in self.index), self.alpha)

    def __str__(self) -> str:
        return f"u[{self.alpha};{','.join(str(c) for c in self.index)}]"


def jet(alpha: int, *counts: int) -> JetVar:
    if len(counts) == 1 and isinstance(counts[0], (tuple, list)):
        counts = tuple(counts[0])
    if alpha < 1:
        raise ValueError("dependent index alpha must be >= 1")
    return JetVar(alpha, MultiIndex(counts))


class _Registry:
    """Append-only interning table; ids never change once assigned."""

    def __init__(self):
        self.vars: List[JetVar] = []
        self.ids: Dict[JetVar, int] = {}
        self.keys: List[tuple] = []
        self._lock = threading.Lock()

    def id(self, v: JetVar) -> int:
        i = self.ids.get(v)
        if i is None:
            with self._lock:
                i = self.ids.get(v)
                if i is None:
                    i = len(self.vars)
                    self.vars.append(v)
                    self.keys.append(v.sort_key())
                    self.ids[v] = i
        return i


REGISTRY = _Registry()


def var_id(v: JetVar) -> int:
    return REGISTRY.id(v)


def var_of(i: int) -> JetVar:
    return REGISTRY.vars[i]


def var_key(i: int) -> tuple:
    return REGISTRY.keys[i]


def mono_of(i: int, e: int = 1) -> int:
    if not 0 <= e <= MAX_EXPONENT:
        raise OverflowError(f"exponent {e} out of range")
    return e << (FIELD * i)


# -- monomial helpers -------------------------------------------------------

def mono_items(mono: int) -> Iterator[Tuple[int, int]]:
    """Yield (var id, exponent) pairs of a packed monomial."""
    i = 0
    while mono:
        e = mono & FIELD_MASK
        if e:
            yield i, e
        mono >>= FIELD
        i += 1


def mono_degree(mono: int) -> int:
    return sum(e for _, e in mono_items(mono))


def poly_var_ids(p: dict) -> List[int]:
    acc = 0
    for mono in p:
        acc |= mono
    return [i for i, _ in mono_items(acc)]


def _mono_min(a: int, b: int) -> int:
    out = 0
    i = 0
    while a and b:
        ea = a & FIELD_MASK
        eb = b & FIELD_MASK
        e = ea if ea < eb else eb
        if e:
            out |= e << (FIELD * i)
        a >>= FIELD
        b >>= FIELD
        i += 1
    return out


def _mono_content(p: dict) -> int:
    it = iter(p)
    g = next(it)
    for mono in it:
        if not g:
            break
        g = _mono_min(g, mono)
    return g


def _int_content(p: dict) -> int:
    g = 0
    for c in p.values():
        g = _igcd(g, c)
        if g == 1:
            break
    return g


def _exp(mono: int, shift: int) -> int:
    return (mono >> shift) & EXP_MASK


# -- gcd --------------------------------------------------------------------

def _positive(p: dict) -> dict:
    if p and p[max(p)] < 0:
        return {m: -c for m, c in p.items()}
    return p


def _split(p: dict, shifts: List[int]) -> Dict[int, dict]:
    """Group terms of p by their exponents in the variables at ``shifts``."""
    out: Dict[int, dict] = {}
    for mono, c in p.items():
        part = 0
        for s in shifts:
            part |= ((mono >> s) & EXP_MASK) << s
        out.setdefault(part, {})[mono - part] = c
    return out


def _to_univariate(p: dict, shift: int) -> Dict[int, dict]:
    out: Dict[int, dict] = {}
    for mono, c in p.items():
        e = (mono >> shift) & EXP_MASK
        out.setdefault(e, {})[mono - (e << shift)] = c
    return out


def _from_univariate(u: Dict[int, dict], shift: int) -> dict:
    out = {}
    for e, coeff in u.items():
        lift = e << shift
        for mono, c in coeff.items():
            out[mono + lift] = c
    return out


def _uni_content(u: Dict[int, dict]) -> dict:
    g: dict = {}
    for coeff in sorted(u.values(), key=len):
        g = poly_gcd(g, coeff)
        if _is_one(g):
            break
    return g


def _uni_divexact(u: Dict[int, dict], c: dict) -> Dict[int, dict]:
    if len(c) == 1 and c.get(0) == 1:
        return u
    out = {}
    for e, coeff in u.items():
        q = K.divexact(coeff, c)
        if q is None:
            raise ArithmeticError("content does not divide coefficient")
        out[e] = q
    return out


def _uni_prem(F: Dict[int, dict], G: Dict[int, dict]) -> Dict[int, dict]:
    dg = max(G)
    lg = G[dg]
    R = F
    while R:
        dr = max(R)
        if dr < dg:
            break
        lr = R[dr]
        new: Dict[int, dict] = {}
        for e, c in R.items():
            if e != dr:
                new[e] = K.mul(lg, c)
        off = dr - dg
        for e, c in G.items():
            if e == dg:
                continue
            k = e + off
            v = K.sub(new.get(k, {}), K.mul(lr, c))
            if v:
                new[k] = v
            else:
                new.pop(k, None)
        R = {e: c for e, c in new.items() if c}
    return R


def poly_gcd(a: dict, b: dict) -> dict:
    """Greatest common divisor in Z[u], leading coefficient (int order) > 0."""
    if not a:
        return _positive(dict(b))
    if not b:
        return _positive(dict(a))
    if len(a) == 1 and len(b) == 1:
        (ma, ca), = a.items()
        (mb, cb), = b.items()
        return {_mono_min(ma, mb): _igcd(ca, cb)}
    if a == b:
        return _positive(dict(a))

    ma, mb = _mono_content(a), _mono_content(b)
    mg = _mono_min(ma, mb)
    if ma:
        a = {m - ma: c for m, c in a.items()}
    if mb:
        b = {m - mb: c for m, c in b.items()}
    g = _gcd_nomono(a, b)
    if mg:
        g = {m + mg: c for m, c in g.items()}
    return g


def _gcd_nomono(a: dict, b: dict) -> dict:
    if len(a) == 1 or len(b) == 1:
        # a term with no monomial content is a constant
        return {0: _igcd(_int_content(a), _int_content(b))}
    va = set(poly_var_ids(a))
    vb = set(poly_var_ids(b))
    only_a = va - vb
    only_b = vb - va
    if only_a or only_b:
        pieces = list(_split(a, [FIELD * i for i in only_a]).values()) if only_a else [a]
        pieces += list(_split(b, [FIELD * i for i in only_b]).values()) if only_b else [b]
        pieces.sort(key=len)
        g = pieces[0]
        for piece in pieces[1:]:
            g = poly_gcd(g, piece)
            if _is_one(g):
                break
        return _positive(g)

    # same variable set: primitive PRS in the variable of least degree
    best = None
    for i in va:
        s = FIELD * i
        da = max(_exp(m, s) for m in a)
        db = max(_exp(m, s) for m in b)
        key = (max(da, db), min(da, db))
        if best is None or key < best[0]:
            best = (key, s)
    shift = best[1]
    A = _to_univariate(a, shift)
    B = _to_univariate(b, shift)
    ca = _uni_content(A)
    cb = _uni_content(B)
    content = poly_gcd(ca, cb)
    A = _uni_divexact(A, ca)
    B = _uni_divexact(B, cb)
    if max(A) < max(B):
        A, B = B, A
    while True:
        R = _uni_prem(A, B)
        if not R:
            break
        if max(R) == 0:
            B = {0: {0: 1}}
            break
        R = _uni_divexact(R, _uni_content(R))
        A, B = B, R
    if max(B) == 0:
        return _positive(content)
    B = _uni_divexact(B, _uni_content(B))
    g = K.mul(_from_univariate(B, shift), content)
    return _positive(g)


# -- canonical ordering ------------------------------------------------------

def canonical_terms(p: dict) -> List[Tuple[int, int]]:
    """Terms in descending graded-lex order over canonically ordered variables."""
    if len(p) <= 1:
        return list(p.items())
    ids = sorted(poly_var_ids(p), key=var_key)
    shifts = [FIELD * i for i in ids]

    def key(item):
        mono = item[0]
        exps = tuple(_exp(mono, s) for s in shifts)
        return (sum(exps), exps)

    return sorted(p.items(), key=key, reverse=True)


def _leading_coeff(p: dict) -> int:
    if len(p) == 1:
        return next(iter(p.values()))
    return canonical_terms(p)[0][1]


# -- Poly --------------------------------------------------------------------

class Poly:
    """Immutable polynomial with integer coefficients in jet coordinates."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict = {} if terms is None else terms

    @classmethod
    def const(cls, c: int) -> "Poly":
        return cls({0: c} if c else {})

    @classmethod
    def var(cls, v: JetVar, e: int = 1) -> "Poly":
        return cls({mono_of(var_id(v), e): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == _ONE

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def variables(self) -> List[JetVar]:
        return sorted((var_of(i) for i in poly_var_ids(self.terms)), key=JetVar.sort_key)

    def __add__(self, other: "Poly") -> "Poly":
        return Poly(K.add(self.terms, other.terms))

    def __sub__(self, other: "Poly") -> "Poly":
        return Poly(K.sub(self.terms, other.terms))

    def __mul__(self, other: "Poly") -> "Poly":
        return Poly(K.mul(self.terms, other.terms))

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __pow__(self, n: int) -> "Poly":
        out = Poly(dict(_ONE))
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def diff(self, v: JetVar) -> "Poly":
        i = REGISTRY.ids.get(v)
        if i is None:
            return Poly()
        return Poly(K.diff(self.terms, FIELD * i))

    def gcd(self, other: "Poly") -> "Poly":
        return Poly(poly_gcd(self.terms, other.terms))

    def divexact(self, other: "Poly") -> "Poly":
        q = K.divexact(self.terms, other.terms)
        if q is None:
            raise ArithmeticError("polynomial is not divisible")
        return Poly(q)

    def __str__(self) -> str:
        return format_poly(self.terms)

    def __repr__(self) -> str:
        return f"Poly('{self}')"


# -- RatExpr -----------------------------------------------------------------

def _fix_content(num: dict, den: dict) -> Tuple[dict, dict]:
    """Make integer contents coprime and the canonical leading coeff of den > 0."""
    g = _igcd(_int_content(num), _int_content(den)) if num else _int_content(den)
    if _leading_coeff(den) < 0:
        g = -g
    if g != 1:
        num = {m: c // g for m, c in num.items()}
        den = {m: c // g for m, c in den.items()}
    return num, den


def _reduce(num: dict, den: dict) -> Tuple[dict, dict]:
    if not den:
        raise DivisionByZero("denominator is zero")
    if not num:
        return {}, dict(_ONE)
    if len(den) == 1 and 0 in den:
        return _fix_content(num, den)
    g = poly_gcd(num, den)
    if not (len(g) == 1 and 0 in g):
        num = K.divexact(num, g)
        den = K.divexact(den, g)
    return _fix_content(num, den)


def _is_one(p: dict) -> bool:
    return len(p) == 1 and p.get(0) == 1


def _is_unitlike(g: dict) -> bool:
    return len(g) == 1 and 0 in g


class RatExpr:
    """Canonical quotient of two integer polynomials."""

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, num=None, den=None, *, _canonical=False):
        if isinstance(num, Poly):
            num = num.terms
        if isinstance(den, Poly):
            den = den.terms
        num = {} if num is None else num
        den = dict(_ONE) if den is None else den
        if not _canonical:
            num, den = _reduce(num, den)
        self._num = num
        self._den = den
        self._hash = None

    # construction
    @classmethod
    def const(cls, c) -> "RatExpr":
        c = Fraction(c)
        if not c:
            return ZERO
        return cls({0: c.numerator}, {0: c.denominator}, _canonical=True)

    @classmethod
    def var(cls, v: JetVar, e: int = 1) -> "RatExpr":
        return cls({mono_of(var_id(v), e): 1}, dict(_ONE), _canonical=True)

    @classmethod
    def from_poly(cls, p: Poly) -> "RatExpr":
        return cls(dict(p.terms), dict(_ONE), _canonical=True)

    @property
    def num(self) -> Poly:
        return Poly(self._num)

    @property
    def den(self) -> Poly:
        return Poly(self._den)

    # predicates
    def is_zero(self) -> bool:
        return not self._num

    def __bool__(self) -> bool:
        return bool(self._num)

    def is_constant(self) -> bool:
        return (not self._num or (len(self._num) == 1 and 0 in self._num)) and 0 in self._den and len(self._den) == 1

    def is_polynomial(self) -> bool:
        return _is_one(self._den)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return Fraction(self._num.get(0, 0), self._den[0])

    # arithmetic
    def __add__(self, other) -> "RatExpr":
        if not isinstance(other, RatExpr):
            other = RatExpr.const(other)
        if not self._num:
            return other
        if not other._num:
            return self
        a, b, c, d = self._num, self._den, other._num, other._den
        if _is_one(b) and _is_one(d):
            return RatExpr(K.add(a, c), dict(_ONE), _canonical=True)
        if b == d:
            return RatExpr(K.add(a, c), b)
        g = poly_gcd(b, d)
        if _is_one(g):
            num = K.add(K.mul(a, d), K.mul(c, b))
            if not num:
                return ZERO
            return RatExpr(*_fix_content(num, K.mul(b, d)), _canonical=True)
        b1 = K.divexact(b, g)
        d1 = K.divexact(d, g)
        t = K.add(K.mul(a, d1), K.mul(c, b1))
        if not t:
            return ZERO
        g2 = poly_gcd(t, g)
        if not _is_one(g2):
            t = K.divexact(t, g2)
            g = K.divexact(g, g2)
        return RatExpr(*_fix_content(t, K.mul(K.mul(b1, d1), g)), _canonical=True)

    __radd__ = __add__

    def __neg__(self) -> "RatExpr":
        return RatExpr({m: -c for m, c in self._num.items()}, self._den, _canonical=True)

    def __sub__(self, other) -> "RatExpr":
        if not isinstance(other, RatExpr):
            other = RatExpr.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "RatExpr":
        return (-self) + other

    def __mul__(self, other) -> "RatExpr":
        if not isinstance(other, RatExpr):
            return self.scale(other)
        if not self._num or not other._num:
            return ZERO
        a, b, c, d = self._num, self._den, other._num, other._den
        if _is_one(b) and _is_one(d):
            return RatExpr(K.mul(a, c), dict(_ONE), _canonical=True)
        g1 = poly_gcd(a, d)
        g2 = poly_gcd(c, b)
        if not _is_one(g1):
            a = K.divexact(a, g1)
            d = K.divexact(d, g1)
        if not _is_one(g2):
            c = K.divexact(c, g2)
            b = K.divexact(b, g2)
        return RatExpr(*_fix_content(K.mul(a, c), K.mul(b, d)), _canonical=True)

    __rmul__ = __mul__

    def scale(self, q) -> "RatExpr":
        """Multiply by a rational constant."""
        q = Fraction(q)
        if not q or not self._num:
            return ZERO
        if q == 1:
            return self
        num = K.scale(self._num, q.numerator) if q.numerator != 1 else self._num
        den = K.scale(self._den, q.denominator) if q.denominator != 1 else self._den
        return RatExpr(*_fix_content(num, den), _canonical=True)

    def inverse(self) -> "RatExpr":
        if not self._num:
            raise DivisionByZero("inverse of zero")
        return RatExpr(*_fix_content(dict(self._den), dict(self._num)), _canonical=True)

    def __truediv__(self, other) -> "RatExpr":
        if not isinstance(other, RatExpr):
            other = RatExpr.const(other)
        if not other._num:
            raise DivisionByZero("division by zero")
        return self * other.inverse()

    def __rtruediv__(self, other) -> "RatExpr":
        return RatExpr.const(other) * self.inverse()

    def __pow__(self, n: int) -> "RatExpr":
        if n < 0:
            return self.inverse() ** (-n)
        return RatExpr((Poly(self._num) ** n).terms, (Poly(self._den) ** n).terms, _canonical=True)

    # calculus
    def partial_id(self, i: int) -> "RatExpr":
        shift = FIELD * i
        a, b = self._num, self._den
        da = K.diff(a, shift)
        if _is_one(b):
            return RatExpr(da, dict(_ONE), _canonical=True)
        db = K.diff(b, shift)
        if not db:
            if not da:
                return ZERO
            return RatExpr(da, b)
        # d(a/b) = (a' b1 - a b1')/(g b1^2) with b = g*b1, b' = g*b1'
        g = poly_gcd(b, db)
        b1 = K.divexact(b, g)
        db1 = K.divexact(db, g)
        num = K.sub(K.mul(da, b1), K.mul(a, db1))
        if not num:
            return ZERO
        return RatExpr(num, K.mul(b, b1))

    def partial(self, v: JetVar) -> "RatExpr":
        i = REGISTRY.ids.get(v)
        if i is None:
            return ZERO
        return self.partial_id(i)

    def var_ids(self) -> List[int]:
        acc = 0
        for mono in self._num:
            acc |= mono
        for mono in self._den:
            acc |= mono
        return [i for i, _ in mono_items(acc)]

    def variables(self) -> List[JetVar]:
        return sorted((var_of(i) for i in self.var_ids()), key=JetVar.sort_key)

    def max_order(self) -> int:
        return max((var_of(i).order for i in self.var_ids()), default=0)

    def size(self) -> int:
        return len(self._num) + len(self._den)

    # comparison
    def __eq__(self, other) -> bool:
        if not isinstance(other, RatExpr):
            if isinstance(other, (int, Fraction)):
                other = RatExpr.const(other)
            else:
                return NotImplemented
        return self._num == other._num and self._den == other._den

    def equals(self, other: "RatExpr") -> bool:
        return (self - other).is_zero()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self._num.items()), frozenset(self._den.items())))
        return self._hash

    def __str__(self) -> str:
        return format_ratexpr(self)

    def __repr__(self) -> str:
        return f"RatExpr('{self}')"


ZERO = RatExpr({}, {0: 1}, _canonical=True)
ONE = RatExpr({0: 1}, {0: 1}, _canonical=True)


def partial(e: RatExpr, v: JetVar) -> RatExpr:
    return e.partial(v)


def max_order(e: RatExpr) -> int:
    return e.max_order()


def equals(a: RatExpr, b: RatExpr) -> bool:
    return a.equals(b)


# -- printing ----------------------------------------------------------------

def _format_mono(mono: int) -> str:
    items = sorted(mono_items(mono), key=lambda t: var_key(t[0]))
    parts = []
    for i, e in items:
        s = str(var_of(i))
        parts.append(s if e == 1 else f"{s}^{e}")
    return "*".join(parts)


def format_poly(p: dict) -> str:
    if not p:
        return "0"
    out = []
    for mono, c in canonical_terms(p):
        body = _format_mono(mono)
        mag = abs(c)
        if not body:
            term = str(mag)
        elif mag == 1:
            term = body
        else:
            term = f"{mag}*{body}"
        if not out:
            out.append(term if c > 0 else "-" + term)
        else:
            out.append((" + " if c > 0 else " - ") + term)
    return "".join(out)


def format_ratexpr(e: RatExpr) -> str:
    num = format_poly(e._num)
    if _is_one(e._den):
        return num
    den = format_poly(e._den)
    if len(e._num) > 1:
        num = f"({num})"
    if len(e._den) > 1 or "*" in den:
        den = f"({den})"
    return f"{num}/{den}"


def as_ratexpr(x) -> RatExpr:
    if isinstance(x, RatExpr):
        return x
    if isinstance(x, JetVar):
        return RatExpr.var(x)
    if isinstance(x, Poly):
        return RatExpr.from_poly(x)
    return RatExpr.const(x)


def total(items: Iterable[RatExpr]) -> RatExpr:
    out = ZERO
    for x in items:
        out = out + x
    return out
