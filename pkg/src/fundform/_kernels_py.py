"""Sparse integer-polynomial kernels, pure Python.

A polynomial is a dict mapping a packed monomial to a nonzero int.  A packed
monomial stores the exponent of variable number ``v`` in bits
``16*v .. 16*v+14`` of a Python int; bit ``16*v+15`` is a guard bit and is
always clear.  Monomial multiplication is integer addition, and integer
comparison is a lexicographic term order, which is what the division routine
relies on.

``_kernels.pyx`` mirrors this module function for function.
"""

from heapq import heapify, heappop, heappush

FIELD = 16
EXP_MASK = (1 << (FIELD - 1)) - 1

_guard_cache = {}


def guard_mask(nbits):
    nfields = nbits // FIELD + 1
    mask = _guard_cache.get(nfields)
    if mask is None:
        mask = 0
        for f in range(nfields):
            mask |= 1 << (FIELD * f + FIELD - 1)
        _guard_cache[nfields] = mask
    return mask


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for mono, c in b.items():
        s = out.get(mono, 0) + c
        if s:
            out[mono] = s
        else:
            del out[mono]
    return out


def sub(a, b):
    out = dict(a)
    for mono, c in b.items():
        s = out.get(mono, 0) - c
        if s:
            out[mono] = s
        else:
            del out[mono]
    return out


def scale(a, c):
    if not c:
        return {}
    return {mono: v * c for mono, v in a.items()}


def mul(a, b):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    get = out.get
    bitems = list(b.items())
    for m1, c1 in a.items():
        for m2, c2 in bitems:
            k = m1 + m2
            out[k] = get(k, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def mul_term(a, mono, c):
    return {m + mono: v * c for m, v in a.items()}


def diff(a, shift):
    """Partial derivative with respect to the variable stored at ``shift``."""
    unit = 1 << shift
    out = {}
    for mono, c in a.items():
        e = (mono >> shift) & EXP_MASK
        if e:
            out[mono - unit] = c * e
    return out


def divexact(a, b):
    """Return q with a == q*b, or None when b does not divide a over Z."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return {}
    lm_b = max(b)
    lc_b = b[lm_b]
    nbits = max(max(a).bit_length(), lm_b.bit_length())
    guard = guard_mask(nbits)
    if len(b) == 1:
        out = {}
        for mono, c in a.items():
            if ((mono | guard) - lm_b) & guard != guard or c % lc_b:
                return None
            out[mono - lm_b] = c // lc_b
        return out
    rest = [(m, c) for m, c in b.items() if m != lm_b]
    r = dict(a)
    heap = [-m for m in r]
    heapify(heap)
    q = {}
    while heap:
        mono = -heappop(heap)
        c = r.pop(mono, 0)
        if not c:
            continue
        if ((mono | guard) - lm_b) & guard != guard or c % lc_b:
            return None
        d = mono - lm_b
        qc = c // lc_b
        q[d] = qc
        for mb, cb in rest:
            k = d + mb
            old = r.get(k)
            if old is None:
                r[k] = -qc * cb
                heappush(heap, -k)
            else:
                v = old - qc * cb
                if v:
                    r[k] = v
                else:
                    del r[k]
    return q
