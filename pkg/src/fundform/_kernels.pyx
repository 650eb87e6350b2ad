# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_kernels_py``; see that module for the representation."""

from heapq import heapify, heappop, heappush

cdef Py_ssize_t FIELD = 16
cdef object EXP_MASK = (1 << (FIELD - 1)) - 1

cdef dict _guard_cache = {}


cpdef object guard_mask(Py_ssize_t nbits):
    cdef Py_ssize_t nfields = nbits // FIELD + 1, f
    mask = _guard_cache.get(nfields)
    if mask is None:
        mask = 0
        for f in range(nfields):
            mask |= (<object>1) << (FIELD * f + FIELD - 1)
        _guard_cache[nfields] = mask
    return mask


cpdef dict add(dict a, dict b):
    cdef dict out
    cdef object mono, c, s
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


cpdef dict sub(dict a, dict b):
    cdef dict out = dict(a)
    cdef object mono, c, s
    for mono, c in b.items():
        s = out.get(mono, 0) - c
        if s:
            out[mono] = s
        else:
            del out[mono]
    return out


cpdef dict scale(dict a, object c):
    if not c:
        return {}
    return {mono: v * c for mono, v in a.items()}


cpdef dict mul(dict a, dict b):
    cdef dict out = {}
    cdef list aitems, bitems
    cdef tuple t1, t2
    cdef object k, m1, c1, m2, c2, old
    if len(a) > len(b):
        a, b = b, a
    aitems = list(a.items())
    bitems = list(b.items())
    for t1 in aitems:
        m1 = t1[0]
        c1 = t1[1]
        for t2 in bitems:
            k = m1 + <object>t2[0]
            old = out.get(k)
            if old is None:
                out[k] = c1 * <object>t2[1]
            else:
                out[k] = old + c1 * <object>t2[1]
    return {k: v for k, v in out.items() if v}


cpdef dict mul_term(dict a, object mono, object c):
    return {m + mono: v * c for m, v in a.items()}


cpdef dict diff(dict a, Py_ssize_t shift):
    cdef object unit = (<object>1) << shift
    cdef dict out = {}
    cdef object mono, c, e
    for mono, c in a.items():
        e = (mono >> shift) & EXP_MASK
        if e:
            out[mono - unit] = c * e
    return out


cpdef object divexact(dict a, dict b):
    cdef object lm_b, lc_b, guard, mono, c, d, qc, k, old, v, mb, cb
    cdef dict r, q, out
    cdef list heap, rest
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return {}
    lm_b = max(b)
    lc_b = b[lm_b]
    guard = guard_mask(max((<object>max(a)).bit_length(), lm_b.bit_length()))
    if len(b) == 1:
        out = {}
        for mono, c in a.items():
            if ((mono | guard) - lm_b) & guard != guard or c % lc_b:
                return None
            out[mono - lm_b] = c // lc_b
        return out
    rest = [(m, cc) for m, cc in b.items() if m != lm_b]
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
