"""Independent sympy oracle: total derivatives and Euler-Lagrange expressions.

Only the printed text of package expressions is used; nothing here calls
the package's form code.
"""

import re
from itertools import product

import sympy as sp

_VAR = re.compile(r"u\[(\d+);([\d,]+)\]")


def sym(alpha, counts):
    return sp.Symbol("u_%d_%s" % (alpha, "_".join(map(str, counts))))


def unsym(s):
    _, a, *c = s.name.split("_")
    return int(a), tuple(int(x) for x in c)


def to_sympy(text):
    text = _VAR.sub(lambda mt: sym(int(mt.group(1)), [int(x) for x in mt.group(2).split(",")]).name, str(text))
    return sp.sympify(text.replace("^", "**"))


def total_derivative(f, j, m, n, order):
    """D_j f for f depending on jets up to ``order``."""
    out = 0
    for alpha in range(1, n + 1):
        for counts in product(range(order + 1), repeat=m):
            if sum(counts) > order:
                continue
            up = list(counts)
            up[j - 1] += 1
            out += sp.diff(f, sym(alpha, counts)) * sym(alpha, up)
    return out


def euler_lagrange(L, m, n, k):
    """Components E_alpha = sum_I (-D)_I dL/du^alpha_I."""
    comps = []
    for alpha in range(1, n + 1):
        total = 0
        for counts in product(range(k + 1), repeat=m):
            if sum(counts) > k:
                continue
            term = sp.diff(L, sym(alpha, counts))
            order = k
            for j, c in enumerate(counts, start=1):
                for _ in range(c):
                    term = -total_derivative(term, j, m, n, order)
                    order += 1
            total += term
        comps.append(sp.simplify(total))
    return comps


def hilbert_m1(L, n, k):
    """Classical Hilbert form of a single-integral problem, k <= 2.

    Returns {(alpha, p): coefficient of du^alpha_p}.
    """
    out = {}
    for alpha in range(1, n + 1):
        p1 = sp.diff(L, sym(alpha, (1,)))
        if k == 1:
            out[(alpha, 0)] = p1
        else:
            p2 = sp.diff(L, sym(alpha, (2,)))
            out[(alpha, 0)] = p1 - total_derivative(p2, 1, 1, n, k)
            out[(alpha, 1)] = p2
    return out


def equal(a, b):
    return sp.simplify(sp.together(a - b)) == 0
