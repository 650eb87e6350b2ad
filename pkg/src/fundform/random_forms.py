"""Seeded random polynomial forms for operator-identity checks."""

import random
from fractions import Fraction

from .forms import ScalarForm, wedge
from .multiindex import enumerate_upto
from .symbolic import JetVar, RatExpr, ZERO


def jet_vars(m, n, order):
    return [JetVar(a, I) for I in enumerate_upto(m, order) for a in range(1, n + 1)]


def random_poly(rng, pool, nterms=3, maxdeg=2):
    out = ZERO
    for _ in range(nterms):
        t = RatExpr.const(Fraction(rng.randint(-4, 4), rng.choice([1, 1, 2, 3])))
        for _ in range(rng.randint(0, maxdeg)):
            t = t * RatExpr.var(rng.choice(pool))
        out = out + t
    return out


def random_form(rng, m, n, order, degree, nterms=2):
    pool = jet_vars(m, n, order)
    w = ScalarForm(degree)
    for _ in range(nterms):
        term = ScalarForm.function(random_poly(rng, pool))
        for _ in range(degree):
            term = wedge(term, ScalarForm.covector(rng.choice(pool)))
        w = w + term
    return w


def random_case(seed, max_m=2, max_n=2, max_order=3, max_degree=2):
    rng = random.Random(seed)
    m = rng.randint(1, max_m)
    n = rng.randint(1, max_n)
    order = rng.randint(1, max_order)
    degree = rng.randint(0, max_degree)
    return rng, m, n, order, degree, random_form(rng, m, n, order, degree)


def random_vv_form(rng, m, n, order, r, s, nterms=1):
    from itertools import combinations

    from .vvforms import VectorValuedForm

    comps = {}
    for key in combinations(range(1, m + 1), s):
        if rng.random() < 0.7:
            comps[key] = random_form(rng, m, n, order, r, nterms)
    return VectorValuedForm(m, r, s, comps)
