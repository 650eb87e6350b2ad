from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from fundform import identities as ids
from fundform.multiindex import MultiIndex as MI


def test_documented_values():
    assert ids.coeff_C(MI((1,)), MI((0,)), 1, 1) == 0
    assert ids.coeff_C(MI((1, 0)), MI((0, 0)), 2, 1) == 0
    assert ids.coeff_F(0, 0) == 2
    assert ids.coeff_F(1, 1) == Fraction(-1, 6)
    assert ids.coeff_G(3, 1) == 3
    assert ids.lambda_p(0) == Fraction(1, 4)
    assert ids.lambda_p(1) == Fraction(-1, 24)
    assert ids.B_closed(1) == Fraction(-1, 8)
    assert ids.H_closed(0) == Fraction(1, 2)


def test_domain_errors():
    with pytest.raises(ValueError):
        ids.coeff_C(MI((0,)), MI((1,)), 1, 1)
    with pytest.raises(ValueError):
        ids.coeff_G(2, 3)
    with pytest.raises(ValueError):
        ids.binomial_sum(2, 3)
    with pytest.raises(ValueError):
        ids.beta_sum(1, 2)
    with pytest.raises(ValueError):
        ids.b_coefficient_check(1, 2, 0)


def test_non_divisible():
    with pytest.raises(ids.NonDivisible):
        ids._divide_by_2_plus_x([Fraction(1), Fraction(1)])


def test_report_json():
    rep = ids.partial_fraction_sum(2)
    out = rep.to_json()
    assert out == {"name": "partial-fraction", "parameters": {"r": "2"},
                   "brute": "3/4", "closed": "3/4", "pass": True}
    assert "ok" in rep.row()


# -- independent oracles ----------------------------------------------------------

x, t = sp.symbols("x t")


@pytest.mark.parametrize("q", range(8))
def test_beta_sum_matches_integral(q):
    # closed form as a Beta integral, evaluated by sympy
    for r in range(q + 1):
        exact = sp.integrate(t ** r * (1 - t) ** (q - r + 1) / sp.factorial(q - r), (t, 0, 1))
        assert Fraction(str(exact)) == ids.beta_sum(q, r).brute


@pytest.mark.parametrize("q", range(7))
def test_b_coefficient_matches_sympy_division(q):
    for p in range(q + 1):
        for s in range(p + 1):
            poly = (1 + x) ** (q - p) + (-1) ** (p - s) * (1 + x) ** (q - s + 1)
            quot, rem = sp.div(sp.expand(poly), 2 + x, x)
            assert rem == 0
            coeff = sp.Poly(quot, x).coeff_monomial(x ** (q - p))
            assert Fraction(str(coeff)) == ids.b_coefficient_check(q, p, s).brute


def test_partial_fraction_matches_sympy():
    p = sp.Symbol("p", integer=True, nonnegative=True)
    for rv in range(10):
        val = sp.summation(1 / ((p + 1) * (p + 2)), (p, 0, rv))
        assert Fraction(str(val)) == ids.partial_fraction_sum(rv).brute


@pytest.mark.parametrize("q", range(6))
def test_H_matches_sympy_triple_sum(q):
    total = 0
    for p in range(q + 1):
        lam = sp.Rational((-1) ** p * sp.factorial(p), 2 ** (p + 1) * sp.factorial(p + 2))
        for s in range(p + 1):
            for r in range(p - s + 1):
                b = r + q - p
                F = sp.Rational(sp.factorial(s) * sp.factorial(b) + (-1) ** s * sp.factorial(s + b),
                                sp.factorial(s + b + 1))
                total += (lam * (-1) ** b * sp.factorial(q) / (sp.factorial(s) * sp.factorial(p - s) * sp.factorial(q - p))
                          * F * sp.binomial(p - s, r))
    assert Fraction(str(total)) == ids.H_brute(q) == ids.H_closed(q)


def test_C_difference_vanishes_for_one_slot():
    for a in range(4):
        for b in range(4):
            rep = ids.C_difference_check(MI((a,)), MI((b,)), 1, 1)
            assert rep.passed and rep.closed == 0


@given(st.integers(0, 20))
def test_binomial_sum_property(p):
    for r in range(p + 1):
        assert ids.binomial_sum(p, r).passed


# -- sweeps ----------------------------------------------------------------------

def test_all_sweeps_pass():
    sweeps = ids.all_sweeps()
    sizes = {k: len(v) for k, v in sweeps.items()}
    assert sizes == {"H": 52, "partial-fraction": 13, "binomial": 91, "beta": 91,
                     "b-coefficient": 286, "C-difference": 4125}
    for name, reports in sweeps.items():
        bad = [r.row() for r in reports if not r.passed]
        assert not bad, bad[:3]
