from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fundform.forms import ContractDegreeZero, ScalarForm, exterior_d, lie_total
from fundform.multiindex import MultiIndex as MI
from fundform.operator_checks import bicomplex, failures
from fundform.parser import parse_expr
from fundform.random_forms import random_vv_form
from fundform.vvforms import P_coefficient, P_operator, VectorValuedForm, d, d_T, homotopy_P, i_T
from fundform import variational as var
from fundform.identities import lambda_p

from lagrangians import lagrangian


def f(text):
    return ScalarForm.function(parse_expr(text))


def test_signed_component_lookup():
    w = f("u[1;1,0]")
    phi = VectorValuedForm(3, 0, 2, {(2, 1): w})
    assert phi.component(1, 2) == -w
    assert phi.component(2, 1) == w
    assert phi.component(1, 1).is_zero()
    assert list(phi.components) == [(1, 2)]


def test_d_examples():
    L = f("u[1;1]^2/u[2;1]")
    theta0 = VectorValuedForm.top(1, L)
    assert d(theta0) == VectorValuedForm.top(1, exterior_d(L))
    assert d(VectorValuedForm(2, 1, 1)).is_zero()


def test_d_T_examples():
    g = f("u[1;0,0]*u[2;0,1]")
    phi = VectorValuedForm(2, 0, 1, {(1,): g})
    out = d_T(phi)
    assert out.s == 2
    assert out.component(1, 2) == -lie_total(2, g)
    top = VectorValuedForm.top(2, g)
    assert d_T(top).is_zero()


def test_i_T_rejects_functions():
    with pytest.raises(ContractDegreeZero):
        i_T(VectorValuedForm.top(1, f("u[1;1]")))


def test_P_coefficients_reduce_to_hilbert_and_lambda():
    for p in range(5):
        J = MI((p,))
        # s = m on 1-forms: the Hilbert-form weights
        assert P_coefficient(1, 1, 1, J) == Fraction((-1) ** p, (p + 1) * J.factorial)
        # s = m - 1 on 2-forms: lambda_p after clearing J!
        assert P_coefficient(1, 0, 2, J) * J.factorial == lambda_p(p)


def test_P_of_dtheta0_finsler():
    lag = lagrangian("finsler")
    out = homotopy_P(d(var.theta0(lag)))
    assert out.s == 0
    expected = parse_expr("2*u[1;1]/u[2;1]"), parse_expr("-u[1;1]^2/u[2;1]^2")
    th = out.component()
    from fundform.symbolic import jet
    assert th.coefficient(jet(1, 0)) == expected[0]
    assert th.coefficient(jet(2, 0)) == expected[1]


def test_P_bound_independent_of_larger_k():
    lag = lagrangian("curvature")
    dL = exterior_d(ScalarForm.function(lag.L))
    assert P_operator(1, 1, dL, 1) == P_operator(1, 1, dL, 1, k=4)
    dth = d(var.theta0(lag))
    assert homotopy_P(dth) == homotopy_P(dth, k=dth.max_order() + 2)


@pytest.mark.parametrize("name", ["finsler", "angle_rate", "curvature", "jacobian", "jacobian_ratio"])
def test_homotopy_inverts_d_T_on_top_degree(name):
    # on top degree d_T P d Theta_0 recovers d Theta_0 up to the source form
    lag = lagrangian(name)
    phi = d(var.theta0(lag))
    assert phi - d_T(homotopy_P(phi)) == var.E_q(lag, 0)


@settings(max_examples=25)
@given(st.integers(0, 10 ** 6))
def test_bicomplex_identities(seed):
    import random

    rng = random.Random(seed)
    m = rng.randint(1, 2)
    phi = random_vv_form(rng, m, rng.randint(1, 2), rng.randint(1, 3), rng.randint(0, 2), rng.randint(0, m))
    assert not failures(bicomplex(phi))


def test_json_shape():
    phi = VectorValuedForm(2, 1, 1, {(2,): ScalarForm.covector(parse_expr("u[1;0,0]").variables()[0])})
    out = phi.to_json()
    assert out["r"] == 1 and out["s"] == 1
    assert out["components"] == {"2": [{"covectors": ["u[1;0,0]"], "coeff": "1"}]}


@pytest.mark.parametrize("name", ["finsler", "curvature", "jacobian", "jacobian_ratio"])
def test_homotopy_on_d_T_exact_thetas(name):
    lag = lagrangian(name)
    thetas = var.theta_sequence(lag)
    for q in range(1, lag.m + 1):
        phi = d_T(thetas[q])
        assert d_T(homotopy_P(phi)) == phi


@settings(max_examples=20)
@given(st.integers(0, 10 ** 6))
def test_homotopy_on_d_T_exact_random(seed):
    import random

    rng = random.Random(seed)
    m = rng.randint(1, 2)
    phi = d_T(random_vv_form(rng, m, 2, 2, rng.randint(1, 2), rng.randint(0, m - 1)))
    if not phi.is_zero():
        assert d_T(homotopy_P(phi)) == phi
