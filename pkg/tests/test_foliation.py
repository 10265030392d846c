import pytest

from holofol import (
    SaitoSuzukiParams,
    UniPoly,
    contract,
    differential,
    parse_one_form,
    parse_polynomial,
    parse_vector_field,
    reduce_codim1,
    times_form,
)
from holofol.bipoly import poly_gcd
from holofol.errors import NotPComplete, ZeroForm
from holofol.foliation import XY
from holofol.normal_forms import build_Y
from holofol.scalars import GaussianRational as GR

CATALOG_X = parse_vector_field("x*(1+x*y) d/dx + y*(1-x*y) d/dy")
SADDLE_PARAMS = SaitoSuzukiParams(m=1, n=1, l=0)


def P(text):
    return parse_polynomial(text, vars=XY)


def test_differential():
    w = differential(P("x*y"))
    assert w.coef_dx.as_bipoly() == P("y")
    assert w.coef_dy.as_bipoly() == P("x")
    w = differential(P("x^2*y + x"))
    assert w.coef_dx.as_bipoly() == P("2*x*y + 1")
    assert w.coef_dy.as_bipoly() == P("x^2")
    w = differential(P("7"))
    assert w.coef_dx.is_zero() and w.coef_dy.is_zero()


def test_reduce_codim1():
    w = reduce_codim1(differential(P("x*y^2")))
    assert w.coef_dx.as_bipoly() == P("y")
    assert w.coef_dy.as_bipoly() == P("2*x")
    w = reduce_codim1(parse_one_form("y dx + x dy"))
    assert w.coef_dx.as_bipoly() == P("y")
    # the unit is retained: d(x^2) reduces to 2 dx, not dx
    w = reduce_codim1(differential(P("x^2")))
    assert w.coef_dx.as_bipoly() == P("2")
    with pytest.raises(ZeroForm):
        reduce_codim1(differential(P("0")))


def test_contract_catalog():
    eta = parse_one_form("y dx + x dy")
    assert contract(eta, CATALOG_X).as_bipoly() == P("2*x*y")
    Y = build_Y(SADDLE_PARAMS)
    assert contract(differential(P("x*y")), Y).is_zero()
    rho = parse_one_form("0 du + (1/(2*v)) dv")
    Z = parse_vector_field("(1+v)*u d/du + 2*v d/dv")
    assert contract(rho, Z).is_constant()
    assert contract(rho, Z).constant_value() == GR(1)


def test_times_form_catalog():
    tf = times_form(CATALOG_X, SADDLE_PARAMS)
    assert (tf.alpha, tf.beta) == (1, 1)
    assert tf.unit_const == GR(2)
    assert tf.eta_of_X == P("2*x*y")
    # tau = (1/2) d(xy)/(xy)
    from holofol import parse_expression

    assert tf.tau.coef_dx == parse_expression("(1/2)/x", vars=XY)
    assert tf.tau.coef_dy == parse_expression("(1/2)/y", vars=XY)


def test_times_form_rejects_tangent_field():
    Y = build_Y(SADDLE_PARAMS)
    with pytest.raises(NotPComplete):
        times_form(Y, SADDLE_PARAMS)


def test_times_form_rejects_foreign_factor():
    # eta(X) = x*(y + 1) has the factor y + 1, not in {x, y}
    X = parse_vector_field("x d/dx + 1 d/dy")
    with pytest.raises(NotPComplete):
        times_form(X, SADDLE_PARAMS)


def test_isolated_zeros_flag():
    assert CATALOG_X.has_isolated_zeros()
    X = parse_vector_field("x*y d/dx + y^2 d/dy")
    assert not X.has_isolated_zeros()


def test_reduce_codim1_output_coprime():
    w = reduce_codim1(differential(P("x^3*y^2 + x^2*y^3")))
    g = poly_gcd(w.coef_dx.as_bipoly(), w.coef_dy.as_bipoly())
    assert g.is_constant()
