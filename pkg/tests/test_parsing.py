import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holofol import (
    BiPoly,
    parse_expression,
    parse_one_form,
    parse_polynomial,
    parse_vector_field,
    print_bipoly,
    print_ratfunc,
    print_vector_field,
)
from holofol.errors import ExprSyntaxError, NonIntegerExponent, UnknownVariable
from holofol.foliation import XY, UV
from holofol.scalars import GaussianRational as GR

fractions = st.fractions(min_value=-9, max_value=9, max_denominator=8)
grs = st.builds(GR, fractions, fractions)
exps = st.tuples(st.integers(0, 5), st.integers(0, 5))
bipolys = st.dictionaries(exps, grs, max_size=6).map(
    lambda d: BiPoly(XY, {k: v for k, v in d.items() if not v.is_zero()})
)


def test_saito_polynomial_parses():
    saito = parse_polynomial("4*((x*y+1)^2+y)*(x*(x*y+1)+1)^2+1", vars=XY)
    assert saito.eval_exact(GR(0), GR(0)) == GR(5)
    assert saito.eval_exact(GR(1), GR(-1)) == GR(-3)  # 4*((0)^2-1)*(0+1)^2+1


def test_catalog_expressions():
    assert parse_polynomial("x^2*y + x", vars=XY) == parse_polynomial(
        "x*(x*y + 1)", vars=XY
    )
    r = parse_expression("(x + 1/2i)/(y^2)", vars=XY)
    assert r.num == parse_polynomial("x + 1/2i", vars=XY)


def test_rejections():
    with pytest.raises(NonIntegerExponent):
        parse_expression("x^(1/2)", vars=XY)
    with pytest.raises(UnknownVariable):
        parse_expression("x + w", vars=XY)
    with pytest.raises(ExprSyntaxError):
        parse_expression("2x", vars=XY)  # implicit multiplication
    with pytest.raises(ExprSyntaxError):
        parse_expression("x +", vars=XY)


def test_error_positions():
    try:
        parse_expression("x + (y", vars=XY)
    except ExprSyntaxError as exc:
        assert exc.line == 1 and exc.column >= 6
    else:
        pytest.fail("expected a syntax error")


def test_mixed_charts_rejected():
    with pytest.raises(ExprSyntaxError):
        parse_expression("x + u")


def test_vector_field_and_one_form():
    X = parse_vector_field("x*(1+x*y) d/dx + y*(1-x*y) d/dy")
    assert X.vars == XY
    assert X.comp_x == parse_expression("x + x^2*y", vars=XY)
    Z = parse_vector_field("(1+v)*u d/du + 2*v d/dv")
    assert Z.vars == UV
    w = parse_one_form("y dx + x dy")
    assert w.coef_dx == parse_expression("y", vars=XY)
    assert w.coef_dy == parse_expression("x", vars=XY)


@given(bipolys)
def test_print_parse_round_trip(f):
    assert parse_polynomial(print_bipoly(f), vars=XY) == f


@settings(max_examples=25)
@given(bipolys, bipolys)
def test_ratfunc_print_parse_round_trip(f, g):
    if g.is_zero():
        return
    from holofol import RatFunc

    r = RatFunc.from_bipoly(f) / RatFunc.from_bipoly(g)
    assert parse_expression(print_ratfunc(r), vars=XY) == r


def test_vector_field_print_round_trip():
    X = parse_vector_field("x*(1+x*y) d/dx + y*(1-x*y) d/dy")
    assert parse_vector_field(print_vector_field(X)) == X
