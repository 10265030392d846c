"""Covering-map transport: pullback, pushforward, naturality and the
one-form-of-times chain upstairs."""

import random

import pytest

from holofol import (
    RatFunc,
    SaitoSuzukiParams,
    UniPoly,
    build_H,
    build_P,
    contract,
    parse_one_form,
    parse_vector_field,
    pullback_field,
    pullback_form,
    pushforward_field,
    times_form,
)
from holofol.errors import NotDeckInvariant
from holofol.foliation import UV, XY
from holofol.normal_forms import extract_pullback_shape
from holofol.scalars import GaussianRational as GR

from conftest import SEED, rand_params, rand_pb

CATALOG_X = parse_vector_field("x*(1+x*y) d/dx + y*(1-x*y) d/dy")
SADDLE_PARAMS = SaitoSuzukiParams(m=1, n=1, l=0)


def test_covering_map_catalog():
    H = build_H(SADDLE_PARAMS)
    assert H.x_comp == parse_vector_field("u d/du + 0 d/dv").comp_x
    assert H.apply(RatFunc.from_bipoly(build_P(SADDLE_PARAMS))) == parse_vector_field(
        "v d/du + 0 d/dv"
    ).comp_x
    params = SaitoSuzukiParams(m=1, n=2, l=0)
    H = build_H(params)
    P = RatFunc.from_bipoly(build_P(params))
    v = RatFunc.variable(UV, "v")
    assert H.apply(P) == v**2


def test_pullback_catalog():
    H = build_H(SADDLE_PARAMS)
    W = pullback_field(H, CATALOG_X)
    assert W == parse_vector_field("(1+v)*u d/du + 2*v d/dv")


def test_pullback_of_dual_field_has_zero_dv():
    from holofol.normal_forms import build_Y

    params = SaitoSuzukiParams(m=1, n=2, l=1, p=UniPoly.constant("x", 1))
    W = pullback_field(build_H(params), build_Y(params))
    assert W.comp_y.is_zero()


def test_pushforward_catalog():
    H = build_H(SADDLE_PARAMS)
    Z = parse_vector_field("(1+v)*u d/du + 2*v d/dv")
    assert pushforward_field(H, Z) == CATALOG_X
    # u d/du keeps v = xy constant, so downstairs y must shrink as x grows
    assert pushforward_field(H, parse_vector_field("u d/du + 0 d/dv")) == (
        parse_vector_field("x d/dx + -y d/dy")
    )


def test_pushforward_rejects_non_deck_invariant():
    params = SaitoSuzukiParams(m=1, n=2, l=0)
    H = build_H(params)
    Z = parse_vector_field("v*u d/du + 0 d/dv")  # a(v) = v is odd, not in C[z^2]
    with pytest.raises(NotDeckInvariant):
        pushforward_field(H, Z)


def test_pullback_form_catalog():
    H = build_H(SADDLE_PARAMS)
    tau = times_form(CATALOG_X, SADDLE_PARAMS).tau
    rho = pullback_form(H, tau)
    assert rho.coef_dx.is_zero()
    assert rho.coef_dy == parse_one_form("0 du + (1/(2*v)) dv").coef_dy

    params = SaitoSuzukiParams(m=1, n=2, l=0)
    H2 = build_H(params)
    dx = parse_one_form("1 dx + 0 dy")
    w = pullback_form(H2, dx)
    assert w.coef_dx == parse_vector_field("2*u d/du + 0 d/dv").comp_x
    dP = parse_one_form("y^2 dx + 2*x*y dy")  # d(xy^2)
    w = pullback_form(H2, dP)
    assert w.coef_dx.is_zero()
    assert w.coef_dy == parse_vector_field("2*v d/du + 0 d/dv").comp_x.rename(UV)


def test_roundtrip_randomized():
    rng = random.Random(SEED + 3)
    for _ in range(25):
        params = rand_params(rng, covering_ready=True)
        H = build_H(params)
        pb = rand_pb(rng, params.n)
        Z = pb.field()
        X = pushforward_field(H, Z)
        W = pullback_field(H, X)
        assert W == Z
        shape = extract_pullback_shape(W, params.n)
        assert (shape.k, shape.a, shape.c, shape.N) == (pb.k, pb.a, pb.c, pb.N)


def test_naturality_of_contraction():
    rng = random.Random(SEED + 4)
    eta = parse_one_form("y dx + x dy")
    for _ in range(10):
        params = rand_params(rng, covering_ready=True)
        H = build_H(params)
        pb = rand_pb(rng, params.n)
        X = pushforward_field(H, pb.field())
        lhs = contract(pullback_form(H, eta), pullback_field(H, X))
        rhs = H.apply(contract(eta, X))
        assert lhs == rhs


def test_rho_times_chain_catalog():
    H = build_H(SADDLE_PARAMS)
    tf = times_form(CATALOG_X, SADDLE_PARAMS)
    rho = pullback_form(H, tf.tau)
    HX = pullback_field(H, CATALOG_X)
    assert contract(rho, HX).is_constant()
    assert contract(rho, HX).constant_value() == GR(1)
    shape = extract_pullback_shape(HX, 1)
    assert shape.k == 1 * (tf.alpha - 1) - 1 * (shape.N - 1) == 0


def test_deck_weight():
    params = SaitoSuzukiParams(m=3, n=2, l=0)
    H = build_H(params)
    # deck action (u, v) -> (zeta u, zeta^m v): weight of u^i v^j is i + m j mod n
    assert H.weight(1, 0) == 1
    assert H.weight(0, 1) == 1
    assert H.weight(1, 1) == 0
